#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ceforge/exact_linalg.hpp"
#include "ceforge/poset.hpp"

namespace ceforge {

// C = ⊕_p G_pC with a block differential. Generators are laid out grade by
// grade in the poset's element order; block (p,q) maps G_q into G_p.
class GradedDifferentialGroup {
 public:
  GradedDifferentialGroup() = default;
  GradedDifferentialGroup(Poset poset, Coefficients ring, std::vector<std::size_t> ranks);

  const Poset& poset() const { return poset_; }
  const Coefficients& ring() const { return ring_; }
  const std::vector<std::size_t>& ranks() const { return ranks_; }
  std::size_t rank(std::size_t p) const { return ranks_.at(p); }
  std::size_t total_rank() const { return offsets_.back(); }
  std::size_t offset(std::size_t p) const { return offsets_.at(p); }
  std::size_t grade_of(std::size_t generator) const { return grade_.at(generator); }

  // Generator indices of ⊕_{p∈s} G_p in layout order.
  std::vector<std::size_t> indices(ElementMask s) const;

  const Matrix& differential() const { return d_; }
  void set_differential(Matrix d);
  Matrix block(std::size_t p, std::size_t q) const;
  void set_block(std::size_t p, std::size_t q, const Matrix& b);
  // Differential of the subquotient on the index set of `s`.
  Matrix restricted_differential(ElementMask s) const;

  // Chain-complex mode: one integer degree per generator.
  const std::optional<std::vector<long>>& degrees() const { return degrees_; }
  void set_degrees(std::optional<std::vector<long>> deg);

  bool strict_flag() const { return strict_flag_; }
  void set_strict_flag(bool s) { strict_flag_ = s; }

  bool operator==(const GradedDifferentialGroup& o) const;
  bool operator!=(const GradedDifferentialGroup& o) const { return !(*this == o); }

 private:
  Poset poset_;
  Coefficients ring_ = Coefficients::integers();
  std::vector<std::size_t> ranks_;
  std::vector<std::size_t> offsets_{0};
  std::vector<std::size_t> grade_;
  Matrix d_;
  std::optional<std::vector<long>> degrees_;
  bool strict_flag_ = false;
};

struct ValidationReport {
  bool d_squared_zero = true;
  bool filtered = true;
  bool strict = true;
  std::optional<bool> degree_consistent;  // nullopt when no degrees are given
  std::vector<std::string> problems;

  bool valid() const { return d_squared_zero && filtered && degree_consistent.value_or(true); }
};

ValidationReport validate(const GradedDifferentialGroup& c);
// Throws ValidationError naming the first violated invariant (d², filtered,
// degree, and strict when flagged).
void require_valid(const GradedDifferentialGroup& c);

// Restriction to a convex set: a differential group over the induced subposet.
GradedDifferentialGroup restrict(const GradedDifferentialGroup& c, ConvexSet xi);

std::vector<std::size_t> filtration_subgroup(const GradedDifferentialGroup& c, DownSet alpha);

// A block map between two graded groups over the same poset and ring.
struct FilteredChainMap {
  GradedDifferentialGroup source;
  GradedDifferentialGroup target;
  Matrix matrix;  // target.total_rank() x source.total_rank()

  Matrix block(std::size_t p, std::size_t q) const;
};

// h: C -> A, used in f - g = h d_C + d_A h.
struct ChainHomotopy {
  Matrix matrix;
};

enum class FiltrationMode { Preserving, Equality };

struct MapReport {
  bool chain = false;
  bool preserving = false;
  std::optional<bool> equality;  // only in Equality mode
  std::string detail;

  bool ok() const { return chain && preserving && equality.value_or(true); }
};

MapReport validate_map(const FilteredChainMap& f, FiltrationMode mode);

// Filtration given by explicit generator lists per down-set; used when the
// filtration is not the one induced by the grading.
struct ExplicitFiltration {
  std::vector<ElementMask> down_sets;
  std::vector<Matrix> generators;  // columns span F_α
};
MapReport validate_map(const Matrix& f, const ExplicitFiltration& source, const ExplicitFiltration& target,
                       FiltrationMode mode);

// Block-structural test: filtered blocks and invertible diagonal blocks.
bool is_filtered(const GradedDifferentialGroup& layout, const Matrix& m);
bool is_filtered_isomorphism(const GradedDifferentialGroup& layout, const Matrix& m);

bool verify_homotopy(const FilteredChainMap& f, const FilteredChainMap& g, const ChainHomotopy& h);
bool verify_homotopy(const Matrix& f, const Matrix& g, const Matrix& h, const Matrix& d_source,
                     const Matrix& d_target);

// A with d_A = f d_C f^{-1}. Throws NotInvertible unless f is filtered with
// invertible diagonal blocks.
GradedDifferentialGroup conjugate(const GradedDifferentialGroup& c, const Matrix& f);

}  // namespace ceforge
