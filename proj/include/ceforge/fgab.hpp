#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ceforge/exact_linalg.hpp"

namespace ceforge {

// Finitely generated module over the coefficient ring in invariant-factor
// form. Generators: torsion generators first (orders t_1 | t_2 | ...), then
// free generators. Over a field the torsion list is always empty.
struct FgGroup {
  Coefficients ring = Coefficients::integers();
  std::size_t free_rank = 0;
  std::vector<mpz_class> torsion;

  std::size_t generators() const { return torsion.size() + free_rank; }
  bool is_trivial() const { return generators() == 0; }
  bool is_finite() const { return free_rank == 0 || ring.is_finite(); }
  // Order of generator i (0 for free generators).
  mpz_class order(std::size_t i) const { return i < torsion.size() ? torsion[i] : mpz_class(0); }
  // k x (#torsion) matrix whose columns are the defining relations.
  Matrix relations() const;

  // "Z^2 ⊕ Z/2 ⊕ Z/4", "Z2^3", "0".
  std::string to_string() const;

  bool operator==(const FgGroup& o) const {
    return ring == o.ring && free_rank == o.free_rank && torsion == o.torsion;
  }
  bool operator!=(const FgGroup& o) const { return !(*this == o); }
};

// Direct sum in invariant-factor form.
FgGroup direct_sum(const FgGroup& a, const FgGroup& b);

class GroupHom {
 public:
  GroupHom(FgGroup source, FgGroup target, Matrix matrix);

  static GroupHom identity(const FgGroup& g);
  static GroupHom zero(const FgGroup& source, const FgGroup& target);

  const FgGroup& source() const { return source_; }
  const FgGroup& target() const { return target_; }
  const Matrix& matrix() const { return matrix_; }

  bool is_zero() const { return matrix_.is_zero(); }
  // Source relations map into target relations.
  bool is_well_defined() const;

  GroupHom operator+(const GroupHom& o) const;
  GroupHom operator-(const GroupHom& o) const;
  GroupHom operator-() const;

  // Equality after reduction modulo the target relations.
  bool operator==(const GroupHom& o) const;
  bool operator!=(const GroupHom& o) const { return !(*this == o); }

 private:
  FgGroup source_, target_;
  Matrix matrix_;  // reduced: torsion rows in [0, t_i)
};

// (g ∘ f)
GroupHom compose(const GroupHom& g, const GroupHom& f);

// Reduces column vectors (in generator coordinates) modulo the relations.
Matrix reduce_coordinates(const FgGroup& g, Matrix coords);

// Homology of a square differential, with cycle representatives.
class HomologyData {
 public:
  const FgGroup& group() const { return group_; }
  const Matrix& differential() const { return differential_; }
  // Ambient rank x generators; column i represents generator i.
  const Matrix& cycle_basis() const { return cycle_basis_; }
  // Basis of all cycles (ambient rank x rank Z).
  const Matrix& cycles() const { return cycles_; }
  // Class coordinates of each column of `cycles` (reduced). Columns must be
  // cycles; the result is meaningless otherwise.
  Matrix project(const Matrix& cycles) const;
  // Class coordinates of the kernel basis columns: the surjection Z -> H.
  Matrix cycle_projection() const { return project(cycles_); }

  friend HomologyData homology(const Matrix& d);

 private:
  FgGroup group_;
  Matrix differential_;
  Matrix cycles_;
  Matrix cycle_basis_;
  Matrix projector_;  // generators x ambient
};

// Throws NotADifferential if d is not square or d*d != 0.
HomologyData homology(const Matrix& d);

// H(f) for a chain map f: C -> A with d_A f = f d_C (NotAChainMap otherwise).
GroupHom induced_hom(const Matrix& f, const HomologyData& hc, const HomologyData& ha);

struct IsoDecision {
  bool isomorphism = false;
  std::optional<GroupHom> inverse;
  std::string obstruction;
};

IsoDecision is_isomorphism(const GroupHom& h);

// --- Subgroups of a presented group, given by generating columns -----------

// x (column, generator coordinates) lies in span(gens) + relations.
bool subgroup_contains(const FgGroup& g, const Matrix& gens, const Matrix& x);
bool subgroup_le(const FgGroup& g, const Matrix& a, const Matrix& b);
bool subgroups_equal(const FgGroup& g, const Matrix& a, const Matrix& b);

Matrix image_generators(const GroupHom& h);
Matrix kernel_generators(const GroupHom& h);

}  // namespace ceforge
