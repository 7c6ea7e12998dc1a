#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <string>
#include <tuple>
#include <vector>

#include "ceforge/fgab.hpp"
#include "ceforge/graded_diff.hpp"

namespace ceforge {

struct TriangleMaps {
  GroupHom i;  // E^β_α -> E^γ_α
  GroupHom j;  // E^γ_α -> E^γ_β
  GroupHom k;  // E^γ_β -> E^β_α
};

// E-terms are keyed by the convex set β∖α, so E^β_α and E^{β'}_{α'} with the
// same difference share one presentation and ℓ is the identity.
class CESystem {
 public:
  explicit CESystem(GradedDifferentialGroup base);

  const GradedDifferentialGroup& base() const { return base_; }
  const Poset& poset() const { return base_.poset(); }

  // Homology of the subquotient on a convex set (memoized).
  const HomologyData& homology(ElementMask xi) const;
  const FgGroup& group(ElementMask xi) const { return homology(xi).group(); }

  FgGroup e_term(DownSet alpha, DownSet beta) const;
  TriangleMaps triangle_maps(DownSet alpha, DownSet beta, DownSet gamma) const;

  // Test hook: replaces the cached maps of one triangle.
  void inject_triangle(DownSet alpha, DownSet beta, DownSet gamma, TriangleMaps maps);

 private:
  using TripleKey = std::tuple<ElementMask, ElementMask, ElementMask>;

  void require_nested(DownSet a, DownSet b) const;

  GradedDifferentialGroup base_;
  mutable std::shared_mutex homology_mutex_;
  mutable std::map<ElementMask, std::shared_ptr<const HomologyData>> homology_cache_;
  mutable std::shared_mutex triangle_mutex_;
  mutable std::map<TripleKey, std::shared_ptr<const TriangleMaps>> triangle_cache_;
};

bool verify_exact_triangle(const CESystem& sys, DownSet alpha, DownSet beta, DownSet gamma);
bool verify_excision(const CESystem& sys, DownSet alpha, DownSet beta);
// Throws HypothesisViolated unless α ⊆ β,β' ⊆ γ with β∖α = γ∖β' and β'∖α = γ∖β.
bool verify_incomparable(const CESystem& sys, DownSet alpha, DownSet beta, DownSet beta_prime, DownSet gamma);
bool verify_octahedron(const CESystem& sys, DownSet alpha, DownSet beta, DownSet gamma, DownSet delta);

struct AxiomResult {
  std::string name;
  std::size_t checked = 0;
  std::size_t failed = 0;
  std::string first_counterexample;
};

struct BraidReport {
  std::vector<AxiomResult> axioms;  // exact triangles, incomparable, braid (octahedra)
  bool passed() const {
    for (const auto& a : axioms)
      if (a.failed) return false;
    return true;
  }
};

struct SuiteOptions {
  std::size_t max_downsets = SIZE_MAX;
  unsigned jobs = 1;
  // Optional per-check callback: (suite, description, passed).
  std::function<void(const std::string&, const std::string&, bool)> on_check;
};

BraidReport verify_module_braid(const CESystem& sys, const SuiteOptions& options = {});
// All suites including excision; used by the CLI's ce-verify.
BraidReport verify_all(const CESystem& sys, const SuiteOptions& options = {});

// Convex sets arising as β∖α for nested down-sets, in canonical order.
std::vector<ElementMask> convex_sets(const Poset& poset, std::size_t max_downsets = SIZE_MAX);

std::string format_triple(const Poset& P, DownSet a, DownSet b, DownSet c);

// --- Morphisms of CE systems ---------------------------------------------------

struct CEIso {
  // Component on the E-term of each stored convex set.
  std::map<ElementMask, GroupHom> components;

  const GroupHom* find(ElementMask xi) const {
    auto it = components.find(xi);
    return it == components.end() ? nullptr : &it->second;
  }
};

// Components induced by a filtered chain map f: C -> A on every convex set.
CEIso induced_ce_iso(const CESystem& sysC, const CESystem& sysA, const Matrix& f,
                     std::size_t max_downsets = SIZE_MAX);

struct CEIsoCheck {
  bool ok = true;
  std::string failure;
};
// Every stored component is an isomorphism; every ladder whose three
// components are stored commutes.
CEIsoCheck verify_ce_iso(const CESystem& sysC, const CESystem& sysA, const CEIso& h,
                         std::size_t max_downsets = SIZE_MAX);

enum class CompareOutcome { Isomorphic, NotIsomorphic, BudgetExceeded };

struct CompareResult {
  CompareOutcome outcome = CompareOutcome::BudgetExceeded;
  std::optional<CEIso> iso;
  // Refutation witness: a nested pair whose E-terms differ, when found.
  std::optional<std::pair<DownSet, DownSet>> distinguishing;
  std::string reason;
  std::uint64_t candidates_tried = 0;
};

CompareResult ce_isomorphic_bruteforce(const CESystem& sysC, const CESystem& sysA, std::uint64_t budget,
                                       std::uint64_t seed = 0);

// Compares E-term invariants on every convex set; returns the first pair whose
// groups differ.
std::optional<std::pair<DownSet, DownSet>> distinguishing_pair(const CESystem& sysC, const CESystem& sysA);

}  // namespace ceforge
