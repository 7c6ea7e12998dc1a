#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ceforge/ce_system.hpp"
#include "ceforge/graded_diff.hpp"

namespace ceforge {

// f: A -> D, g: D -> A, h: D -> D with g f = id and f g - id = h d + d h.
struct ReductionWitness {
  GradedDifferentialGroup a;
  Matrix f;
  Matrix g;
  Matrix h;
  std::vector<std::size_t> kept;  // generators of D surviving in A, in layout order
  std::size_t cancellations = 0;
};

// Filtered cancellation over a field. `priority`, when given, ranks the
// generators of D (lower is earlier) and replaces the default pivot order
// (linear-extension position of the grade, then generator index).
ReductionWitness reduce(const GradedDifferentialGroup& d, const std::vector<std::size_t>* priority = nullptr);

bool verify_witness(const GradedDifferentialGroup& d, const ReductionWitness& w);

using MorseSmaleGrading = std::vector<long>;  // μ(p) indexed by element

struct MorseSmaleCheck {
  bool ok = true;
  std::vector<std::string> reasons;
};

MorseSmaleCheck check_morse_smale(const GradedDifferentialGroup& c, const MorseSmaleGrading& mu);

// "a=0,b=0,c=1"
MorseSmaleGrading parse_grading(const Poset& P, const std::string& text);

struct UniquenessCertificate {
  bool equal = false;                   // d_1 = d_2
  std::size_t filtered_isomorphisms = 0;  // filtered degree-preserving chain isos d_1 -> d_2
  CompareOutcome bruteforce = CompareOutcome::BudgetExceeded;
  bool agree = false;
  std::optional<std::pair<DownSet, DownSet>> distinguishing;
};

// Throws GradingMismatch unless both instances are Morse-Smale for μ over
// the same poset.
UniquenessCertificate certify_unique_differential(const GradedDifferentialGroup& c1,
                                                  const GradedDifferentialGroup& c2, const MorseSmaleGrading& mu,
                                                  std::uint64_t budget = 100000);

}  // namespace ceforge
