#pragma once

#include <string>
#include <vector>

#include "ceforge/ce_system.hpp"
#include "ceforge/graded_diff.hpp"

namespace ceforge {

// Instance files:
//
//   ceforge-instance 1
//   coefficients Z            # Z | Q | Z2 | Zp 7
//   elements p q
//   order p<q
//   ranks p=1 q=1
//   degrees p=0 q=1           # optional, comma list per element
//   strict                    # optional
//   block p<-q [[2]]
//
// With `check_invariants`, d² = 0, filtration, degree and strictness are
// enforced and violations are reported against the offending block line.
GradedDifferentialGroup parse_instance(const std::string& text, bool check_invariants = true);
std::string serialize_instance(const GradedDifferentialGroup& c);

// Chain maps and homotopies: same layout with source-ranks / target-ranks.
struct MapDocument {
  std::string name;
  Poset poset;
  Coefficients ring = Coefficients::integers();
  std::vector<std::size_t> source_ranks;
  std::vector<std::size_t> target_ranks;
  Matrix matrix;
};

MapDocument parse_map(const std::string& text);
std::string serialize_map(const MapDocument& m);
MapDocument map_document(const std::string& name, const GradedDifferentialGroup& source,
                         const GradedDifferentialGroup& target, const Matrix& matrix);

// CE isomorphisms as components on convex sets, in the generator coordinates
// of the E-term presentations computed for each side.
std::string serialize_ce_iso(const CESystem& sysC, const CESystem& sysA, const CEIso& h);
CEIso parse_ce_iso(const std::string& text, const CESystem& sysC, const CESystem& sysA);

// First token of the first non-comment line ("ceforge-instance", ...).
std::string document_kind(const std::string& text);

std::string read_text_file(const std::string& path);

}  // namespace ceforge
