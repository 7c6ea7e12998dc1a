#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "ceforge/error.hpp"

namespace ceforge {

// Subsets of a poset are bitmasks over the canonical (input) element order.
using ElementMask = std::uint64_t;

inline constexpr std::size_t kMaxPosetElements = 64;
inline constexpr std::size_t kDefaultEnumerationBound = 20;

// Enumeration bound for |P|: CEFORGE_MAX_ELEMENTS if set, else 20.
std::size_t configured_element_bound();

struct DownSet {
  ElementMask bits = 0;
  bool operator==(const DownSet& o) const { return bits == o.bits; }
  bool operator!=(const DownSet& o) const { return bits != o.bits; }
  bool operator<(const DownSet& o) const { return bits < o.bits; }
};

struct ConvexSet {
  ElementMask bits = 0;
  bool operator==(const ConvexSet& o) const { return bits == o.bits; }
  bool operator!=(const ConvexSet& o) const { return bits != o.bits; }
  bool operator<(const ConvexSet& o) const { return bits < o.bits; }
};

enum class ConvexRelation { Adjacent, Incomparable, Neither };

class Poset {
 public:
  Poset() = default;
  // `relations` are pairs (lower, upper) of element indices; the reflexive
  // transitive closure is computed here. Throws NotAPoset on cycles.
  Poset(std::vector<std::string> labels, const std::vector<std::pair<std::size_t, std::size_t>>& relations);

  std::size_t size() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(std::size_t p) const { return labels_.at(p); }
  std::size_t index_of(const std::string& label) const;

  bool leq(std::size_t p, std::size_t q) const { return (below_[q] >> p) & 1U; }
  bool less(std::size_t p, std::size_t q) const { return p != q && leq(p, q); }
  bool comparable(std::size_t p, std::size_t q) const { return leq(p, q) || leq(q, p); }

  ElementMask all() const { return size() == 64 ? ~ElementMask{0} : ((ElementMask{1} << size()) - 1); }
  ElementMask principal(std::size_t q) const { return below_[q]; }  // down-arrow q
  ElementMask upper(std::size_t q) const { return above_[q]; }
  ElementMask down_closure(ElementMask s) const;
  ElementMask up_closure(ElementMask s) const;

  bool is_down_set(ElementMask s) const { return down_closure(s) == s; }
  bool is_convex(ElementMask s) const { return (down_closure(s) & up_closure(s)) == s; }

  DownSet down_set(ElementMask s) const;      // throws NotADownSet
  ConvexSet convex_set(ElementMask s) const;  // throws NotConvex
  DownSet empty_set() const { return DownSet{0}; }
  DownSet top() const { return DownSet{all()}; }

  std::vector<std::size_t> maximal_elements(ElementMask s) const;
  std::vector<std::size_t> minimal_elements(ElementMask s) const;

  // Cover relations (Hasse diagram) as (lower, upper), sorted.
  std::vector<std::pair<std::size_t, std::size_t>> cover_relations() const;

  // Elements ordered by (depth, input order); depth = length of the longest
  // chain below the element. Ties among equal depth may be permuted by `seed`.
  std::vector<std::size_t> linear_extension(std::uint64_t seed = 0) const;

  // "{p,q}" with elements in canonical order.
  std::string format(ElementMask s) const;
  // Parses "p,q" / "{p,q}" / "" / "{}".
  ElementMask parse_subset(const std::string& text) const;

  bool operator==(const Poset& o) const { return labels_ == o.labels_ && below_ == o.below_; }
  bool operator!=(const Poset& o) const { return !(*this == o); }

 private:
  std::vector<std::string> labels_;
  std::vector<ElementMask> below_;  // below_[q] = { p : p <= q }
  std::vector<ElementMask> above_;  // above_[p] = { q : p <= q }
};

// Every down-set exactly once, sorted by (cardinality, lexicographic order of
// the sorted element-index list). Throws BoundExceeded when |P| exceeds
// `element_bound` or more than `max_downsets` sets would be produced.
std::vector<DownSet> down_sets(const Poset& poset, std::size_t element_bound = configured_element_bound(),
                               std::size_t max_downsets = SIZE_MAX);

std::vector<DownSet> join_irreducible_decomposition(const Poset& poset, DownSet alpha);
DownSet immediate_predecessor(const Poset& poset, DownSet beta);
ConvexRelation convex_relation(const Poset& poset, ConvexSet xi, ConvexSet eta);

inline ConvexSet difference(DownSet beta, DownSet alpha) { return ConvexSet{beta.bits & ~alpha.bits}; }
inline bool is_subset(ElementMask a, ElementMask b) { return (a & ~b) == 0; }
inline std::size_t cardinality(ElementMask s) { return static_cast<std::size_t>(__builtin_popcountll(s)); }

std::vector<std::size_t> mask_elements(ElementMask s);

// Order by cardinality, then lexicographically on sorted element indices.
bool canonical_mask_less(ElementMask a, ElementMask b);

}  // namespace ceforge
