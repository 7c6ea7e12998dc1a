#include "ceforge/poset.hpp"

#include <algorithm>
#include <cstdlib>
#include <random>
#include <sstream>

namespace ceforge {

std::size_t configured_element_bound() {
  if (const char* env = std::getenv("CEFORGE_MAX_ELEMENTS")) {
    char* end = nullptr;
    unsigned long v = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return std::min<std::size_t>(v, kMaxPosetElements);
  }
  return kDefaultEnumerationBound;
}

std::vector<std::size_t> mask_elements(ElementMask s) {
  std::vector<std::size_t> out;
  while (s) {
    out.push_back(static_cast<std::size_t>(__builtin_ctzll(s)));
    s &= s - 1;
  }
  return out;
}

Poset::Poset(std::vector<std::string> labels, const std::vector<std::pair<std::size_t, std::size_t>>& relations)
    : labels_(std::move(labels)) {
  const std::size_t n = labels_.size();
  if (n > kMaxPosetElements) {
    throw Error(ErrorCode::BoundExceeded, "poset has " + std::to_string(n) + " elements; at most 64 supported");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (labels_[i].empty()) throw Error(ErrorCode::NotAPoset, "empty element label");
    for (std::size_t j = 0; j < i; ++j) {
      if (labels_[i] == labels_[j]) throw Error(ErrorCode::NotAPoset, "duplicate element label '" + labels_[i] + "'");
    }
  }
  below_.assign(n, 0);
  for (std::size_t q = 0; q < n; ++q) below_[q] = ElementMask{1} << q;
  for (const auto& [p, q] : relations) {
    if (p >= n || q >= n) throw Error(ErrorCode::NotAPoset, "relation references unknown element");
    below_[q] |= ElementMask{1} << p;
  }
  // Warshall closure on the "below" masks.
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t q = 0; q < n; ++q) {
      if ((below_[q] >> k) & 1U) below_[q] |= below_[k];
    }
  }
  above_.assign(n, 0);
  for (std::size_t q = 0; q < n; ++q) {
    for (std::size_t p : mask_elements(below_[q])) above_[p] |= ElementMask{1} << q;
  }
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t q = p + 1; q < n; ++q) {
      if (leq(p, q) && leq(q, p)) {
        throw Error(ErrorCode::NotAPoset, "relation is not antisymmetric: " + labels_[p] + " and " + labels_[q]);
      }
    }
  }
}

std::size_t Poset::index_of(const std::string& label) const {
  for (std::size_t i = 0; i < labels_.size(); ++i)
    if (labels_[i] == label) return i;
  throw Error(ErrorCode::NotAPoset, "unknown element '" + label + "'");
}

ElementMask Poset::down_closure(ElementMask s) const {
  ElementMask out = 0;
  for (std::size_t p : mask_elements(s)) out |= below_[p];
  return out;
}

ElementMask Poset::up_closure(ElementMask s) const {
  ElementMask out = 0;
  for (std::size_t p : mask_elements(s)) out |= above_[p];
  return out;
}

DownSet Poset::down_set(ElementMask s) const {
  if ((s & ~all()) != 0 || !is_down_set(s)) throw Error(ErrorCode::NotADownSet, format(s & all()) + " is not a down-set");
  return DownSet{s};
}

ConvexSet Poset::convex_set(ElementMask s) const {
  if ((s & ~all()) != 0 || !is_convex(s)) throw Error(ErrorCode::NotConvex, format(s & all()) + " is not convex");
  return ConvexSet{s};
}

std::vector<std::size_t> Poset::maximal_elements(ElementMask s) const {
  std::vector<std::size_t> out;
  for (std::size_t p : mask_elements(s)) {
    if ((above_[p] & s) == (ElementMask{1} << p)) out.push_back(p);
  }
  return out;
}

std::vector<std::size_t> Poset::minimal_elements(ElementMask s) const {
  std::vector<std::size_t> out;
  for (std::size_t p : mask_elements(s)) {
    if ((below_[p] & s) == (ElementMask{1} << p)) out.push_back(p);
  }
  return out;
}

std::vector<std::pair<std::size_t, std::size_t>> Poset::cover_relations() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t p = 0; p < size(); ++p) {
    for (std::size_t q = 0; q < size(); ++q) {
      if (!less(p, q)) continue;
      // p < q is a cover iff nothing lies strictly between.
      ElementMask between = above_[p] & below_[q] & ~((ElementMask{1} << p) | (ElementMask{1} << q));
      if (between == 0) out.emplace_back(p, q);
    }
  }
  return out;
}

std::vector<std::size_t> Poset::linear_extension(std::uint64_t seed) const {
  const std::size_t n = size();
  std::vector<std::size_t> depth(n, 0);
  // Input order is not necessarily a linear extension; iterate to a fixpoint.
  for (std::size_t round = 0; round < n; ++round) {
    for (std::size_t q = 0; q < n; ++q) {
      for (std::size_t p : mask_elements(below_[q])) {
        if (p != q) depth[q] = std::max(depth[q], depth[p] + 1);
      }
    }
  }
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return depth[a] < depth[b]; });
  if (seed != 0) {
    std::mt19937_64 rng(seed);
    auto first = order.begin();
    while (first != order.end()) {
      auto last = first;
      while (last != order.end() && depth[*last] == depth[*first]) ++last;
      std::shuffle(first, last, rng);
      first = last;
    }
  }
  return order;
}

std::string Poset::format(ElementMask s) const {
  std::string out = "{";
  bool first = true;
  for (std::size_t p : mask_elements(s)) {
    if (!first) out += ',';
    out += labels_[p];
    first = false;
  }
  out += '}';
  return out;
}

ElementMask Poset::parse_subset(const std::string& text) const {
  std::string body = text;
  if (!body.empty() && body.front() == '{') {
    if (body.back() != '}') throw Error(ErrorCode::ParseError, "unterminated element list '" + text + "'");
    body = body.substr(1, body.size() - 2);
  }
  ElementMask out = 0;
  std::stringstream ss(body);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto b = item.find_first_not_of(" \t");
    auto e = item.find_last_not_of(" \t");
    if (b == std::string::npos) continue;
    std::string label = item.substr(b, e - b + 1);
    std::size_t idx = labels_.size();
    for (std::size_t i = 0; i < labels_.size(); ++i)
      if (labels_[i] == label) idx = i;
    if (idx == labels_.size()) throw Error(ErrorCode::ParseError, "unknown element '" + label + "'");
    out |= ElementMask{1} << idx;
  }
  return out;
}

bool canonical_mask_less(ElementMask a, ElementMask b) {
  std::size_t ca = cardinality(a), cb = cardinality(b);
  if (ca != cb) return ca < cb;
  // Lexicographic on sorted index lists: compare lowest differing element.
  ElementMask diff = a ^ b;
  if (diff == 0) return false;
  ElementMask low = diff & (~diff + 1);
  return (a & low) != 0;
}

std::vector<DownSet> down_sets(const Poset& poset, std::size_t element_bound, std::size_t max_downsets) {
  if (poset.size() > element_bound) {
    throw Error(ErrorCode::BoundExceeded, "poset has " + std::to_string(poset.size()) +
                                              " elements; enumeration bound is " + std::to_string(element_bound));
  }
  std::vector<std::size_t> order = poset.linear_extension();
  std::vector<DownSet> out;
  // Depth-first choice per element in a linear extension: an element may be
  // added only when all elements below it are present.
  std::vector<std::pair<std::size_t, ElementMask>> stack{{0, 0}};
  while (!stack.empty()) {
    auto [pos, mask] = stack.back();
    stack.pop_back();
    if (pos == order.size()) {
      out.push_back(DownSet{mask});
      if (out.size() > max_downsets) {
        throw Error(ErrorCode::BoundExceeded, "more than " + std::to_string(max_downsets) + " down-sets");
      }
      continue;
    }
    std::size_t p = order[pos];
    stack.emplace_back(pos + 1, mask);
    ElementMask strictly_below = poset.principal(p) & ~(ElementMask{1} << p);
    if (is_subset(strictly_below, mask)) stack.emplace_back(pos + 1, mask | (ElementMask{1} << p));
  }
  std::sort(out.begin(), out.end(), [](DownSet a, DownSet b) { return canonical_mask_less(a.bits, b.bits); });
  return out;
}

std::vector<DownSet> join_irreducible_decomposition(const Poset& poset, DownSet alpha) {
  poset.down_set(alpha.bits);
  std::vector<DownSet> out;
  for (std::size_t m : poset.maximal_elements(alpha.bits)) out.push_back(DownSet{poset.principal(m)});
  return out;
}

DownSet immediate_predecessor(const Poset& poset, DownSet beta) {
  poset.down_set(beta.bits);
  auto maxima = poset.maximal_elements(beta.bits);
  if (maxima.size() != 1) {
    throw Error(ErrorCode::NotJoinIrreducible,
                poset.format(beta.bits) + " has " + std::to_string(maxima.size()) + " maximal elements");
  }
  return DownSet{beta.bits & ~(ElementMask{1} << maxima.front())};
}

ConvexRelation convex_relation(const Poset& poset, ConvexSet xi, ConvexSet eta) {
  poset.convex_set(xi.bits);
  poset.convex_set(eta.bits);
  if ((xi.bits & eta.bits) != 0) return ConvexRelation::Neither;
  const bool xi_below_eta = (poset.up_closure(xi.bits) & eta.bits) != 0;
  const bool eta_below_xi = (poset.up_closure(eta.bits) & xi.bits) != 0;
  if (!xi_below_eta && !eta_below_xi) return ConvexRelation::Incomparable;
  if (eta_below_xi) return ConvexRelation::Neither;
  return poset.is_convex(xi.bits | eta.bits) ? ConvexRelation::Adjacent : ConvexRelation::Neither;
}

}  // namespace ceforge
