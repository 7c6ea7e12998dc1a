#pragma once

// Hand-rolled random instance generators shared by the unit, property and
// acceptance tests.

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "ceforge/graded_diff.hpp"

namespace ceforge::testing {

using Rng = std::mt19937_64;

inline long uniform(Rng& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

inline Matrix random_matrix(Rng& rng, const Coefficients& ring, std::size_t r, std::size_t c, long lo, long hi) {
  Matrix m(ring, r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m.set(i, j, Scalar(uniform(rng, lo, hi)));
  return m;
}

// Random order on n elements labelled e0, e1, ...: each pair i<j (input
// order) becomes a relation with probability `density` percent.
inline Poset random_poset(Rng& rng, std::size_t n, int density = 40) {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back("e" + std::to_string(i));
  std::vector<std::pair<std::size_t, std::size_t>> rel;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (uniform(rng, 0, 99) < density) rel.emplace_back(i, j);
  return Poset(labels, rel);
}

inline Poset chain_poset(std::size_t n) {
  std::vector<std::string> labels;
  std::vector<std::pair<std::size_t, std::size_t>> rel;
  for (std::size_t i = 0; i < n; ++i) {
    labels.push_back(std::string(1, static_cast<char>('p' + i)));
    if (i) rel.emplace_back(i - 1, i);
  }
  return Poset(labels, rel);
}

inline Scalar random_unit(Rng& rng, const Coefficients& ring) {
  if (ring.kind() == Coefficients::Kind::IntegerRing) return uniform(rng, 0, 1) ? 1 : -1;
  if (ring.is_finite()) return Scalar(uniform(rng, 1, static_cast<long>(ring.modulus()) - 1));
  Scalar s(uniform(rng, 1, 3), uniform(rng, 1, 3));
  s.canonicalize();
  return uniform(rng, 0, 1) ? s : Scalar(-s);
}

inline Scalar random_nonzero(Rng& rng, const Coefficients& ring) {
  if (ring.kind() == Coefficients::Kind::IntegerRing) {
    long v = uniform(rng, 1, 3);
    return uniform(rng, 0, 1) ? v : -v;
  }
  return random_unit(rng, ring);
}

// Filtered automorphism: unimodular (or invertible) diagonal blocks and a
// random strictly-upper part.
inline Matrix random_filtered_automorphism(Rng& rng, const GradedDifferentialGroup& layout, bool unit_diagonal = false) {
  const Coefficients& ring = layout.ring();
  const Poset& P = layout.poset();
  const std::size_t n = layout.total_rank();
  Matrix t(ring, n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t p = layout.grade_of(i), q = layout.grade_of(j);
      if (P.less(p, q)) t.set(i, j, Scalar(uniform(rng, -2, 2)));
    }
  for (std::size_t p = 0; p < P.size(); ++p) {
    auto idx = layout.indices(ElementMask{1} << p);
    const std::size_t r = idx.size();
    // Upper unitriangular times lower unitriangular, then unit diagonal scaling.
    Matrix u = Matrix::identity(ring, r), l = Matrix::identity(ring, r), s = Matrix::identity(ring, r);
    if (!unit_diagonal) {
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) {
          if (i < j) u.set(i, j, Scalar(uniform(rng, -1, 1)));
          if (i > j) l.set(i, j, Scalar(uniform(rng, -1, 1)));
        }
      for (std::size_t i = 0; i < r; ++i) s.set(i, i, random_unit(rng, ring));
    }
    t.place(idx, idx, u * l * s);
  }
  return t;
}

// Strict instance: disjoint pairs e_y -> c e_x with grade(x) < grade(y),
// conjugated by a random filtered automorphism.
inline GradedDifferentialGroup random_strict_instance(Rng& rng, const Poset& P, const Coefficients& ring,
                                                      std::size_t max_rank = 3) {
  std::vector<std::size_t> ranks(P.size());
  for (auto& r : ranks) r = static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(max_rank)));
  GradedDifferentialGroup c(P, ring, ranks);
  const std::size_t n = c.total_rank();
  Matrix d(ring, n, n);
  std::vector<char> used(n, 0);
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::shuffle(order.begin(), order.end(), rng);
  for (std::size_t y : order) {
    if (used[y] || uniform(rng, 0, 99) < 30) continue;
    std::vector<std::size_t> xs;
    for (std::size_t x = 0; x < n; ++x)
      if (!used[x] && x != y && P.less(c.grade_of(x), c.grade_of(y))) xs.push_back(x);
    if (xs.empty()) continue;
    std::size_t x = xs[static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(xs.size()) - 1))];
    d.set(x, y, random_nonzero(rng, ring));
    used[x] = used[y] = 1;
  }
  c.set_differential(d);
  c.set_strict_flag(true);
  return conjugate(c, random_filtered_automorphism(rng, c));
}

// Non-strict field instance: a strict instance plus acyclic pairs inside
// single grades, mixed by a filtered automorphism.
inline GradedDifferentialGroup random_field_instance(Rng& rng, const Poset& P, const Coefficients& ring,
                                                     std::size_t max_rank = 3) {
  std::vector<std::size_t> ranks(P.size());
  for (auto& r : ranks) r = static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(max_rank)));
  GradedDifferentialGroup c(P, ring, ranks);
  const std::size_t n = c.total_rank();
  Matrix d(ring, n, n);
  std::vector<char> used(n, 0);
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::shuffle(order.begin(), order.end(), rng);
  for (std::size_t y : order) {
    if (used[y] || uniform(rng, 0, 99) < 25) continue;
    std::vector<std::size_t> xs;
    for (std::size_t x = 0; x < n; ++x)
      if (!used[x] && x != y && P.leq(c.grade_of(x), c.grade_of(y))) xs.push_back(x);
    if (xs.empty()) continue;
    std::size_t x = xs[static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(xs.size()) - 1))];
    d.set(x, y, random_unit(rng, ring));
    used[x] = used[y] = 1;
  }
  c.set_differential(d);
  return conjugate(c, random_filtered_automorphism(rng, c));
}

// Morse-Smale instance over Z2: one generator per grade in degree mu(p), mu
// the longest-chain height, d(e_q) a random sum of covers one degree lower.
// Falls back to d = 0 when the random choice has d² != 0.
inline GradedDifferentialGroup random_morse_smale(Rng& rng, std::size_t n, std::vector<long>& mu) {
  const Coefficients ring = Coefficients::binary_field();
  Poset P = random_poset(rng, n, 50);
  mu.assign(n, 0);
  for (std::size_t q : P.linear_extension())
    for (std::size_t p = 0; p < n; ++p)
      if (P.less(p, q)) mu[q] = std::max(mu[q], mu[p] + 1);
  GradedDifferentialGroup c(P, ring, std::vector<std::size_t>(n, 1));
  c.set_degrees(std::vector<long>(mu.begin(), mu.end()));
  Matrix d(ring, n, n);
  for (std::size_t q = 0; q < n; ++q)
    for (std::size_t p = 0; p < n; ++p)
      if (P.less(p, q) && mu[p] + 1 == mu[q] && uniform(rng, 0, 1)) d.set(p, q, 1);
  if ((d * d).is_zero()) c.set_differential(d);
  c.set_strict_flag(true);
  return c;
}

// Adds up to two acyclic pairs per grade to a chain-complex instance and
// mixes by a degree-preserving filtered automorphism, so reducing the result
// must recover an instance with the CE system of `c`.
inline GradedDifferentialGroup expand_with_acyclic_pairs(Rng& rng, const GradedDifferentialGroup& c) {
  const Poset& P = c.poset();
  const Coefficients& ring = c.ring();
  std::vector<std::size_t> ranks;
  std::vector<long> deg;
  std::vector<std::size_t> old_pos;  // new index of each original generator
  std::vector<std::pair<std::size_t, std::size_t>> pairs;  // (x, y) with d y = x
  for (std::size_t p = 0; p < P.size(); ++p) {
    std::size_t r = 0;
    for (std::size_t i : c.indices(ElementMask{1} << p)) {
      old_pos.push_back(deg.size());
      deg.push_back((*c.degrees())[i]);
      ++r;
    }
    const long extra = uniform(rng, 0, 2);
    for (long k = 0; k < extra; ++k) {
      const long m = uniform(rng, -1, 2);
      pairs.emplace_back(deg.size(), deg.size() + 1);
      deg.push_back(m);
      deg.push_back(m + 1);
      r += 2;
    }
    ranks.push_back(r);
  }
  GradedDifferentialGroup out(P, ring, ranks);
  out.set_degrees(deg);
  const std::size_t n = out.total_rank();
  Matrix d(ring, n, n);
  const Matrix& dc = c.differential();
  for (std::size_t i = 0; i < dc.rows(); ++i)
    for (std::size_t j = 0; j < dc.cols(); ++j) d.set(old_pos[i], old_pos[j], dc(i, j));
  for (auto [x, y] : pairs) d.set(x, y, random_unit(rng, ring));
  out.set_differential(d);

  // Unitriangular in (linear-extension position of grade, index) order.
  std::vector<std::size_t> rank_of(P.size());
  auto ext = P.linear_extension();
  for (std::size_t i = 0; i < ext.size(); ++i) rank_of[ext[i]] = i;
  Matrix t = Matrix::identity(ring, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j || deg[i] != deg[j]) continue;
      const std::size_t p = out.grade_of(i), q = out.grade_of(j);
      const bool earlier = p == q ? i < j : P.less(p, q) && rank_of[p] < rank_of[q];
      if (earlier && uniform(rng, 0, 2) == 0) t.set(i, j, random_unit(rng, ring));
    }
  return conjugate(out, t);
}

}  // namespace ceforge::testing
