#pragma once

// Reference computations that share no code with the engine: determinantal
// divisors by minor enumeration, Gaussian elimination on plain integers, and
// exhaustive enumeration over Z2.

#include <gmpxx.h>

#include <cstdint>
#include <numeric>
#include <set>
#include <vector>

namespace ceforge::oracle {

using IntMatrix = std::vector<std::vector<mpz_class>>;

// Fraction-free (Bareiss) determinant.
inline mpz_class determinant(IntMatrix a) {
  const std::size_t n = a.size();
  if (n == 0) return 1;
  mpz_class prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t r = k + 1;
      while (r < n && a[r][k] == 0) ++r;
      if (r == n) return 0;
      std::swap(a[k], a[r]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        mpz_class num = a[i][j] * a[k][k] - a[i][k] * a[k][j];
        mpz_divexact(a[i][j].get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
      }
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

inline void combinations(std::size_t n, std::size_t k, std::size_t start, std::vector<std::size_t>& cur,
                         std::vector<std::vector<std::size_t>>& out) {
  if (cur.size() == k) {
    out.push_back(cur);
    return;
  }
  for (std::size_t i = start; i < n; ++i) {
    cur.push_back(i);
    combinations(n, k, i + 1, cur, out);
    cur.pop_back();
  }
}

// Invariant factors d_k = D_k / D_{k-1}, D_k = gcd of all k x k minors.
inline std::vector<mpz_class> invariant_factors(const IntMatrix& m) {
  const std::size_t rows = m.size(), cols = rows ? m[0].size() : 0;
  std::vector<mpz_class> out;
  mpz_class prev = 1;
  for (std::size_t k = 1; k <= std::min(rows, cols); ++k) {
    std::vector<std::vector<std::size_t>> rs, cs;
    std::vector<std::size_t> cur;
    combinations(rows, k, 0, cur, rs);
    combinations(cols, k, 0, cur, cs);
    mpz_class g = 0;
    for (const auto& r : rs)
      for (const auto& c : cs) {
        IntMatrix sub(k, std::vector<mpz_class>(k));
        for (std::size_t i = 0; i < k; ++i)
          for (std::size_t j = 0; j < k; ++j) sub[i][j] = m[r[i]][c[j]];
        mpz_class d = determinant(sub);
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), d.get_mpz_t());
      }
    if (g == 0) break;
    out.push_back(g / prev);
    prev = g;
  }
  return out;
}

// Rank over Z/p (p prime) by elimination on residues.
inline std::size_t rank_mod(std::vector<std::vector<long>> a, long p) {
  const std::size_t rows = a.size(), cols = rows ? a[0].size() : 0;
  for (auto& row : a)
    for (auto& x : row) x = ((x % p) + p) % p;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && a[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[r]);
    long inv = 1;
    for (long t = 1; t < p; ++t)
      if ((a[r][c] * t) % p == 1) inv = t;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      long f = (a[i][c] * inv) % p;
      for (std::size_t j = 0; j < cols; ++j) a[i][j] = ((a[i][j] - f * a[r][j]) % p + p) % p;
    }
    ++r;
  }
  return r;
}

// Rank over Q.
inline std::size_t rank_q(std::vector<std::vector<mpq_class>> a) {
  const std::size_t rows = a.size(), cols = rows ? a[0].size() : 0;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && a[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[r]);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      mpq_class f = a[i][c] / a[r][c];
      for (std::size_t j = 0; j < cols; ++j) a[i][j] -= f * a[r][j];
    }
    ++r;
  }
  return r;
}

// Homology of a Z-differential d (d*d = 0): free rank n - 2 rank(d) and
// torsion equal to the non-unit invariant factors of d.
struct ZHomology {
  std::size_t free_rank = 0;
  std::vector<mpz_class> torsion;
};

inline ZHomology z_homology(const IntMatrix& d) {
  auto inv = invariant_factors(d);
  ZHomology h;
  h.free_rank = d.size() - 2 * inv.size();
  for (const auto& t : inv)
    if (t != 1) h.torsion.push_back(t);
  return h;
}

// dim H over Z2 by counting cycles and boundaries exhaustively (n <= 12).
inline std::size_t z2_homology_dim(const std::vector<std::vector<int>>& d) {
  const std::size_t n = d.size();
  auto apply = [&](std::uint32_t v) {
    std::uint32_t out = 0;
    for (std::size_t i = 0; i < n; ++i) {
      int s = 0;
      for (std::size_t j = 0; j < n; ++j)
        if ((v >> j) & 1U) s ^= d[i][j] & 1;
      if (s) out |= 1U << i;
    }
    return out;
  };
  std::size_t cycles = 0;
  std::set<std::uint32_t> boundaries;
  for (std::uint32_t v = 0; v < (1U << n); ++v) {
    std::uint32_t w = apply(v);
    if (w == 0) ++cycles;
    boundaries.insert(w);
  }
  std::size_t log_c = 0, log_b = 0;
  while ((std::size_t{1} << log_c) < cycles) ++log_c;
  while ((std::size_t{1} << log_b) < boundaries.size()) ++log_b;
  return log_c - log_b;
}

}  // namespace ceforge::oracle
