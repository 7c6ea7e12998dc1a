#include "ceforge/connection_matrix.hpp"

#include <algorithm>
#include <sstream>

namespace ceforge {

namespace {

std::string torsion_summary(const GradedDifferentialGroup& d) {
  const Poset& P = d.poset();
  std::vector<std::string> parts;
  auto note = [&](ElementMask xi) {
    FgGroup g = homology(d.restricted_differential(xi)).group();
    if (!g.torsion.empty()) parts.push_back("H(" + P.format(xi) + ") = " + g.to_string());
  };
  for (std::size_t p = 0; p < P.size(); ++p) note(ElementMask{1} << p);
  if (P.size() > 1) note(P.all());
  if (parts.empty()) return "no torsion in the singleton or total E-terms";
  std::string out = "torsion invariant factors: ";
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? "; " : "") + parts[i];
  return out;
}

}  // namespace

ReductionWitness reduce(const GradedDifferentialGroup& d, const std::vector<std::size_t>* priority) {
  const Coefficients& ring = d.ring();
  if (!ring.is_field()) {
    throw Error(ErrorCode::NotAField, "connection matrices need field coefficients; " + torsion_summary(d));
  }
  ValidationReport rep = validate(d);
  if (!rep.d_squared_zero || !rep.filtered) {
    throw Error(ErrorCode::ValidationError, rep.problems.empty() ? "invalid instance" : rep.problems.front());
  }
  const Poset& P = d.poset();
  const std::size_t n = d.total_rank();
  if (priority && priority->size() != n) {
    throw Error(ErrorCode::DimensionMismatch, "pivot priority must rank every generator");
  }

  std::vector<std::size_t> ext_pos(P.size());
  auto ext = P.linear_extension();
  for (std::size_t i = 0; i < ext.size(); ++i) ext_pos[ext[i]] = i;
  auto before = [&](std::size_t x, std::size_t y) {
    if (priority) return (*priority)[x] < (*priority)[y];
    const std::size_t gx = ext_pos[d.grade_of(x)], gy = ext_pos[d.grade_of(y)];
    return gx != gy ? gx < gy : x < y;
  };

  std::vector<std::size_t> ids(n);
  for (std::size_t i = 0; i < n; ++i) ids[i] = i;
  Matrix cur = d.differential();
  Matrix F = Matrix::identity(ring, n);
  Matrix G = Matrix::identity(ring, n);
  Matrix H(ring, n, n);
  ReductionWitness w;

  for (;;) {
    const std::size_t m = ids.size();
    std::vector<std::size_t> order(m);
    for (std::size_t i = 0; i < m; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return before(ids[x], ids[y]); });

    std::size_t a = m, b = m;
    for (std::size_t col : order) {
      const std::size_t p = d.grade_of(ids[col]);
      for (std::size_t row : order) {
        if (row != col && d.grade_of(ids[row]) == p && cur(row, col) != 0) {
          a = row;
          break;
        }
      }
      if (a != m) {
        b = col;
        break;
      }
    }
    if (b == m) break;

    // New basis: e_a is replaced by x = d e_b, so d e_b = e_a afterwards.
    Matrix T = Matrix::identity(ring, m);
    for (std::size_t i = 0; i < m; ++i) T.set(i, a, cur(i, b));
    Matrix Tinv = *inverse(T);
    Matrix d1 = Tinv * cur * T;

    std::vector<std::size_t> rest;
    for (std::size_t i = 0; i < m; ++i)
      if (i != a && i != b) rest.push_back(i);
    const std::size_t r = rest.size();
    Matrix f_loc(ring, m, r), g_loc(ring, r, m), h_loc(ring, m, m);
    for (std::size_t k = 0; k < r; ++k) {
      f_loc.set(rest[k], k, 1);
      f_loc.set(b, k, -d1(a, rest[k]));
      g_loc.set(k, rest[k], 1);
    }
    h_loc.set(b, a, -1);

    Matrix Fs = T * f_loc, Gs = g_loc * Tinv, Hs = T * h_loc * Tinv;
    H = H + F * Hs * G;
    F = F * Fs;
    G = Gs * G;
    cur = d1.submatrix(rest, rest);
    std::vector<std::size_t> kept;
    for (std::size_t i : rest) kept.push_back(ids[i]);
    ids = std::move(kept);
    ++w.cancellations;
  }

  std::vector<std::size_t> ranks(P.size(), 0);
  for (std::size_t id : ids) ++ranks[d.grade_of(id)];
  GradedDifferentialGroup a(P, ring, ranks);
  a.set_differential(cur);
  if (d.degrees()) {
    std::vector<long> deg;
    for (std::size_t id : ids) deg.push_back((*d.degrees())[id]);
    a.set_degrees(deg);
  }
  a.set_strict_flag(true);
  w.a = std::move(a);
  w.f = std::move(F);
  w.g = std::move(G);
  w.h = std::move(H);
  w.kept = std::move(ids);
  return w;
}

bool verify_witness(const GradedDifferentialGroup& d, const ReductionWitness& w) {
  const Matrix& dd = d.differential();
  const Matrix& da = w.a.differential();
  const std::size_t n = d.total_rank(), k = w.a.total_rank();
  if (w.f.rows() != n || w.f.cols() != k || w.g.rows() != k || w.g.cols() != n) return false;
  if (!validate(w.a).strict) return false;
  if (dd * w.f != w.f * da || da * w.g != w.g * dd) return false;
  if (!(w.g * w.f).is_identity()) return false;
  if (w.f * w.g - Matrix::identity(d.ring(), n) != w.h * dd + dd * w.h) return false;
  const Poset& P = d.poset();
  auto filtered = [&](const Matrix& m, const GradedDifferentialGroup& rows, const GradedDifferentialGroup& cols) {
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j)
        if (m(i, j) != 0 && !P.leq(rows.grade_of(i), cols.grade_of(j))) return false;
    return true;
  };
  return filtered(w.f, d, w.a) && filtered(w.g, w.a, d) && filtered(w.h, d, d);
}

// ---------------------------------------------------------------------------

MorseSmaleGrading parse_grading(const Poset& P, const std::string& text) {
  MorseSmaleGrading mu(P.size(), 0);
  std::vector<char> seen(P.size(), 0);
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos) throw Error(ErrorCode::ParseError, "expected label=value in grading, got '" + item + "'");
    const std::string label = item.substr(0, eq);
    const std::string value = item.substr(eq + 1);
    std::size_t p;
    try {
      p = P.index_of(label);
    } catch (const Error&) {
      throw Error(ErrorCode::ParseError, "unknown element '" + label + "' in grading");
    }
    try {
      std::size_t used = 0;
      mu[p] = std::stol(value, &used);
      if (used != value.size()) throw std::invalid_argument(value);
    } catch (const std::exception&) {
      throw Error(ErrorCode::ParseError, "grading value '" + value + "' is not an integer");
    }
    seen[p] = 1;
  }
  for (std::size_t p = 0; p < P.size(); ++p)
    if (!seen[p]) throw Error(ErrorCode::ParseError, "grading has no value for '" + P.label(p) + "'");
  return mu;
}

MorseSmaleCheck check_morse_smale(const GradedDifferentialGroup& c, const MorseSmaleGrading& mu) {
  MorseSmaleCheck out;
  const Poset& P = c.poset();
  auto fail = [&](std::string why) {
    out.ok = false;
    out.reasons.push_back(std::move(why));
  };
  if (mu.size() != P.size()) {
    fail("grading has " + std::to_string(mu.size()) + " values for " + std::to_string(P.size()) + " elements");
    return out;
  }
  if (c.ring() != Coefficients::binary_field()) fail("coefficients must be Z2");
  if (!c.degrees()) fail("no degree map");
  for (std::size_t p = 0; p < P.size(); ++p) {
    if (c.rank(p) != 1) {
      fail("G_" + P.label(p) + " has rank " + std::to_string(c.rank(p)));
    } else if (c.degrees() && (*c.degrees())[c.offset(p)] != mu[p]) {
      fail("generator of " + P.label(p) + " has degree " + std::to_string((*c.degrees())[c.offset(p)]) +
           " but μ = " + std::to_string(mu[p]));
    }
  }
  for (std::size_t p = 0; p < P.size(); ++p)
    for (std::size_t q = 0; q < P.size(); ++q) {
      if (P.less(p, q) && mu[p] >= mu[q]) {
        fail(P.label(p) + " < " + P.label(q) + " but μ(" + P.label(p) + ") >= μ(" + P.label(q) + ")");
      }
      if (p < q && mu[p] == mu[q] && P.comparable(p, q)) {
        fail("μ(" + P.label(p) + ") = μ(" + P.label(q) + ") for comparable elements");
      }
    }
  ValidationReport rep = validate(c);
  if (!rep.valid()) fail("instance fails validation");
  return out;
}

UniquenessCertificate certify_unique_differential(const GradedDifferentialGroup& c1,
                                                  const GradedDifferentialGroup& c2, const MorseSmaleGrading& mu,
                                                  std::uint64_t budget) {
  if (c1.poset() != c2.poset()) throw Error(ErrorCode::GradingMismatch, "instances use different posets");
  auto m1 = check_morse_smale(c1, mu), m2 = check_morse_smale(c2, mu);
  if (!m1.ok) throw Error(ErrorCode::GradingMismatch, "first instance: " + m1.reasons.front());
  if (!m2.ok) throw Error(ErrorCode::GradingMismatch, "second instance: " + m2.reasons.front());

  UniquenessCertificate out;
  const Poset& P = c1.poset();
  const std::size_t n = P.size();
  const Coefficients ring = c1.ring();
  out.equal = c1.differential() == c2.differential();

  // Filtered degree-preserving maps have entries only at p <= q with
  // μ(p) = μ(q); enumerate all of them over Z2.
  std::vector<std::pair<std::size_t, std::size_t>> slots;
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = 0; q < n; ++q)
      if (P.leq(p, q) && mu[p] == mu[q]) slots.emplace_back(c1.offset(p), c1.offset(q));
  if (slots.size() <= 20) {
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << slots.size()); ++bits) {
      Matrix phi(ring, n, n);
      for (std::size_t s = 0; s < slots.size(); ++s)
        if ((bits >> s) & 1U) phi.set(slots[s].first, slots[s].second, 1);
      if (!ring.is_unit(determinant(phi))) continue;
      if (c2.differential() * phi == phi * c1.differential()) ++out.filtered_isomorphisms;
    }
  }

  CESystem s1(c1), s2(c2);
  CompareResult cmp = ce_isomorphic_bruteforce(s1, s2, budget);
  out.bruteforce = cmp.outcome;
  out.distinguishing = cmp.distinguishing;
  out.agree = (cmp.outcome == CompareOutcome::Isomorphic && out.equal) ||
              (cmp.outcome == CompareOutcome::NotIsomorphic && !out.equal);
  return out;
}

}  // namespace ceforge
