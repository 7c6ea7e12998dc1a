#include "ceforge/graded_diff.hpp"

#include "ceforge/fgab.hpp"

namespace ceforge {

GradedDifferentialGroup::GradedDifferentialGroup(Poset poset, Coefficients ring, std::vector<std::size_t> ranks)
    : poset_(std::move(poset)), ring_(ring), ranks_(std::move(ranks)) {
  if (ranks_.size() != poset_.size()) {
    throw Error(ErrorCode::DimensionMismatch, "rank map has " + std::to_string(ranks_.size()) + " entries for " +
                                                  std::to_string(poset_.size()) + " elements");
  }
  offsets_.assign(1, 0);
  for (std::size_t p = 0; p < ranks_.size(); ++p) {
    offsets_.push_back(offsets_.back() + ranks_[p]);
    for (std::size_t k = 0; k < ranks_[p]; ++k) grade_.push_back(p);
  }
  d_ = Matrix(ring_, total_rank(), total_rank());
}

std::vector<std::size_t> GradedDifferentialGroup::indices(ElementMask s) const {
  std::vector<std::size_t> out;
  for (std::size_t p : mask_elements(s)) {
    for (std::size_t i = offsets_[p]; i < offsets_[p + 1]; ++i) out.push_back(i);
  }
  return out;
}

void GradedDifferentialGroup::set_differential(Matrix d) {
  if (d.rows() != total_rank() || d.cols() != total_rank()) {
    throw Error(ErrorCode::DimensionMismatch, "differential must be " + std::to_string(total_rank()) + "x" +
                                                  std::to_string(total_rank()));
  }
  if (d.ring() != ring_) throw Error(ErrorCode::DimensionMismatch, "differential over a different ring");
  d_ = std::move(d);
}

Matrix GradedDifferentialGroup::block(std::size_t p, std::size_t q) const {
  return d_.submatrix(indices(ElementMask{1} << p), indices(ElementMask{1} << q));
}

void GradedDifferentialGroup::set_block(std::size_t p, std::size_t q, const Matrix& b) {
  if (b.rows() != rank(p) || b.cols() != rank(q)) {
    throw Error(ErrorCode::DimensionMismatch, "block " + poset_.label(p) + "<-" + poset_.label(q) + " must be " +
                                                  std::to_string(rank(p)) + "x" + std::to_string(rank(q)));
  }
  d_.place(indices(ElementMask{1} << p), indices(ElementMask{1} << q), b);
}

Matrix GradedDifferentialGroup::restricted_differential(ElementMask s) const {
  auto idx = indices(s);
  return d_.submatrix(idx, idx);
}

void GradedDifferentialGroup::set_degrees(std::optional<std::vector<long>> deg) {
  if (deg && deg->size() != total_rank()) {
    throw Error(ErrorCode::DimensionMismatch, "degree map must list one degree per generator");
  }
  degrees_ = std::move(deg);
}

bool GradedDifferentialGroup::operator==(const GradedDifferentialGroup& o) const {
  return poset_ == o.poset_ && ring_ == o.ring_ && ranks_ == o.ranks_ && d_ == o.d_ && degrees_ == o.degrees_ &&
         strict_flag_ == o.strict_flag_;
}

// ---------------------------------------------------------------------------

ValidationReport validate(const GradedDifferentialGroup& c) {
  ValidationReport r;
  const Poset& P = c.poset();
  const Matrix& d = c.differential();
  const std::size_t n = c.total_rank();

  if (!(d * d).is_zero()) {
    r.d_squared_zero = false;
    r.problems.push_back("d*d != 0");
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (d(i, j) == 0) continue;
      std::size_t p = c.grade_of(i), q = c.grade_of(j);
      if (!P.leq(p, q) && r.filtered) {
        r.filtered = false;
        r.problems.push_back("block " + P.label(p) + "<-" + P.label(q) + " is nonzero but " + P.label(p) +
                             " is not <= " + P.label(q));
      }
      if (!P.less(p, q) && r.strict) {
        r.strict = false;
        if (P.leq(p, q)) r.problems.push_back("diagonal block " + P.label(p) + "<-" + P.label(q) + " is nonzero");
      }
    }
  }
  if (c.degrees()) {
    const auto& deg = *c.degrees();
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i) {
      for (std::size_t j = 0; j < n && ok; ++j) {
        if (d(i, j) != 0 && deg[i] != deg[j] - 1) {
          ok = false;
          r.problems.push_back("entry (" + std::to_string(i) + "," + std::to_string(j) + ") maps degree " +
                               std::to_string(deg[j]) + " to degree " + std::to_string(deg[i]));
        }
      }
    }
    r.degree_consistent = ok;
  }
  return r;
}

void require_valid(const GradedDifferentialGroup& c) {
  ValidationReport r = validate(c);
  if (!r.d_squared_zero) throw Error(ErrorCode::ValidationError, "d_squared_zero: d*d != 0");
  if (!r.filtered) throw Error(ErrorCode::ValidationError, "filtered: " + r.problems.front());
  if (r.degree_consistent && !*r.degree_consistent) throw Error(ErrorCode::ValidationError, "degree: inconsistent");
  if (c.strict_flag() && !r.strict) throw Error(ErrorCode::ValidationError, "strict: diagonal block is nonzero");
}

GradedDifferentialGroup restrict(const GradedDifferentialGroup& c, ConvexSet xi) {
  const Poset& P = c.poset();
  P.convex_set(xi.bits);
  auto elems = mask_elements(xi.bits);
  std::vector<std::string> labels;
  std::vector<std::size_t> ranks;
  for (std::size_t p : elems) {
    labels.push_back(P.label(p));
    ranks.push_back(c.rank(p));
  }
  std::vector<std::pair<std::size_t, std::size_t>> rel;
  for (std::size_t a = 0; a < elems.size(); ++a)
    for (std::size_t b = 0; b < elems.size(); ++b)
      if (P.less(elems[a], elems[b])) rel.emplace_back(a, b);
  GradedDifferentialGroup out(Poset(labels, rel), c.ring(), ranks);
  auto idx = c.indices(xi.bits);
  out.set_differential(c.differential().submatrix(idx, idx));
  if (c.degrees()) {
    std::vector<long> deg;
    for (std::size_t i : idx) deg.push_back((*c.degrees())[i]);
    out.set_degrees(deg);
  }
  out.set_strict_flag(c.strict_flag());
  return out;
}

std::vector<std::size_t> filtration_subgroup(const GradedDifferentialGroup& c, DownSet alpha) {
  c.poset().down_set(alpha.bits);
  return c.indices(alpha.bits);
}

Matrix FilteredChainMap::block(std::size_t p, std::size_t q) const {
  return matrix.submatrix(target.indices(ElementMask{1} << p), source.indices(ElementMask{1} << q));
}

// ---------------------------------------------------------------------------

bool is_filtered(const GradedDifferentialGroup& layout, const Matrix& m) {
  if (m.rows() != layout.total_rank() || m.cols() != layout.total_rank()) return false;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (m(i, j) != 0 && !layout.poset().leq(layout.grade_of(i), layout.grade_of(j))) return false;
  return true;
}

bool is_filtered_isomorphism(const GradedDifferentialGroup& layout, const Matrix& m) {
  if (!is_filtered(layout, m)) return false;
  for (std::size_t p = 0; p < layout.poset().size(); ++p) {
    if (layout.rank(p) == 0) continue;
    auto idx = layout.indices(ElementMask{1} << p);
    Scalar det = determinant(m.submatrix(idx, idx));
    if (!layout.ring().is_unit(det)) return false;
  }
  return true;
}

MapReport validate_map(const FilteredChainMap& f, FiltrationMode mode) {
  MapReport r;
  const auto& S = f.source;
  const auto& T = f.target;
  if (S.poset() != T.poset() || S.ring() != T.ring()) {
    r.detail = "source and target differ in poset or coefficients";
    return r;
  }
  if (f.matrix.rows() != T.total_rank() || f.matrix.cols() != S.total_rank()) {
    r.detail = "map matrix has the wrong shape";
    return r;
  }
  r.chain = T.differential() * f.matrix == f.matrix * S.differential();
  r.preserving = true;
  const Poset& P = S.poset();
  for (std::size_t i = 0; i < f.matrix.rows() && r.preserving; ++i) {
    for (std::size_t j = 0; j < f.matrix.cols() && r.preserving; ++j) {
      std::size_t p = T.grade_of(i), q = S.grade_of(j);
      if (f.matrix(i, j) != 0 && !P.leq(p, q)) {
        r.preserving = false;
        r.detail = "block " + P.label(p) + "<-" + P.label(q) + " breaks the filtration";
      }
    }
  }
  if (mode == FiltrationMode::Equality) {
    // For a filtration-preserving map, f(F_α) = F_α for every α exactly when
    // every diagonal block is invertible.
    bool eq = r.preserving && S.ranks() == T.ranks();
    for (std::size_t p = 0; p < P.size() && eq; ++p) {
      auto ti = T.indices(ElementMask{1} << p), si = S.indices(ElementMask{1} << p);
      if (ti.empty()) continue;
      if (!S.ring().is_unit(determinant(f.matrix.submatrix(ti, si)))) {
        eq = false;
        if (r.detail.empty()) r.detail = "diagonal block " + P.label(p) + "<-" + P.label(p) + " is not invertible";
      }
    }
    if (!eq && r.detail.empty()) r.detail = "ranks differ";
    r.equality = eq;
  }
  if (!r.chain && r.detail.empty()) r.detail = "d_A f != f d_C";
  return r;
}

MapReport validate_map(const Matrix& f, const ExplicitFiltration& source, const ExplicitFiltration& target,
                       FiltrationMode mode) {
  MapReport r;
  r.chain = true;
  r.preserving = true;
  if (source.down_sets != target.down_sets || source.generators.size() != source.down_sets.size() ||
      target.generators.size() != target.down_sets.size()) {
    throw Error(ErrorCode::DimensionMismatch, "filtrations are indexed differently");
  }
  FgGroup ambient;
  ambient.ring = f.ring();
  ambient.free_rank = f.rows();
  bool eq = true;
  for (std::size_t k = 0; k < source.down_sets.size(); ++k) {
    Matrix image = f * source.generators[k];
    if (!subgroup_le(ambient, image, target.generators[k])) {
      r.preserving = false;
      if (r.detail.empty()) r.detail = "f(F) is not contained in F' for down-set #" + std::to_string(k);
    }
    if (!subgroup_le(ambient, target.generators[k], image)) {
      eq = false;
      if (r.detail.empty()) r.detail = "f(F) is a proper subgroup of F' for down-set #" + std::to_string(k);
    }
  }
  if (mode == FiltrationMode::Equality) r.equality = r.preserving && eq;
  return r;
}

bool verify_homotopy(const Matrix& f, const Matrix& g, const Matrix& h, const Matrix& d_source,
                     const Matrix& d_target) {
  if (f.rows() != g.rows() || f.cols() != g.cols() || h.rows() != f.rows() || h.cols() != f.cols()) return false;
  return f - g == h * d_source + d_target * h;
}

bool verify_homotopy(const FilteredChainMap& f, const FilteredChainMap& g, const ChainHomotopy& h) {
  if (f.source != g.source || f.target != g.target) return false;
  const Poset& P = f.source.poset();
  for (std::size_t i = 0; i < h.matrix.rows(); ++i)
    for (std::size_t j = 0; j < h.matrix.cols(); ++j)
      if (h.matrix(i, j) != 0 && !P.leq(f.target.grade_of(i), f.source.grade_of(j))) return false;
  return verify_homotopy(f.matrix, g.matrix, h.matrix, f.source.differential(), f.target.differential());
}

GradedDifferentialGroup conjugate(const GradedDifferentialGroup& c, const Matrix& f) {
  if (!is_filtered_isomorphism(c, f)) {
    throw Error(ErrorCode::NotInvertible, "conjugating map must be filtered with invertible diagonal blocks");
  }
  auto inv = inverse(f);
  if (!inv) throw Error(ErrorCode::NotInvertible, "conjugating map is not invertible");
  GradedDifferentialGroup out = c;
  out.set_differential(f * c.differential() * *inv);
  return out;
}

}  // namespace ceforge
