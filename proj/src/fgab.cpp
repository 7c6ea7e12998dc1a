#include "ceforge/fgab.hpp"

#include <algorithm>
#include <sstream>

namespace ceforge {

Matrix FgGroup::relations() const {
  Matrix r(ring, generators(), torsion.size());
  for (std::size_t i = 0; i < torsion.size(); ++i) r.set(i, i, Scalar(torsion[i]));
  return r;
}

std::string FgGroup::to_string() const {
  if (is_trivial()) return "0";
  std::vector<std::string> parts;
  if (free_rank > 0) {
    std::string s = ring.symbol();
    if (free_rank > 1 || ring.is_field()) s += "^" + std::to_string(free_rank);
    parts.push_back(s);
  }
  for (const auto& t : torsion) parts.push_back("Z/" + t.get_str());
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += " ⊕ ";
    out += parts[i];
  }
  return out;
}

FgGroup direct_sum(const FgGroup& a, const FgGroup& b) {
  if (a.ring != b.ring) throw Error(ErrorCode::DimensionMismatch, "direct sum over different rings");
  FgGroup out;
  out.ring = a.ring;
  out.free_rank = a.free_rank + b.free_rank;
  std::vector<mpz_class> ts = a.torsion;
  ts.insert(ts.end(), b.torsion.begin(), b.torsion.end());
  if (ts.empty()) return out;
  Matrix diag(Coefficients::integers(), ts.size(), ts.size());
  for (std::size_t i = 0; i < ts.size(); ++i) diag.set(i, i, Scalar(ts[i]));
  SmithDecomposition snf = smith_normal_form(diag);
  for (const auto& f : snf.invariant_factors()) {
    if (f != 1) out.torsion.push_back(f.get_num());
  }
  return out;
}

Matrix reduce_coordinates(const FgGroup& g, Matrix coords) {
  if (coords.rows() != g.generators()) throw Error(ErrorCode::DimensionMismatch, "coordinate length mismatch");
  for (std::size_t i = 0; i < g.torsion.size(); ++i) {
    for (std::size_t j = 0; j < coords.cols(); ++j) {
      mpz_class r;
      mpz_fdiv_r(r.get_mpz_t(), coords(i, j).get_num_mpz_t(), g.torsion[i].get_mpz_t());
      coords.set(i, j, Scalar(r));
    }
  }
  return coords;
}

// ---------------------------------------------------------------------------

GroupHom::GroupHom(FgGroup source, FgGroup target, Matrix matrix)
    : source_(std::move(source)), target_(std::move(target)), matrix_(std::move(matrix)) {
  if (matrix_.rows() != target_.generators() || matrix_.cols() != source_.generators()) {
    throw Error(ErrorCode::DimensionMismatch, "homomorphism matrix is " + std::to_string(matrix_.rows()) + "x" +
                                                  std::to_string(matrix_.cols()) + ", expected " +
                                                  std::to_string(target_.generators()) + "x" +
                                                  std::to_string(source_.generators()));
  }
  matrix_ = reduce_coordinates(target_, std::move(matrix_));
}

GroupHom GroupHom::identity(const FgGroup& g) { return GroupHom(g, g, Matrix::identity(g.ring, g.generators())); }

GroupHom GroupHom::zero(const FgGroup& source, const FgGroup& target) {
  return GroupHom(source, target, Matrix(source.ring, target.generators(), source.generators()));
}

bool GroupHom::is_well_defined() const {
  Matrix images = matrix_ * source_.relations();
  for (std::size_t j = 0; j < images.cols(); ++j) {
    if (!subgroup_contains(target_, Matrix(target_.ring, target_.generators(), 0), images.select_columns({j}))) {
      return false;
    }
  }
  return true;
}

GroupHom GroupHom::operator+(const GroupHom& o) const { return GroupHom(source_, target_, matrix_ + o.matrix_); }
GroupHom GroupHom::operator-(const GroupHom& o) const { return GroupHom(source_, target_, matrix_ - o.matrix_); }
GroupHom GroupHom::operator-() const { return GroupHom(source_, target_, -matrix_); }

bool GroupHom::operator==(const GroupHom& o) const {
  return source_ == o.source_ && target_ == o.target_ && matrix_ == o.matrix_;
}

GroupHom compose(const GroupHom& g, const GroupHom& f) {
  if (f.target() != g.source()) throw Error(ErrorCode::DimensionMismatch, "composition of incompatible homomorphisms");
  return GroupHom(f.source(), g.target(), g.matrix() * f.matrix());
}

// ---------------------------------------------------------------------------

Matrix HomologyData::project(const Matrix& cycles) const {
  return reduce_coordinates(group_, projector_ * cycles);
}

HomologyData homology(const Matrix& d) {
  const Coefficients& ring = d.ring();
  if (!d.is_square()) throw Error(ErrorCode::NotADifferential, "differential is not square");
  if (!(d * d).is_zero()) throw Error(ErrorCode::NotADifferential, "d*d != 0");
  const std::size_t n = d.rows();

  HomologyData h;
  h.differential_ = d;
  h.group_.ring = ring;

  if (d.is_zero()) {
    h.cycles_ = Matrix::identity(ring, n);
    h.cycle_basis_ = h.cycles_;
    h.projector_ = h.cycles_;
    h.group_.free_rank = n;
    return h;
  }

  // Saturated kernel basis Z and a left inverse L (L Z = I).
  SmithDecomposition dsnf = smith_normal_form(d);
  std::vector<std::size_t> kcols;
  for (std::size_t j = dsnf.rank; j < n; ++j) kcols.push_back(j);
  Matrix z = dsnf.v.select_columns(kcols);
  Matrix left = dsnf.v_inv.select_rows(kcols);  // rows of V^{-1} matching the kernel columns of V
  h.cycles_ = z;

  // Boundaries in cycle coordinates, then diagonalize them.
  Matrix bz = left * d;
  SmithDecomposition bsnf = smith_normal_form(bz);
  const std::size_t k = z.cols();
  Matrix new_basis = z * bsnf.u_inv;  // columns: adapted basis of the cycles
  Matrix coords = bsnf.u * left;      // coordinates of a cycle in the adapted basis

  std::vector<std::size_t> torsion_idx, free_idx;
  for (std::size_t i = 0; i < k; ++i) {
    if (i < bsnf.rank) {
      const Scalar& di = bsnf.d(i, i);
      if (!ring.is_unit(di)) {
        torsion_idx.push_back(i);
        h.group_.torsion.push_back(di.get_num());
      }
    } else {
      free_idx.push_back(i);
    }
  }
  h.group_.free_rank = free_idx.size();
  std::vector<std::size_t> keep = torsion_idx;
  keep.insert(keep.end(), free_idx.begin(), free_idx.end());
  h.cycle_basis_ = new_basis.select_columns(keep);
  h.projector_ = coords.select_rows(keep);
  return h;
}

GroupHom induced_hom(const Matrix& f, const HomologyData& hc, const HomologyData& ha) {
  if (f.cols() != hc.differential().rows() || f.rows() != ha.differential().rows()) {
    throw Error(ErrorCode::DimensionMismatch, "chain map shape does not match the complexes");
  }
  if (ha.differential() * f != f * hc.differential()) {
    throw Error(ErrorCode::NotAChainMap, "d_A f != f d_C");
  }
  return GroupHom(hc.group(), ha.group(), ha.project(f * hc.cycle_basis()));
}

// ---------------------------------------------------------------------------

bool subgroup_contains(const FgGroup& g, const Matrix& gens, const Matrix& x) {
  Matrix span = Matrix::hstack(gens, g.relations());
  if (span.cols() == 0) return x.is_zero();
  return solve(span, x).has_value();
}

bool subgroup_le(const FgGroup& g, const Matrix& a, const Matrix& b) {
  if (a.cols() == 0) return true;
  Matrix span = Matrix::hstack(b, g.relations());
  if (span.cols() == 0) return a.is_zero();
  SmithDecomposition snf = smith_normal_form(span);
  return solve(span, snf, a).has_value();
}

bool subgroups_equal(const FgGroup& g, const Matrix& a, const Matrix& b) {
  return subgroup_le(g, a, b) && subgroup_le(g, b, a);
}

Matrix image_generators(const GroupHom& h) { return h.matrix(); }

Matrix kernel_generators(const GroupHom& h) {
  const std::size_t ks = h.source().generators();
  if (ks == 0) return Matrix(h.source().ring, 0, 0);
  Matrix system = Matrix::hstack(h.matrix(), h.target().relations());
  if (system.rows() == 0) return Matrix::identity(h.source().ring, ks);
  Matrix kb = kernel_basis(system);
  std::vector<std::size_t> rows(ks);
  for (std::size_t i = 0; i < ks; ++i) rows[i] = i;
  return kb.select_rows(rows);
}

IsoDecision is_isomorphism(const GroupHom& h) {
  IsoDecision out;
  if (h.source() != h.target()) {
    out.obstruction = "invariant factors differ: " + h.source().to_string() + " vs " + h.target().to_string();
    return out;
  }
  const FgGroup& g = h.target();
  const std::size_t k = g.generators();
  if (k == 0) {
    out.isomorphism = true;
    out.inverse = h;
    return out;
  }
  Matrix system = Matrix::hstack(h.matrix(), g.relations());
  auto sol = solve(system, Matrix::identity(g.ring, k));
  if (!sol) {
    out.obstruction = "not surjective (nontrivial cokernel)";
    return out;
  }
  std::vector<std::size_t> rows(k);
  for (std::size_t i = 0; i < k; ++i) rows[i] = i;
  GroupHom inv(g, g, sol->select_rows(rows));
  if (compose(inv, h) != GroupHom::identity(g) || compose(h, inv) != GroupHom::identity(g)) {
    out.obstruction = "not injective";
    return out;
  }
  out.isomorphism = true;
  out.inverse = inv;
  return out;
}

}  // namespace ceforge
