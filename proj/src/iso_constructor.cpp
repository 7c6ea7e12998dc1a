#include "ceforge/iso_constructor.hpp"

namespace ceforge {

namespace {

std::vector<std::size_t> positions(const GradedDifferentialGroup& c, ElementMask sub, ElementMask whole) {
  auto s = c.indices(sub);
  auto w = c.indices(whole);
  std::vector<std::size_t> out;
  std::size_t k = 0;
  for (std::size_t x : s) {
    while (w[k] != x) ++k;
    out.push_back(k);
  }
  return out;
}

std::vector<std::size_t> range(std::size_t n) {
  std::vector<std::size_t> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = i;
  return out;
}

bool region_is_filtered_iso(const GradedDifferentialGroup& c, ElementMask region, const Matrix& m) {
  auto idx = c.indices(region);
  const Poset& P = c.poset();
  for (std::size_t i = 0; i < idx.size(); ++i)
    for (std::size_t j = 0; j < idx.size(); ++j)
      if (m(i, j) != 0 && !P.leq(c.grade_of(idx[i]), c.grade_of(idx[j]))) return false;
  for (std::size_t p : mask_elements(region)) {
    auto pos = positions(c, ElementMask{1} << p, region);
    if (pos.empty()) continue;
    if (!c.ring().is_unit(determinant(m.submatrix(pos, pos)))) return false;
  }
  return true;
}

}  // namespace

Matrix lift_through_boundary(const Matrix& h, const Matrix& d_A) { return lift_through_boundary(h, homology(d_A)); }

Matrix lift_through_boundary(const Matrix& h, const HomologyData& hA) {
  const Matrix& d = hA.differential();
  if (h.rows() != d.rows()) throw Error(ErrorCode::DimensionMismatch, "h and d_A have different row counts");
  if (h.cols() == 0 || h.rows() == 0) return Matrix(h.ring(), d.cols(), h.cols());
  Matrix dh = d * h;
  for (std::size_t j = 0; j < h.cols(); ++j) {
    for (std::size_t i = 0; i < dh.rows(); ++i) {
      if (dh(i, j) != 0) {
        throw Error(ErrorCode::PreconditionFailed, "column " + std::to_string(j) + " of h is not a cycle");
      }
    }
  }
  Matrix classes = hA.project(h);
  for (std::size_t j = 0; j < classes.cols(); ++j) {
    for (std::size_t i = 0; i < classes.rows(); ++i) {
      if (classes(i, j) != 0) {
        throw Error(ErrorCode::PreconditionFailed,
                    "column " + std::to_string(j) + " of h has a nonzero homology class");
      }
    }
  }
  auto l = solve(d, h);
  if (!l) throw Error(ErrorCode::PreconditionFailed, "h is not a boundary");
  return *l;
}

SplitCycles split_cycles(const Matrix& lambda, const Matrix& d_C) {
  const Coefficients& ring = lambda.ring();
  const std::size_t rp = d_C.rows();
  const std::size_t rq = lambda.cols();
  if (lambda.rows() != rp) throw Error(ErrorCode::DimensionMismatch, "λ and d_C have different row counts");
  if (!(d_C * lambda).is_zero()) throw Error(ErrorCode::PreconditionFailed, "λ does not map into cycles");

  SplitCycles out;
  out.basis_change = Matrix::identity(ring, rq);
  out.basis_change_inv = Matrix::identity(ring, rq);
  out.k_basis = Matrix(ring, rq, 0);
  out.sigma = Matrix(ring, rp, 0);
  if (rq == 0) return out;

  Matrix kgen(ring, rq, 0);
  if (rp == 0) {
    kgen = Matrix::identity(ring, rq);
  } else {
    Matrix ker = kernel_basis(Matrix::hstack(d_C, lambda));
    std::vector<std::size_t> tail;
    for (std::size_t i = rp; i < rp + rq; ++i) tail.push_back(i);
    kgen = ker.select_rows(tail);
  }
  if (kgen.cols() == 0 || kgen.is_zero()) return out;

  SmithDecomposition snf = smith_normal_form(kgen);
  out.basis_change = snf.u_inv;
  out.basis_change_inv = snf.u;
  out.m_rank = snf.rank;
  out.k_basis = Matrix(ring, rq, snf.rank);
  for (std::size_t i = 0; i < snf.rank; ++i) {
    out.omega.push_back(snf.d(i, i));
    for (std::size_t r = 0; r < rq; ++r) out.k_basis.set(r, i, snf.u_inv(r, i) * snf.d(i, i));
  }
  if (rp == 0) {
    out.sigma = Matrix(ring, 0, snf.rank);
    return out;
  }
  auto sigma = solve(d_C, -(lambda * out.k_basis));
  if (!sigma) throw Error(ErrorCode::Internal, "no σ with d_C σ = -λ on K");
  out.sigma = *sigma;
  return out;
}

Matrix construct_gamma(const Matrix& classes, const FgGroup& target, const Matrix& domain,
                       const Matrix& obstruction) {
  const Coefficients& ring = classes.ring();
  const std::size_t nt = target.generators();
  const std::size_t nz = classes.cols();
  const std::size_t rq = domain.rows();
  const std::size_t m = domain.cols();
  if (classes.rows() != nt || obstruction.rows() != nt || obstruction.cols() != m) {
    throw Error(ErrorCode::DimensionMismatch, "construct_gamma: inconsistent shapes");
  }
  Matrix delta(ring, nz, rq);
  if (m == 0 || nt == 0) return delta;
  const std::size_t nvars = nz * rq;
  const std::size_t nslack = target.torsion.size() * m;
  Matrix sys(ring, nt * m, nvars + nslack);
  Matrix rhs(ring, nt * m, 1);
  std::size_t slack = nvars;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t t = 0; t < nt; ++t) {
      const std::size_t row = i * nt + t;
      for (std::size_t r = 0; r < nz; ++r) {
        if (classes(t, r) == 0) continue;
        for (std::size_t c = 0; c < rq; ++c) {
          if (domain(c, i) != 0) sys.add_to(row, c * nz + r, classes(t, r) * domain(c, i));
        }
      }
      if (t < target.torsion.size()) sys.set(row, slack++, Scalar(target.torsion[t]));
      rhs.set(row, 0, obstruction(t, i));
    }
  }
  auto x = solve(sys, rhs);
  if (!x) {
    // Name the first domain generator whose obstruction cannot be met alone.
    for (std::size_t i = 0; i < m; ++i) {
      Matrix one = Matrix::hstack(classes, target.relations());
      if (!solve(one, obstruction.select_columns({i}))) {
        throw Error(ErrorCode::PreconditionFailed,
                    "obstruction class of domain generator " + std::to_string(i) + " is not in the image of η'");
      }
    }
    throw Error(ErrorCode::PreconditionFailed, "no γ satisfies the lifting condition on all generators");
  }
  for (std::size_t c = 0; c < rq; ++c)
    for (std::size_t r = 0; r < nz; ++r) delta.set(r, c, (*x)(c * nz + r, 0));
  return delta;
}

// ---------------------------------------------------------------------------

StepResult extend_step(const CESystem& sysC, const CESystem& sysA, DownSet beta, const Matrix& f_prime,
                       const Matrix& f_dd, const GroupHom& g) {
  const GradedDifferentialGroup& C = sysC.base();
  const GradedDifferentialGroup& A = sysA.base();
  const Poset& P = C.poset();
  const Coefficients& ring = C.ring();
  const DownSet dagger = immediate_predecessor(P, beta);
  const ElementMask qmask = beta.bits & ~dagger.bits;
  const std::string qlabel = P.label(mask_elements(qmask).front());

  auto pp = positions(C, dagger.bits, beta.bits);
  auto pq = positions(C, qmask, beta.bits);
  const std::size_t rp = pp.size(), rq = pq.size(), rb = rp + rq;
  if (f_prime.rows() != rp || f_prime.cols() != rp || f_dd.rows() != rq || f_dd.cols() != rq) {
    throw Error(ErrorCode::DimensionMismatch, "extend_step: f' or f'' has the wrong shape");
  }

  const Matrix dC = C.restricted_differential(beta.bits);
  const Matrix dA = A.restricted_differential(beta.bits);
  const Matrix dCp = dC.submatrix(pp, pp), dAp = dA.submatrix(pp, pp);
  const Matrix lambda = dC.submatrix(pp, pq), lambda_a = dA.submatrix(pp, pq);
  if (!dC.submatrix(pq, pq).is_zero() || !dA.submatrix(pq, pq).is_zero()) {
    throw Error(ErrorCode::HypothesisViolated, "diagonal block at " + qlabel + " is nonzero");
  }

  const HomologyData& hCp = sysC.homology(dagger.bits);
  const HomologyData& hAp = sysA.homology(dagger.bits);
  const HomologyData& hCq = sysC.homology(qmask);
  const HomologyData& hAq = sysA.homology(qmask);
  const HomologyData& hCb = sysC.homology(beta.bits);
  const HomologyData& hAb = sysA.homology(beta.bits);

  if (g.source() != hCb.group() || g.target() != hAb.group()) {
    throw Error(ErrorCode::LadderNotCommuting, "g does not act on E^β_∅");
  }
  const GroupHom Hfp = induced_hom(f_prime, hCp, hAp);
  const GroupHom Hfq = induced_hom(f_dd, hCq, hAq);
  const TriangleMaps tc = sysC.triangle_maps(DownSet{0}, dagger, beta);
  const TriangleMaps ta = sysA.triangle_maps(DownSet{0}, dagger, beta);
  const std::string where = " at q=" + qlabel;
  if (compose(g, tc.i) != compose(ta.i, Hfp)) throw Error(ErrorCode::LadderNotCommuting, "i-square" + where);
  if (compose(Hfq, tc.j) != compose(ta.j, g)) throw Error(ErrorCode::LadderNotCommuting, "j-square" + where);
  if (compose(Hfp, tc.k) != compose(ta.k, Hfq)) throw Error(ErrorCode::LadderNotCommuting, "k-square" + where);

  StepResult out;
  out.connecting = f_prime * lambda - lambda_a * f_dd;
  Matrix gamma0 = lift_through_boundary(out.connecting, hAp);

  auto assemble = [&](const Matrix& gamma) {
    Matrix f(ring, rb, rb);
    f.place(pp, pp, f_prime);
    f.place(pp, pq, gamma);
    f.place(pq, pq, f_dd);
    return f;
  };

  // Cycles (σ_i, k_i) complete Z(F_{β†}C) to Z(F_βC).
  SplitCycles sc = split_cycles(lambda, dCp);
  const std::size_t m = sc.k_basis.cols();
  Matrix cyc(ring, rb, m);
  cyc.place(pp, range(m), sc.sigma);
  cyc.place(pq, range(m), sc.k_basis);

  const Matrix f0 = assemble(gamma0);
  Matrix obstruction = g.matrix() * hCb.project(cyc) - hAb.project(f0 * cyc);
  obstruction = reduce_coordinates(hAb.group(), obstruction);

  // Classes in E^β_∅ of the cycle basis of F_{β†}A.
  Matrix pushed(ring, rb, hAp.cycles().cols());
  pushed.place(pp, range(hAp.cycles().cols()), hAp.cycles());
  Matrix classes = hAb.project(pushed);

  Matrix delta = construct_gamma(classes, hAb.group(), sc.k_basis, obstruction);
  out.gamma = gamma0 + hAp.cycles() * delta;
  Matrix f = assemble(out.gamma);

  if (dAp * out.gamma != out.connecting) throw Error(ErrorCode::Internal, "d_A γ != f'λ - λ'f''" + where);
  if (dA * f != f * dC) throw Error(ErrorCode::Internal, "extended map is not a chain map" + where);
  if (induced_hom(f, hCb, hAb) != g) throw Error(ErrorCode::Internal, "extended map does not lift g" + where);
  if (!region_is_filtered_iso(C, beta.bits, f)) {
    throw Error(ErrorCode::Internal, "extended map is not a filtered isomorphism" + where);
  }
  out.certificate.push_back("step q=" + qlabel + ": ladder over ({}," + P.format(dagger.bits) + "," +
                            P.format(beta.bits) + ") commutes");
  out.certificate.push_back("step q=" + qlabel + ": d_A γ = f'λ - λ'f'' holds");
  out.certificate.push_back("step q=" + qlabel + ": d_A f = f d_C on F_" + P.format(beta.bits));
  out.certificate.push_back("step q=" + qlabel + ": H(f) = h on E^" + P.format(beta.bits) + "_{}");
  out.map = RegionMap{beta.bits, std::move(f)};
  return out;
}

RegionMap merge_union(const GradedDifferentialGroup& c, const GradedDifferentialGroup& a, const RegionMap& f_beta,
                      const RegionMap& f_gamma) {
  const Poset& P = c.poset();
  const ElementMask uni = f_beta.region | f_gamma.region;
  const ElementMask inter = f_beta.region & f_gamma.region;
  if (f_beta.region == f_gamma.region && f_beta.matrix == f_gamma.matrix) return f_beta;
  const std::size_t n = c.indices(uni).size();
  auto pb = positions(c, f_beta.region, uni);
  auto pg = positions(c, f_gamma.region, uni);
  Matrix eb(c.ring(), n, n), eg(c.ring(), n, n);
  eb.place(pb, pb, f_beta.matrix);
  eg.place(pg, pg, f_gamma.matrix);

  auto idx = c.indices(uni);
  for (std::size_t j : positions(c, inter, uni)) {
    for (std::size_t i = 0; i < n; ++i) {
      if (eb(i, j) != eg(i, j)) {
        throw Error(ErrorCode::AgreementFailure, "maps disagree on F_" + P.format(inter) + " in block " +
                                                     P.label(c.grade_of(idx[i])) + "<-" +
                                                     P.label(c.grade_of(idx[j])));
      }
    }
  }
  Matrix merged = eb;
  auto only_g = positions(c, f_gamma.region & ~f_beta.region, uni);
  merged.place(range(n), only_g, eg.select_columns(only_g));

  const Matrix dC = c.restricted_differential(uni), dA = a.restricted_differential(uni);
  if (dA * merged != merged * dC) {
    throw Error(ErrorCode::AgreementFailure, "merged map on F_" + P.format(uni) + " is not a chain map");
  }
  if (!region_is_filtered_iso(c, uni, merged)) {
    throw Error(ErrorCode::AgreementFailure, "merged map on F_" + P.format(uni) + " is not a filtered isomorphism");
  }
  return RegionMap{uni, std::move(merged)};
}

// ---------------------------------------------------------------------------

BuildResult build_filtered_iso(const CESystem& sysC, const CESystem& sysA, const CEIso& h, std::uint64_t seed) {
  const GradedDifferentialGroup& C = sysC.base();
  const GradedDifferentialGroup& A = sysA.base();
  const Poset& P = C.poset();
  if (P != A.poset() || C.ring() != A.ring()) {
    throw Error(ErrorCode::DimensionMismatch, "instances use different posets or coefficients");
  }
  if (!validate(C).strict || !validate(A).strict) {
    throw Error(ErrorCode::HypothesisViolated, "both instances must be strict");
  }
  if (C.ranks() != A.ranks()) throw Error(ErrorCode::CEIsoInconsistent, "singleton E-terms have different ranks");
  for (const auto& [xi, comp] : h.components) {
    if (comp.source() != sysC.group(xi) || comp.target() != sysA.group(xi)) {
      throw Error(ErrorCode::CEIsoInconsistent, "component " + P.format(xi) + " does not match the E-terms");
    }
    if (!is_isomorphism(comp).isomorphism) {
      throw Error(ErrorCode::CEIsoInconsistent, "component " + P.format(xi) + " is not an isomorphism");
    }
  }
  auto need = [&](ElementMask xi) -> GroupHom {
    if (const GroupHom* g = h.find(xi)) return *g;
    if (sysC.group(xi).is_trivial()) return GroupHom::zero(sysC.group(xi), sysA.group(xi));
    throw Error(ErrorCode::CEIsoInconsistent, "missing component on " + P.format(xi));
  };

  BuildResult out;
  RegionMap built{0, Matrix(C.ring(), 0, 0)};
  for (std::size_t q : P.linear_extension(seed)) {
    const DownSet beta{P.principal(q)};
    const DownSet dagger{beta.bits & ~(ElementMask{1} << q)};
    auto pos = positions(C, dagger.bits, built.region);
    Matrix f_prime = built.matrix.submatrix(pos, pos);
    if (const GroupHom* hd = h.find(dagger.bits)) {
      if (induced_hom(f_prime, sysC.homology(dagger.bits), sysA.homology(dagger.bits)) != *hd) {
        throw Error(ErrorCode::CEIsoInconsistent, "built map disagrees with h on E^" + P.format(dagger.bits) + "_{}");
      }
    }
    const Matrix f_dd = need(ElementMask{1} << q).matrix();
    StepResult step = [&] {
      try {
        return extend_step(sysC, sysA, beta, f_prime, f_dd, need(beta.bits));
      } catch (const Error& e) {
        if (e.code() == ErrorCode::LadderNotCommuting) throw Error(ErrorCode::CEIsoInconsistent, e.what());
        throw;
      }
    }();
    out.certificate.insert(out.certificate.end(), step.certificate.begin(), step.certificate.end());
    const ElementMask previous = built.region;
    built = merge_union(C, A, built, step.map);
    out.certificate.push_back("merge F_" + P.format(previous) + " with F_" + P.format(beta.bits) +
                              ": agreement on F_" + P.format(previous & beta.bits));
  }

  out.map = FilteredChainMap{C, A, built.matrix};
  const Matrix& f = out.map.matrix;
  MapReport rep = validate_map(out.map, FiltrationMode::Equality);
  if (!rep.ok()) throw Error(ErrorCode::Internal, "constructed map fails validation: " + rep.detail);
  auto inv = inverse(f);
  if (!inv || f * C.differential() * *inv != A.differential()) {
    throw Error(ErrorCode::Internal, "constructed map does not conjugate d_C to d_A");
  }
  out.certificate.push_back("final: d_A f = f d_C");
  out.certificate.push_back("final: f(F_α C) = F_α A for every down-set α");
  out.certificate.push_back("final: f d_C f^-1 = d_A");
  return out;
}

}  // namespace ceforge
