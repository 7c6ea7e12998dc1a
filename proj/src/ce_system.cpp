#include "ceforge/ce_system.hpp"

#include <algorithm>
#include <mutex>
#include <set>
#include <thread>

namespace ceforge {

CESystem::CESystem(GradedDifferentialGroup base) : base_(std::move(base)) {}

const HomologyData& CESystem::homology(ElementMask xi) const {
  {
    std::shared_lock lock(homology_mutex_);
    auto it = homology_cache_.find(xi);
    if (it != homology_cache_.end()) return *it->second;
  }
  auto data = std::make_shared<const HomologyData>(ceforge::homology(base_.restricted_differential(xi)));
  std::unique_lock lock(homology_mutex_);
  auto [it, inserted] = homology_cache_.emplace(xi, std::move(data));
  return *it->second;
}

void CESystem::require_nested(DownSet a, DownSet b) const {
  poset().down_set(a.bits);
  poset().down_set(b.bits);
  if (!is_subset(a.bits, b.bits)) {
    throw Error(ErrorCode::NotNested, poset().format(a.bits) + " is not contained in " + poset().format(b.bits));
  }
}

FgGroup CESystem::e_term(DownSet alpha, DownSet beta) const {
  require_nested(alpha, beta);
  return group(beta.bits & ~alpha.bits);
}

namespace {

// Positions of the generators of `sub` inside the generator list of `whole`.
std::vector<std::size_t> positions(const GradedDifferentialGroup& c, ElementMask sub, ElementMask whole) {
  auto s = c.indices(sub);
  auto w = c.indices(whole);
  std::vector<std::size_t> out;
  out.reserve(s.size());
  std::size_t k = 0;
  for (std::size_t x : s) {
    while (w[k] != x) ++k;
    out.push_back(k);
  }
  return out;
}

}  // namespace

TriangleMaps CESystem::triangle_maps(DownSet alpha, DownSet beta, DownSet gamma) const {
  const TripleKey key{alpha.bits, beta.bits, gamma.bits};
  {
    std::shared_lock lock(triangle_mutex_);
    auto it = triangle_cache_.find(key);
    if (it != triangle_cache_.end()) return *it->second;
  }
  require_nested(alpha, beta);
  require_nested(beta, gamma);
  const ElementMask x = beta.bits & ~alpha.bits;
  const ElementMask w = gamma.bits & ~alpha.bits;
  const ElementMask y = gamma.bits & ~beta.bits;
  const HomologyData& hx = homology(x);
  const HomologyData& hw = homology(w);
  const HomologyData& hy = homology(y);
  const Coefficients& ring = base_.ring();

  auto px = positions(base_, x, w);
  auto py = positions(base_, y, w);
  const std::size_t nw = base_.indices(w).size();

  // i: push cycles of X into W.
  Matrix pushed(ring, nw, hx.cycle_basis().cols());
  std::vector<std::size_t> all_x(hx.cycle_basis().cols());
  for (std::size_t c = 0; c < all_x.size(); ++c) all_x[c] = c;
  pushed.place(px, all_x, hx.cycle_basis());
  GroupHom i(hx.group(), hw.group(), hw.project(pushed));

  // j: restrict cycles of W to Y.
  GroupHom j(hw.group(), hy.group(), hy.project(hw.cycle_basis().select_rows(py)));

  // k[y] = [λ y]: lift y with zero X-part and apply d.
  Matrix lambda = base_.differential().submatrix(base_.indices(x), base_.indices(y));
  GroupHom k(hy.group(), hx.group(), hx.project(lambda * hy.cycle_basis()));

  auto maps = std::make_shared<const TriangleMaps>(TriangleMaps{std::move(i), std::move(j), std::move(k)});
  std::unique_lock lock(triangle_mutex_);
  auto [it, inserted] = triangle_cache_.emplace(key, std::move(maps));
  return *it->second;
}

void CESystem::inject_triangle(DownSet alpha, DownSet beta, DownSet gamma, TriangleMaps maps) {
  std::unique_lock lock(triangle_mutex_);
  triangle_cache_[TripleKey{alpha.bits, beta.bits, gamma.bits}] = std::make_shared<const TriangleMaps>(std::move(maps));
}

// ---------------------------------------------------------------------------

bool verify_exact_triangle(const CESystem& sys, DownSet alpha, DownSet beta, DownSet gamma) {
  TriangleMaps t = sys.triangle_maps(alpha, beta, gamma);
  if (!subgroups_equal(t.i.target(), image_generators(t.i), kernel_generators(t.j))) return false;
  if (!subgroups_equal(t.j.target(), image_generators(t.j), kernel_generators(t.k))) return false;
  if (!subgroups_equal(t.k.target(), image_generators(t.k), kernel_generators(t.i))) return false;
  return true;
}

bool verify_excision(const CESystem& sys, DownSet alpha, DownSet beta) {
  const Poset& P = sys.poset();
  P.down_set(alpha.bits);
  P.down_set(beta.bits);
  const ElementMask lower = alpha.bits & ~(alpha.bits & beta.bits);
  const ElementMask upper = (alpha.bits | beta.bits) & ~beta.bits;
  if (lower != upper) return false;
  const auto& base = sys.base();
  HomologyData h1 = homology(base.restricted_differential(lower));
  HomologyData h2 = homology(base.restricted_differential(upper));
  GroupHom ell = induced_hom(Matrix::identity(base.ring(), base.indices(lower).size()), h1, h2);
  if (!is_isomorphism(ell).isomorphism) return false;
  return h1.group() == sys.group(lower);
}

bool verify_incomparable(const CESystem& sys, DownSet alpha, DownSet beta, DownSet beta_prime, DownSet gamma) {
  const Poset& P = sys.poset();
  for (DownSet s : {alpha, beta, beta_prime, gamma}) P.down_set(s.bits);
  const bool nested = is_subset(alpha.bits, beta.bits) && is_subset(alpha.bits, beta_prime.bits) &&
                      is_subset(beta.bits, gamma.bits) && is_subset(beta_prime.bits, gamma.bits);
  if (!nested || (beta.bits & ~alpha.bits) != (gamma.bits & ~beta_prime.bits) ||
      (beta_prime.bits & ~alpha.bits) != (gamma.bits & ~beta.bits)) {
    throw Error(ErrorCode::HypothesisViolated, "need β∖α = γ∖β' and β'∖α = γ∖β for " + P.format(alpha.bits) + ", " +
                                                   P.format(beta.bits) + ", " + P.format(beta_prime.bits) + ", " +
                                                   P.format(gamma.bits));
  }
  TriangleMaps t = sys.triangle_maps(alpha, beta, gamma);
  TriangleMaps tp = sys.triangle_maps(alpha, beta_prime, gamma);
  if (compose(tp.j, t.i) != GroupHom::identity(t.i.source())) return false;
  if (compose(t.j, tp.i) != GroupHom::identity(tp.i.source())) return false;
  if (!t.k.is_zero() || !tp.k.is_zero()) return false;
  return direct_sum(t.i.source(), t.j.target()) == t.i.target();
}

bool verify_octahedron(const CESystem& sys, DownSet a, DownSet b, DownSet c, DownSet d) {
  TriangleMaps t1 = sys.triangle_maps(a, b, c);
  TriangleMaps t2 = sys.triangle_maps(a, b, d);
  TriangleMaps t3 = sys.triangle_maps(a, c, d);
  TriangleMaps t4 = sys.triangle_maps(b, c, d);
  if (compose(t3.i, t1.i) != t2.i) return false;
  if (compose(t4.j, t2.j) != t3.j) return false;
  if (compose(t2.j, t3.i) != compose(t4.i, t1.j)) return false;
  if (compose(t1.j, t3.k) != t4.k) return false;
  if (compose(t2.k, t4.i) != t1.k) return false;
  if (compose(t3.k, t4.j) != compose(t1.i, t2.k)) return false;
  return verify_exact_triangle(sys, b, c, d);
}

// ---------------------------------------------------------------------------

std::vector<ElementMask> convex_sets(const Poset& poset, std::size_t max_downsets) {
  auto ds = down_sets(poset, configured_element_bound(), max_downsets);
  std::set<ElementMask> seen;
  for (const auto& b : ds)
    for (const auto& a : ds)
      if (is_subset(a.bits, b.bits)) seen.insert(b.bits & ~a.bits);
  std::vector<ElementMask> out(seen.begin(), seen.end());
  std::sort(out.begin(), out.end(), canonical_mask_less);
  return out;
}

std::string format_triple(const Poset& P, DownSet a, DownSet b, DownSet c) {
  return "(" + P.format(a.bits) + "," + P.format(b.bits) + "," + P.format(c.bits) + ")";
}

namespace {

struct Check {
  std::string suite;
  std::string description;
  std::function<bool()> run;
};

void run_checks(std::vector<Check>& checks, std::vector<char>& results, unsigned jobs) {
  results.assign(checks.size(), 0);
  auto worker = [&](std::size_t start, std::size_t stride) {
    for (std::size_t i = start; i < checks.size(); i += stride) {
      try {
        results[i] = checks[i].run() ? 1 : 0;
      } catch (const Error&) {
        results[i] = 0;
      }
    }
  };
  if (jobs <= 1 || checks.size() < 2) {
    worker(0, 1);
    return;
  }
  std::vector<std::thread> threads;
  for (unsigned t = 0; t < jobs; ++t) threads.emplace_back(worker, t, jobs);
  for (auto& t : threads) t.join();
}

BraidReport run_suites(const CESystem& sys, const SuiteOptions& options, bool include_excision) {
  const Poset& P = sys.poset();
  auto ds = down_sets(P, configured_element_bound(), options.max_downsets);
  std::vector<Check> checks;

  for (const auto& a : ds)
    for (const auto& b : ds) {
      if (!is_subset(a.bits, b.bits)) continue;
      for (const auto& c : ds) {
        if (!is_subset(b.bits, c.bits)) continue;
        checks.push_back({"exact-triangle", "triple=" + format_triple(P, a, b, c),
                          [&sys, a, b, c] { return verify_exact_triangle(sys, a, b, c); }});
      }
    }

  if (include_excision) {
    for (const auto& a : ds)
      for (const auto& b : ds)
        checks.push_back({"excision", "pair=(" + P.format(a.bits) + "," + P.format(b.bits) + ")",
                          [&sys, a, b] { return verify_excision(sys, a, b); }});
  }

  for (const auto& a : ds)
    for (const auto& b : ds) {
      if (!is_subset(a.bits, b.bits) || a == b) continue;
      for (const auto& c : ds) {
        if (!is_subset(b.bits, c.bits) || b == c) continue;
        const ConvexSet xi{b.bits & ~a.bits}, eta{c.bits & ~b.bits};
        if (convex_relation(P, xi, eta) != ConvexRelation::Incomparable) continue;
        const DownSet bp{a.bits | eta.bits};
        checks.push_back({"incomparable",
                          "quadruple=(" + P.format(a.bits) + "," + P.format(b.bits) + "," + P.format(bp.bits) + "," +
                              P.format(c.bits) + ")",
                          [&sys, a, b, bp, c] { return verify_incomparable(sys, a, b, bp, c); }});
      }
    }

  // Quadruples with a repeated entry reduce to identities and are skipped.
  for (const auto& a : ds)
    for (const auto& b : ds) {
      if (!is_subset(a.bits, b.bits) || a == b) continue;
      for (const auto& c : ds) {
        if (!is_subset(b.bits, c.bits) || b == c) continue;
        for (const auto& d : ds) {
          if (!is_subset(c.bits, d.bits) || c == d) continue;
          checks.push_back({"octahedron",
                            "quadruple=(" + P.format(a.bits) + "," + P.format(b.bits) + "," + P.format(c.bits) +
                                "," + P.format(d.bits) + ")",
                            [&sys, a, b, c, d] { return verify_octahedron(sys, a, b, c, d); }});
        }
      }
    }

  std::vector<char> results;
  run_checks(checks, results, options.jobs == 0 ? 1 : options.jobs);

  BraidReport report;
  for (const char* name : {"exact-triangle", "excision", "incomparable", "octahedron"}) {
    if (!include_excision && std::string(name) == "excision") continue;
    report.axioms.push_back(AxiomResult{name, 0, 0, {}});
  }
  for (std::size_t i = 0; i < checks.size(); ++i) {
    for (auto& ax : report.axioms) {
      if (ax.name != checks[i].suite) continue;
      ++ax.checked;
      if (!results[i]) {
        if (ax.failed == 0) ax.first_counterexample = checks[i].description;
        ++ax.failed;
      }
    }
    if (options.on_check) options.on_check(checks[i].suite, checks[i].description, results[i] != 0);
  }
  return report;
}

}  // namespace

BraidReport verify_module_braid(const CESystem& sys, const SuiteOptions& options) {
  return run_suites(sys, options, false);
}

BraidReport verify_all(const CESystem& sys, const SuiteOptions& options) { return run_suites(sys, options, true); }

// ---------------------------------------------------------------------------

CEIso induced_ce_iso(const CESystem& sysC, const CESystem& sysA, const Matrix& f, std::size_t max_downsets) {
  CEIso out;
  const auto& base = sysC.base();
  for (ElementMask xi : convex_sets(sysC.poset(), max_downsets)) {
    auto idx = base.indices(xi);
    out.components.emplace(xi, induced_hom(f.submatrix(idx, idx), sysC.homology(xi), sysA.homology(xi)));
  }
  return out;
}

namespace {

std::optional<GroupHom> component(const CEIso& h, const CESystem& sysC, const CESystem& sysA, ElementMask xi) {
  if (const GroupHom* g = h.find(xi)) return *g;
  const FgGroup& gc = sysC.group(xi);
  const FgGroup& ga = sysA.group(xi);
  if (gc.is_trivial() && ga.is_trivial()) return GroupHom::zero(gc, ga);
  return std::nullopt;
}

}  // namespace

CEIsoCheck verify_ce_iso(const CESystem& sysC, const CESystem& sysA, const CEIso& h, std::size_t max_downsets) {
  CEIsoCheck out;
  const Poset& P = sysC.poset();
  if (P != sysA.poset()) return {false, "posets differ"};
  for (const auto& [xi, g] : h.components) {
    if (g.source() != sysC.group(xi) || g.target() != sysA.group(xi)) {
      return {false, "component " + P.format(xi) + " has the wrong source or target"};
    }
    if (!is_isomorphism(g).isomorphism) return {false, "component " + P.format(xi) + " is not an isomorphism"};
  }
  auto ds = down_sets(P, configured_element_bound(), max_downsets);
  for (const auto& a : ds)
    for (const auto& b : ds) {
      if (!is_subset(a.bits, b.bits)) continue;
      for (const auto& c : ds) {
        if (!is_subset(b.bits, c.bits)) continue;
        auto hx = component(h, sysC, sysA, b.bits & ~a.bits);
        auto hw = component(h, sysC, sysA, c.bits & ~a.bits);
        auto hy = component(h, sysC, sysA, c.bits & ~b.bits);
        if (!hx || !hw || !hy) continue;
        TriangleMaps tc = sysC.triangle_maps(a, b, c);
        TriangleMaps ta = sysA.triangle_maps(a, b, c);
        const std::string where = format_triple(P, a, b, c);
        if (compose(*hw, tc.i) != compose(ta.i, *hx)) return {false, "i-square fails on triple=" + where};
        if (compose(*hy, tc.j) != compose(ta.j, *hw)) return {false, "j-square fails on triple=" + where};
        if (compose(*hx, tc.k) != compose(ta.k, *hy)) return {false, "k-square fails on triple=" + where};
      }
    }
  return out;
}

std::optional<std::pair<DownSet, DownSet>> distinguishing_pair(const CESystem& sysC, const CESystem& sysA) {
  const Poset& P = sysC.poset();
  for (ElementMask xi : convex_sets(P)) {
    if (sysC.group(xi) != sysA.group(xi)) {
      const ElementMask beta = P.down_closure(xi);
      return std::make_pair(DownSet{beta & ~xi}, DownSet{beta});
    }
  }
  return std::nullopt;
}

}  // namespace ceforge
