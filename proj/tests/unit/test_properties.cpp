// Randomized invariant checks. Every property runs a fixed number of seeded
// trials; a failure message carries the trial seed so it can be replayed.

#include <doctest.h>

#include <set>

#include "ceforge/iso_constructor.hpp"
#include "support/generators.hpp"

using namespace ceforge;

namespace {

const Coefficients Z = Coefficients::integers();
const Coefficients Q = Coefficients::rationals();
const Coefficients F2 = Coefficients::binary_field();

template <class Fn>
void for_all(std::uint64_t base_seed, int trials, Fn&& fn) {
  for (int t = 0; t < trials; ++t) {
    const std::uint64_t seed = base_seed * 1000003ULL + static_cast<std::uint64_t>(t);
    testing::Rng rng(seed);
    CAPTURE(seed);
    fn(rng);
  }
}

Poset small_poset(testing::Rng& rng, std::size_t lo = 1, std::size_t hi = 5) {
  return testing::random_poset(rng, static_cast<std::size_t>(testing::uniform(rng, static_cast<long>(lo),
                                                                              static_cast<long>(hi))));
}

const Coefficients& pick_ring(testing::Rng& rng) {
  static const Coefficients rings[] = {Z, F2, Q};
  return rings[testing::uniform(rng, 0, 2)];
}

}  // namespace

TEST_CASE("nested down-set differences are convex") {
  for_all(1, 60, [](testing::Rng& rng) {
    Poset P = small_poset(rng, 1, 6);
    auto ds = down_sets(P);
    for (auto a : ds)
      for (auto b : ds)
        if (is_subset(a.bits, b.bits)) CHECK(P.is_convex(b.bits & ~a.bits));
  });
}

TEST_CASE("down-sets form a lattice") {
  for_all(2, 60, [](testing::Rng& rng) {
    Poset P = small_poset(rng, 1, 6);
    auto ds = down_sets(P);
    std::set<ElementMask> all;
    for (auto d : ds) all.insert(d.bits);
    CHECK(all.size() == ds.size());
    for (auto a : ds)
      for (auto b : ds) {
        CHECK(all.count(a.bits | b.bits));
        CHECK(all.count(a.bits & b.bits));
      }
  });
}

TEST_CASE("join-irreducible decompositions are irredundant") {
  for_all(3, 60, [](testing::Rng& rng) {
    Poset P = small_poset(rng, 1, 6);
    for (auto a : down_sets(P)) {
      auto parts = join_irreducible_decomposition(P, a);
      ElementMask uni = 0;
      for (auto p : parts) uni |= p.bits;
      CHECK(uni == a.bits);
      for (std::size_t skip = 0; skip < parts.size(); ++skip) {
        ElementMask rest = 0;
        for (std::size_t i = 0; i < parts.size(); ++i)
          if (i != skip) rest |= parts[i].bits;
        CHECK(rest != a.bits);
      }
    }
  });
}

TEST_CASE("immediate predecessors remove exactly one element") {
  for_all(4, 60, [](testing::Rng& rng) {
    Poset P = small_poset(rng, 1, 6);
    for (std::size_t q = 0; q < P.size(); ++q) {
      DownSet beta{P.principal(q)};
      DownSet dagger = immediate_predecessor(P, beta);
      CHECK(is_subset(dagger.bits, beta.bits));
      CHECK((beta.bits & ~dagger.bits) == (ElementMask{1} << q));
      CHECK(P.is_down_set(dagger.bits));
    }
  });
}

TEST_CASE("integer solve failures are genuine") {
  for_all(5, 100, [](testing::Rng& rng) {
    Matrix a = testing::random_matrix(rng, Z, 2, 2, -4, 4);
    Matrix b = testing::random_matrix(rng, Z, 2, 1, -4, 4);
    auto x = solve(a, b);
    if (x) {
      CHECK(a * *x == b);
      return;
    }
    // Either no rational solution, or every rational solution has a
    // non-integral entry: check with a brute-force box on small entries.
    Matrix aq = Matrix::from_rows(Q, {{a(0, 0), a(0, 1)}, {a(1, 0), a(1, 1)}}, 2);
    Matrix bq = Matrix::from_rows(Q, {{b(0, 0)}, {b(1, 0)}}, 1);
    auto xq = solve(aq, bq);
    if (!xq) return;
    for (long u = -20; u <= 20; ++u)
      for (long v = -20; v <= 20; ++v) CHECK(a * Matrix::column(Z, {u, v}) != b);
  });
}

TEST_CASE("integer kernels are saturated") {
  for_all(6, 100, [](testing::Rng& rng) {
    Matrix a = testing::random_matrix(rng, Z, 2, 4, -3, 3);
    Matrix k = kernel_basis(a);
    CHECK((a * k).is_zero());
    if (k.cols() == 0) return;
    for (const auto& f : smith_normal_form(k).invariant_factors()) CHECK(f == 1);
  });
}

TEST_CASE("induced maps are functorial and homotopy invariant") {
  for_all(7, 40, [](testing::Rng& rng) {
    Poset P = small_poset(rng, 1, 4);
    const Coefficients& ring = pick_ring(rng);
    auto c = testing::random_strict_instance(rng, P, ring);
    auto f = testing::random_filtered_automorphism(rng, c);
    auto a = conjugate(c, f);
    auto g = testing::random_filtered_automorphism(rng, a);
    auto b = conjugate(a, g);
    auto hc = homology(c.differential()), ha = homology(a.differential()), hb = homology(b.differential());
    CHECK(induced_hom(g * f, hc, hb) == compose(induced_hom(g, ha, hb), induced_hom(f, hc, ha)));
    CHECK(induced_hom(Matrix::identity(ring, c.total_rank()), hc, hc) == GroupHom::identity(hc.group()));

    Matrix h = testing::random_matrix(rng, ring, a.total_rank(), c.total_rank(), -2, 2);
    Matrix f2 = f + h * c.differential() + a.differential() * h;
    CHECK(induced_hom(f2, hc, ha) == induced_hom(f, hc, ha));

    auto iso = induced_hom(f, hc, ha);
    REQUIRE(is_isomorphism(iso).isomorphism);
    CHECK(iso.source() == iso.target());
  });
}

TEST_CASE("restriction is transitive") {
  for_all(8, 40, [](testing::Rng& rng) {
    Poset P = small_poset(rng, 2, 5);
    auto c = testing::random_field_instance(rng, P, F2);
    std::vector<ElementMask> convex;
    for (ElementMask s = 0; s <= P.all(); ++s)
      if (P.is_convex(s)) convex.push_back(s);
    ElementMask xi = convex[static_cast<std::size_t>(testing::uniform(rng, 0, static_cast<long>(convex.size()) - 1))];
    auto outer = restrict(c, ConvexSet{xi});
    for (ElementMask sub : convex) {
      if (!is_subset(sub, xi)) continue;
      // Relabel sub into the induced subposet's element order.
      ElementMask local = 0;
      std::size_t k = 0;
      for (std::size_t p = 0; p < P.size(); ++p)
        if ((xi >> p) & 1U) {
          if ((sub >> p) & 1U) local |= ElementMask{1} << k;
          ++k;
        }
      CHECK(restrict(outer, ConvexSet{local}).differential() == restrict(c, ConvexSet{sub}).differential());
    }
  });
}

TEST_CASE("incomparable convex sets split the differential") {
  for_all(9, 40, [](testing::Rng& rng) {
    Poset P = small_poset(rng, 2, 5);
    auto c = testing::random_strict_instance(rng, P, Z);
    for (ElementMask xi = 1; xi <= P.all(); ++xi)
      for (ElementMask eta = 1; eta <= P.all(); ++eta) {
        if (!P.is_convex(xi) || !P.is_convex(eta) || (xi & eta)) continue;
        if (convex_relation(P, ConvexSet{xi}, ConvexSet{eta}) != ConvexRelation::Incomparable) continue;
        if (!P.is_convex(xi | eta)) continue;
        const auto& d = c.differential();
        for (std::size_t i : c.indices(xi))
          for (std::size_t j : c.indices(eta)) {
            CHECK(d(i, j) == 0);
            CHECK(d(j, i) == 0);
          }
      }
  });
}

TEST_CASE("conjugation preserves validation flags and E-terms") {
  for_all(10, 30, [](testing::Rng& rng) {
    Poset P = small_poset(rng, 1, 4);
    const Coefficients& ring = pick_ring(rng);
    auto c = testing::random_field_instance(rng, P, ring == Z ? F2 : ring);
    auto f = testing::random_filtered_automorphism(rng, c);
    auto a = conjugate(c, f);
    auto rc = validate(c), ra = validate(a);
    CHECK(rc.filtered == ra.filtered);
    CHECK(rc.strict == ra.strict);
    CESystem sc(c), sa(a);
    CHECK_FALSE(distinguishing_pair(sc, sa));
    CHECK(verify_ce_iso(sc, sa, induced_ce_iso(sc, sa, f)).ok);
  });
}

TEST_CASE("equality mode implies preserving mode") {
  for_all(11, 60, [](testing::Rng& rng) {
    Poset P = small_poset(rng, 1, 4);
    auto c = testing::random_strict_instance(rng, P, Z);
    Matrix m = testing::random_matrix(rng, Z, c.total_rank(), c.total_rank(), -1, 1);
    if (testing::uniform(rng, 0, 1)) m = testing::random_filtered_automorphism(rng, c);
    FilteredChainMap f{c, c, m};
    auto eq = validate_map(f, FiltrationMode::Equality);
    auto pr = validate_map(f, FiltrationMode::Preserving);
    if (eq.ok()) CHECK(pr.ok());
  });
}

TEST_CASE("E-terms depend only on the difference") {
  for_all(12, 30, [](testing::Rng& rng) {
    Poset P = small_poset(rng, 2, 5);
    auto c = testing::random_strict_instance(rng, P, Z);
    CESystem sys(c);
    auto ds = down_sets(P);
    for (auto a : ds)
      for (auto b : ds) {
        if (!is_subset(a.bits, b.bits)) continue;
        auto direct = homology(c.restricted_differential(b.bits & ~a.bits)).group();
        CHECK(sys.e_term(a, b) == direct);
      }
  });
}

TEST_CASE("ce axioms hold on random strict instances") {
  for_all(13, 20, [](testing::Rng& rng) {
    Poset P = small_poset(rng, 2, 4);
    auto c = testing::random_strict_instance(rng, P, pick_ring(rng));
    auto report = verify_all(CESystem(c));
    for (const auto& ax : report.axioms) {
      CAPTURE(ax.name);
      CAPTURE(ax.first_counterexample);
      CHECK(ax.failed == 0);
    }
  });
}

TEST_CASE("construction is deterministic for a fixed seed") {
  for_all(14, 15, [](testing::Rng& rng) {
    Poset P = small_poset(rng, 1, 4);
    auto c = testing::random_strict_instance(rng, P, Z);
    auto f0 = testing::random_filtered_automorphism(rng, c, true);
    auto a = conjugate(c, f0);
    CESystem sc(c), sa(a);
    auto h = induced_ce_iso(sc, sa, f0);
    auto first = build_filtered_iso(sc, sa, h, 5);
    CESystem sc2(c), sa2(a);
    auto second = build_filtered_iso(sc2, sa2, h, 5);
    CHECK(first.map.matrix == second.map.matrix);
    CHECK(first.certificate == second.certificate);
  });
}

TEST_CASE("extend_step satisfies the connecting equation") {
  for_all(15, 40, [](testing::Rng& rng) {
    Poset P = small_poset(rng, 2, 4);
    const Coefficients& ring = testing::uniform(rng, 0, 1) ? Z : F2;
    auto c = testing::random_strict_instance(rng, P, ring);
    auto f0 = testing::random_filtered_automorphism(rng, c);
    auto a = conjugate(c, f0);
    CESystem sc(c), sa(a);
    const std::size_t q = static_cast<std::size_t>(testing::uniform(rng, 0, static_cast<long>(P.size()) - 1));
    const DownSet beta{P.principal(q)};
    const DownSet dagger = immediate_predecessor(P, beta);
    auto ip = c.indices(dagger.bits), iq = c.indices(ElementMask{1} << q), ib = c.indices(beta.bits);
    auto g = induced_hom(f0.submatrix(ib, ib), sc.homology(beta.bits), sa.homology(beta.bits));
    auto step = extend_step(sc, sa, beta, f0.submatrix(ip, ip), f0.submatrix(iq, iq), g);
    const Matrix dAp = a.restricted_differential(dagger.bits);
    CHECK(dAp * step.gamma == step.connecting);
    const Matrix& f = step.map.matrix;
    CHECK(a.restricted_differential(beta.bits) * f == f * c.restricted_differential(beta.bits));
    CHECK(induced_hom(f, sc.homology(beta.bits), sa.homology(beta.bits)) == g);
  });
}
