#include <doctest.h>

#include "ceforge/graded_diff.hpp"
#include "support/generators.hpp"

using namespace ceforge;

namespace {

const Coefficients Z = Coefficients::integers();
const Coefficients Q = Coefficients::rationals();
const Coefficients F2 = Coefficients::binary_field();

GradedDifferentialGroup chain2(const Coefficients& ring, long entry) {
  GradedDifferentialGroup c(testing::chain_poset(2), ring, {1, 1});
  c.set_block(0, 1, Matrix::from_rows(ring, {{entry}}));
  return c;
}

// p<q<r over Z: d(e_q) = e_p1 and d(e_r) = 3 e_p2.
GradedDifferentialGroup chain3() {
  GradedDifferentialGroup c(testing::chain_poset(3), Z, {2, 1, 1});
  c.set_block(0, 1, Matrix::from_rows(Z, {{1}, {0}}));
  c.set_block(0, 2, Matrix::from_rows(Z, {{0}, {3}}));
  return c;
}

}  // namespace

TEST_CASE("2-chain instance validates") {
  auto r = validate(chain2(Z, 2));
  CHECK(r.d_squared_zero);
  CHECK(r.filtered);
  CHECK(r.strict);
  CHECK_FALSE(r.degree_consistent.has_value());
  CHECK(r.valid());
}

TEST_CASE("antichain with an off-diagonal block is not filtered") {
  GradedDifferentialGroup c(Poset({"p", "q"}, {}), Z, {1, 1});
  c.set_block(0, 1, Matrix::from_rows(Z, {{1}}));
  auto r = validate(c);
  CHECK_FALSE(r.filtered);
  CHECK_FALSE(r.strict);
  CHECK_FALSE(r.valid());
  try {
    require_valid(c);
    FAIL("expected ValidationError");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ValidationError);
    CHECK(std::string(e.what()).find("filtered") != std::string::npos);
  }
}

TEST_CASE("d squared nonzero is detected") {
  GradedDifferentialGroup c(testing::chain_poset(1), Q, {1});
  c.set_block(0, 0, Matrix::from_rows(Q, {{1}}));
  CHECK_FALSE(validate(c).d_squared_zero);
}

TEST_CASE("degree consistency") {
  auto c = chain2(Z, 2);
  c.set_degrees(std::vector<long>{0, 1});
  CHECK(validate(c).degree_consistent == true);
  c.set_degrees(std::vector<long>{0, 0});
  CHECK(validate(c).degree_consistent == false);
  CHECK_THROWS_AS(c.set_degrees(std::vector<long>{0}), Error);
}

TEST_CASE("restriction to convex sets") {
  auto c = chain2(Z, 2);
  CHECK(restrict(c, ConvexSet{0b11}) == c);
  auto low = restrict(c, ConvexSet{0b01});
  CHECK(low.total_rank() == 1);
  CHECK(low.differential().is_zero());

  auto c3 = chain3();
  REQUIRE(validate(c3).valid());
  auto upper = restrict(c3, ConvexSet{0b110});
  CHECK(upper.total_rank() == 2);
  CHECK(validate(upper).valid());
  CHECK_THROWS_AS(restrict(c3, ConvexSet{0b101}), Error);
}

TEST_CASE("restriction of a nonstrict 3-chain keeps the q-r block") {
  // d(e_r) = e_q conjugated by a unitriangular map, so d² = 0 holds.
  GradedDifferentialGroup c(testing::chain_poset(3), Z, {1, 1, 1});
  c.set_block(1, 2, Matrix::from_rows(Z, {{1}}));
  Matrix f = Matrix::identity(Z, 3);
  f.set(0, 1, 1);
  f.set(0, 2, -1);
  auto a = conjugate(c, f);
  REQUIRE(validate(a).valid());
  auto sub = restrict(a, ConvexSet{0b110});
  CHECK(sub.differential() == Matrix::from_rows(Z, {{0, 1}, {0, 0}}));
}

TEST_CASE("filtration subgroups") {
  auto c = chain2(Z, 2);
  CHECK(filtration_subgroup(c, DownSet{0}).empty());
  CHECK(filtration_subgroup(c, DownSet{0b11}) == std::vector<std::size_t>{0, 1});
  CHECK(filtration_subgroup(c, DownSet{0b01}) == std::vector<std::size_t>{0});
  CHECK_THROWS_AS(filtration_subgroup(c, DownSet{0b10}), Error);
}

TEST_CASE("map validation modes") {
  auto c = chain2(Z, 2);
  FilteredChainMap id{c, c, Matrix::identity(Z, 2)};
  CHECK(validate_map(id, FiltrationMode::Preserving).ok());
  CHECK(validate_map(id, FiltrationMode::Equality).ok());

  // Upper triangular with unit diagonal conjugating d to itself.
  auto c2 = chain2(Z, 0);
  Matrix t = Matrix::from_rows(Z, {{-1, 5}, {0, 1}});
  FilteredChainMap tri{c2, c2, t};
  CHECK(validate_map(tri, FiltrationMode::Equality).ok());

  FilteredChainMap down{c2, c2, Matrix::from_rows(Z, {{1, 0}, {1, 1}})};
  CHECK_FALSE(validate_map(down, FiltrationMode::Preserving).preserving);

  FilteredChainMap not_chain{c, c, Matrix::from_rows(Z, {{1, 0}, {0, 2}})};
  CHECK_FALSE(validate_map(not_chain, FiltrationMode::Preserving).chain);
}

TEST_CASE("4Z maps properly into 2Z") {
  ExplicitFiltration source{{0b0, 0b1}, {Matrix(Z, 1, 0), Matrix::from_rows(Z, {{4}})}};
  ExplicitFiltration target{{0b0, 0b1}, {Matrix(Z, 1, 0), Matrix::from_rows(Z, {{2}})}};
  Matrix id = Matrix::identity(Z, 1);
  CHECK(validate_map(id, source, target, FiltrationMode::Preserving).ok());
  auto eq = validate_map(id, source, target, FiltrationMode::Equality);
  CHECK(eq.preserving);
  CHECK(eq.equality == false);
  CHECK_FALSE(eq.ok());
  CHECK(validate_map(id, target, target, FiltrationMode::Equality).ok());
}

TEST_CASE("chain homotopies") {
  auto c = chain2(Z, 2);
  const Matrix& d = c.differential();
  Matrix id = Matrix::identity(Z, 2);
  CHECK(verify_homotopy(id, id, Matrix(Z, 2, 2), d, d));
  // h d + d h = 0 although h is nonzero.
  Matrix h = Matrix::from_rows(Z, {{1, 0}, {0, -1}});
  CHECK((h * d + d * h).is_zero());
  CHECK(verify_homotopy(id, id, h, d, d));
  CHECK_FALSE(verify_homotopy(id, id.scaled(2), Matrix(Z, 2, 2), d, d));

  FilteredChainMap f{c, c, id};
  CHECK(verify_homotopy(f, f, ChainHomotopy{h}));
  // Homotopies must respect the filtration too.
  CHECK_FALSE(verify_homotopy(f, f, ChainHomotopy{Matrix::from_rows(Z, {{0, 0}, {1, 0}})}));
}

TEST_CASE("conjugation") {
  auto c = chain2(Z, 2);
  CHECK(conjugate(c, Matrix::identity(Z, 2)) == c);
  CHECK(conjugate(c, Matrix::identity(Z, 2).scaled(-1)) == c);

  auto z2 = chain2(F2, 1);
  Matrix f = Matrix::from_rows(F2, {{1, 1}, {0, 1}});
  auto a = conjugate(z2, f);
  CHECK(a.differential() == f * z2.differential() * *inverse(f));
  CHECK(validate(a).strict);

  try {
    conjugate(c, Matrix::from_rows(Z, {{2, 0}, {0, 1}}));
    FAIL("expected NotInvertible");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotInvertible);
  }
  CHECK_FALSE(is_filtered(c, Matrix::from_rows(Z, {{1, 0}, {1, 1}})));
  CHECK(is_filtered_isomorphism(c, Matrix::from_rows(Z, {{1, 7}, {0, -1}})));
}

TEST_CASE("random instances are valid and strict") {
  testing::Rng rng(41);
  for (int trial = 0; trial < 60; ++trial) {
    Poset P = testing::random_poset(rng, static_cast<std::size_t>(testing::uniform(rng, 1, 5)));
    for (const auto& ring : {Z, F2, Q}) {
      auto c = testing::random_strict_instance(rng, P, ring);
      auto r = validate(c);
      CHECK(r.valid());
      CHECK(r.strict);
      auto f = testing::random_filtered_automorphism(rng, c);
      CHECK(is_filtered_isomorphism(c, f));
      CHECK(validate(conjugate(c, f)).valid());
    }
  }
}
