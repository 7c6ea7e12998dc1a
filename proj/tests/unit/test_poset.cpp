#include <doctest.h>

#include <cstdlib>

#include "ceforge/poset.hpp"
#include "support/generators.hpp"

using namespace ceforge;

namespace {

Poset antichain2() { return Poset({"p", "q"}, {}); }
Poset vee() { return Poset({"a", "b", "c"}, {{0, 2}, {1, 2}}); }

// Filters all 2^n subsets for down-closure using only leq.
std::vector<ElementMask> brute_down_sets(const Poset& P) {
  std::vector<ElementMask> out;
  const std::size_t n = P.size();
  for (ElementMask s = 0; s < (ElementMask{1} << n); ++s) {
    bool closed = true;
    for (std::size_t q = 0; q < n && closed; ++q)
      if ((s >> q) & 1U)
        for (std::size_t p = 0; p < n; ++p)
          if (P.leq(p, q) && !((s >> p) & 1U)) closed = false;
    if (closed) out.push_back(s);
  }
  return out;
}

std::vector<ElementMask> bits(const std::vector<DownSet>& v) {
  std::vector<ElementMask> out;
  for (auto d : v) out.push_back(d.bits);
  return out;
}

}  // namespace

TEST_CASE("down-sets of small posets") {
  CHECK(bits(down_sets(testing::chain_poset(2))) == std::vector<ElementMask>{0b00, 0b01, 0b11});
  CHECK(bits(down_sets(antichain2())) == std::vector<ElementMask>{0b00, 0b01, 0b10, 0b11});
  CHECK(bits(down_sets(vee())) == std::vector<ElementMask>{0b000, 0b001, 0b010, 0b011, 0b111});
}

TEST_CASE("down-set enumeration matches subset filtering") {
  testing::Rng rng(21);
  for (int trial = 0; trial < 100; ++trial) {
    Poset P = testing::random_poset(rng, static_cast<std::size_t>(testing::uniform(rng, 1, 7)));
    auto got = bits(down_sets(P));
    auto want = brute_down_sets(P);
    std::sort(got.begin(), got.end());
    CHECK(got == want);
  }
}

TEST_CASE("down-set bounds") {
  std::vector<std::string> labels;
  for (int i = 0; i < 5; ++i) labels.push_back("x" + std::to_string(i));
  Poset P(labels, {});
  CHECK_THROWS_AS(down_sets(P, 4), Error);
  try {
    down_sets(P, 20, 10);
    FAIL("expected BoundExceeded");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::BoundExceeded);
  }
  CHECK(down_sets(P, 20, 32).size() == 32);
}

TEST_CASE("join-irreducible decomposition") {
  auto chain = testing::chain_poset(2);
  CHECK(join_irreducible_decomposition(chain, DownSet{0}).empty());
  auto top = join_irreducible_decomposition(chain, DownSet{0b11});
  REQUIRE(top.size() == 1);
  CHECK(top[0].bits == chain.principal(1));
  auto ab = join_irreducible_decomposition(vee(), DownSet{0b011});
  REQUIRE(ab.size() == 2);
  CHECK(ab[0].bits == 0b001);
  CHECK(ab[1].bits == 0b010);
  CHECK_THROWS_AS(join_irreducible_decomposition(chain, DownSet{0b10}), Error);
}

TEST_CASE("immediate predecessor") {
  auto chain = testing::chain_poset(2);
  CHECK(immediate_predecessor(chain, DownSet{0b11}).bits == 0b01);
  CHECK(immediate_predecessor(chain, DownSet{0b01}).bits == 0);
  CHECK(immediate_predecessor(vee(), DownSet{0b111}).bits == 0b011);
  try {
    immediate_predecessor(vee(), DownSet{0b011});
    FAIL("expected NotJoinIrreducible");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotJoinIrreducible);
  }
}

TEST_CASE("convex relations") {
  auto chain = testing::chain_poset(2);
  CHECK(convex_relation(chain, ConvexSet{0b01}, ConvexSet{0b10}) == ConvexRelation::Adjacent);
  CHECK(convex_relation(antichain2(), ConvexSet{0b01}, ConvexSet{0b10}) == ConvexRelation::Incomparable);
  auto chain3 = testing::chain_poset(3);
  CHECK(convex_relation(chain3, ConvexSet{0b100}, ConvexSet{0b001}) == ConvexRelation::Neither);
  CHECK_THROWS_AS(convex_relation(chain3, ConvexSet{0b101}, ConvexSet{0b010}), Error);
}

TEST_CASE("adjacency agrees with nested triples") {
  testing::Rng rng(22);
  for (int trial = 0; trial < 40; ++trial) {
    Poset P = testing::random_poset(rng, static_cast<std::size_t>(testing::uniform(rng, 2, 5)));
    auto ds = down_sets(P);
    for (ElementMask xi = 1; xi <= P.all(); ++xi) {
      if (!P.is_convex(xi)) continue;
      for (ElementMask eta = 1; eta <= P.all(); ++eta) {
        if (!P.is_convex(eta) || (xi & eta)) continue;
        // A nested triple realises (xi, eta) exactly for adjacent pairs and
        // for incomparable pairs with a convex union.
        bool witnessed = false;
        for (auto a : ds)
          for (auto b : ds)
            for (auto c : ds)
              if (is_subset(a.bits, b.bits) && is_subset(b.bits, c.bits) && (b.bits & ~a.bits) == xi &&
                  (c.bits & ~b.bits) == eta)
                witnessed = true;
        auto rel = convex_relation(P, ConvexSet{xi}, ConvexSet{eta});
        const bool expected = rel == ConvexRelation::Adjacent ||
                              (rel == ConvexRelation::Incomparable && P.is_convex(xi | eta));
        CHECK(expected == witnessed);
      }
    }
  }
}

TEST_CASE("cycles are rejected") {
  try {
    Poset({"p", "q"}, {{0, 1}, {1, 0}});
    FAIL("expected NotAPoset");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotAPoset);
  }
}

TEST_CASE("subsets parse and format") {
  auto P = vee();
  CHECK(P.parse_subset("a,b") == 0b011);
  CHECK(P.parse_subset("{a,c}") == 0b101);
  CHECK(P.parse_subset("") == 0);
  CHECK(P.parse_subset("{}") == 0);
  CHECK(P.format(0b011) == "{a,b}");
  CHECK(P.format(0) == "{}");
  CHECK_THROWS_AS(P.parse_subset("a,z"), Error);
  CHECK_THROWS_AS(P.down_set(0b100), Error);
}

TEST_CASE("cover relations and linear extensions") {
  auto chain3 = testing::chain_poset(3);
  auto covers = chain3.cover_relations();
  CHECK(covers == std::vector<std::pair<std::size_t, std::size_t>>{{0, 1}, {1, 2}});
  testing::Rng rng(23);
  for (int trial = 0; trial < 50; ++trial) {
    Poset P = testing::random_poset(rng, 6);
    for (std::uint64_t seed : {0ULL, 1ULL, 99ULL}) {
      auto ext = P.linear_extension(seed);
      for (std::size_t i = 0; i < ext.size(); ++i)
        for (std::size_t j = i + 1; j < ext.size(); ++j) CHECK_FALSE(P.less(ext[j], ext[i]));
    }
  }
}

TEST_CASE("element bound comes from the environment") {
  ::setenv("CEFORGE_MAX_ELEMENTS", "7", 1);
  CHECK(configured_element_bound() == 7);
  ::unsetenv("CEFORGE_MAX_ELEMENTS");
  CHECK(configured_element_bound() == kDefaultEnumerationBound);
}
