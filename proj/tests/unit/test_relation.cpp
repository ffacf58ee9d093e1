#include <doctest.h>

#include <array>
#include <set>

#include "quadrel/relation.hpp"
#include "support/oracles.hpp"

using namespace quadrel;
namespace qt = quadrel::testing;

TEST_CASE("construction collapses duplicates and validates indices") {
  Relation r(Universe(2), {{0, 1}, {0, 1}});
  CHECK(r.edge_count() == 1);
  CHECK(r.has(0, 1));
  CHECK(!r.has(1, 0));
  CHECK_THROWS_AS(Relation(Universe(2), {{0, 2}}), IndexOutOfRange);
  CHECK_THROWS_AS(Universe(0), Error);
  CHECK_THROWS_AS(Universe(2, {"a", "a"}), Error);
}

TEST_CASE("self loop on a singleton universe") {
  Relation r(Universe(1), {{0, 0}});
  CHECK(r.has(0, 0));
  CHECK(check_basic(r, BasicProperty::reflexive).holds);
  CHECK(is_collusion(r));
}

TEST_CASE("three-cycle") {
  Relation r(Universe(3), {{0, 1}, {1, 2}, {2, 0}});
  CHECK(r.edge_count() == 3);
  CHECK(check_quadrangular(r, QuadPattern::collusive()).holds);
  CHECK(is_collusion(r));
  CHECK(check_basic(r, BasicProperty::irreflexive).holds);
}

TEST_CASE("inverse") {
  Relation r(Universe(2), {{0, 1}});
  CHECK(r.inverse() == Relation(Universe(2), {{1, 0}}));

  Relation sym(Universe(3), {{0, 1}, {1, 0}});
  CHECK(sym.inverse() == sym);

  Relation cyc(Universe(3), {{0, 1}, {1, 2}, {2, 0}});
  CHECK(cyc.inverse() == Relation(Universe(3), {{1, 0}, {2, 1}, {0, 2}}));
  CHECK(cyc.inverse().inverse() == cyc);
}

TEST_CASE("basic property checks with witnesses") {
  // 1-indexed {(1,2),(2,3),(1,3)} as 0-indexed.
  Relation r(Universe(3), {{0, 1}, {1, 2}, {0, 2}});
  CHECK(check_basic(r, BasicProperty::irreflexive).holds);
  auto at = check_basic(r, BasicProperty::anti_transitive);
  CHECK(!at.holds);
  CHECK(at.witness == std::vector<std::size_t>{0, 1, 2});
  CHECK(check_basic(r, BasicProperty::transitive).holds);

  Relation empty(Universe(3), {});
  CHECK(check_basic(empty, BasicProperty::symmetric).holds);
  CHECK(check_basic(empty, BasicProperty::anti_transitive).holds);
  CHECK(!check_basic(empty, BasicProperty::total).holds);
  CHECK(!check_basic(empty, BasicProperty::surjective).holds);
  CHECK(is_collusive_fast(empty));
}

TEST_CASE("initial elements") {
  // {(2,3)} over a 1-indexed four-element universe.
  Relation r(Universe(4), {{1, 2}});
  CHECK(initial_elements(r).to_indices() ==
        std::vector<std::size_t>{0, 1, 3});
  Relation empty(Universe(3), {});
  CHECK(initial_elements(empty).count() == 3);
  Relation cyc(Universe(3), {{0, 1}, {1, 2}, {2, 0}});
  CHECK(initial_elements(cyc).none());
}

TEST_CASE("pattern names round-trip and canonicalization folds 16 to 8") {
  for (int k = 1; k <= 8; ++k) {
    QuadPattern p = QuadPattern::by_index(k);
    auto back = QuadPattern::by_name(p.name());
    REQUIRE(back.has_value());
    CHECK(*back == p);
  }
  std::set<std::array<bool, 4>> canon;
  for (int bits = 0; bits < 16; ++bits) {
    QuadPattern p(bits & 1, bits & 2, bits & 4, bits & 8);
    canon.insert(p.canonical().reversed());
  }
  CHECK(canon.size() == 8);
  CHECK(QuadPattern::by_name("confluent") == QuadPattern::by_index(1));
  CHECK(QuadPattern::by_name("protective") == QuadPattern::by_index(2));
  CHECK(QuadPattern::by_name("collusive") == QuadPattern::by_index(3));
}

TEST_CASE("a reversed-first-atom pattern agrees with its canonical form") {
  Rng rng(7);
  for (int bits = 0; bits < 16; ++bits) {
    QuadPattern p(bits & 1, bits & 2, bits & 4, bits & 8);
    for (int i = 0; i < 40; ++i) {
      Relation r = qt::random_relation(4, rng);
      CHECK(check_quadrangular(r, p).holds ==
            check_quadrangular(r, p.canonical()).holds);
    }
  }
}

TEST_CASE("fast checkers match the quantifier sweep on all n<=3 relations") {
  for (std::size_t n = 1; n <= 3; ++n) {
    for (std::uint64_t mask = 0; mask < qt::mask_count(n); ++mask) {
      Relation r = qt::relation_from_mask(n, mask);
      for (int k = 1; k <= 8; ++k) {
        QuadPattern p = QuadPattern::by_index(k);
        auto fast = check_quadrangular(r, p);
        auto naive = qt::naive_quadrangular(r, p);
        REQUIRE(fast.holds == naive.holds);
        if (!fast.holds) REQUIRE(*fast.witness == *naive.witness);
      }
      REQUIRE(is_collusive_fast(r) ==
              qt::naive_quadrangular(r, QuadPattern::collusive()).holds);
    }
  }
}

TEST_CASE("fast checkers match the sweep on random n=5,6 relations") {
  Rng rng(11);
  for (std::size_t n : {5u, 6u}) {
    for (int i = 0; i < 200; ++i) {
      Relation r = qt::random_relation(n, rng);
      for (int k = 1; k <= 8; ++k) {
        QuadPattern p = QuadPattern::by_index(k);
        auto fast = check_quadrangular(r, p);
        auto naive = qt::naive_quadrangular(r, p);
        REQUIRE(fast.holds == naive.holds);
        if (!fast.holds) REQUIRE(*fast.witness == *naive.witness);
      }
      REQUIRE(is_collusive_fast(r) ==
              check_quadrangular(r, QuadPattern::collusive()).holds);
    }
  }
}

TEST_CASE("collusivity is closed under inversion and shared-target swap") {
  for (std::uint64_t mask = 0; mask < qt::mask_count(3); ++mask) {
    Relation r = qt::relation_from_mask(3, mask);
    REQUIRE(r.inverse().inverse() == r);
    if (is_collusive_fast(r)) REQUIRE(is_collusive_fast(r.inverse()));
    if (check_basic(r, BasicProperty::anti_transitive).holds)
      REQUIRE(check_basic(r, BasicProperty::irreflexive).holds);
  }
  Rng rng(13);
  for (int i = 0; i < 300; ++i) {
    Relation r = qt::random_relation(5, rng);
    if (is_collusive_fast(r)) REQUIRE(is_collusive_fast(r.inverse()));
  }
}

TEST_CASE("collusion requires totality and surjectivity") {
  Relation chain(Universe(5), {{0, 1}, {1, 2}});
  CHECK(is_collusive_fast(chain));
  CHECK(!is_collusion(chain));
  CHECK(collusion_defect(chain) == "total");

  // Every equivalence relation is a collusion.
  Relation eq(Universe(4), {{0, 0}, {1, 1}, {2, 2}, {3, 3}, {0, 1}, {1, 0}});
  CHECK(is_collusion(eq));

  Relation shared(Universe(4), {{0, 2}, {1, 2}, {1, 3}});
  CHECK(!is_collusive_fast(shared));
  auto q3 = check_quadrangular(shared, QuadPattern::collusive());
  CHECK(!q3.holds);
  // 0 and 1 share target 2 but only 1 reaches 3.
  CHECK(*q3.witness == QuadWitness{1, 2, 3, 0});
}

TEST_CASE("vacuous patterns on the empty relation") {
  Relation empty(Universe(4), {});
  for (int k = 1; k <= 8; ++k)
    CHECK(check_quadrangular(empty, QuadPattern::by_index(k)).holds);
}
