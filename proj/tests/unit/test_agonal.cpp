#include <doctest.h>

#include "quadrel/agonal.hpp"
#include "support/oracles.hpp"

using namespace quadrel;
using namespace quadrel::agonal;
namespace qt = quadrel::testing;

namespace {

Relation rel(std::size_t n, std::vector<Edge> edges) {
  return Relation(Universe(n), std::move(edges));
}

}  // namespace

TEST_CASE("attack and protection are independent notions") {
  // (i) a self-attacker protecting itself
  Relation self = rel(1, {{0, 0}});
  CHECK(self.has(0, 0));
  CHECK(protection(self).has(0, 0));

  // (ii) attack without protection
  Relation pair = rel(2, {{0, 1}});
  CHECK(pair.has(0, 1));
  CHECK(!protection(pair).has(0, 1));

  // (iii) protection without attack
  Relation chain = rel(3, {{0, 1}, {1, 2}});
  CHECK(!chain.has(0, 2));
  CHECK(protection(chain).has(0, 2));

  // (iv) neither
  Relation lone = rel(3, {{1, 2}});
  CHECK(!lone.has(0, 1));
  CHECK(!protection(lone).has(0, 2));
}

TEST_CASE("only virtual protection when the protected are unattacked") {
  Relation r = rel(2, {{0, 1}, {1, 1}});
  CHECK(protection(r) == rel(2, {{0, 0}, {1, 0}}));
  CHECK(actual_protection(r).edge_count() == 0);
  auto report = consistency_report(r);
  CHECK(report.consistent);
  CHECK(!check_basic(r, BasicProperty::irreflexive).holds);
}

TEST_CASE("actual protection strips initial targets") {
  Relation chain = rel(3, {{0, 1}, {1, 2}});
  CHECK(actual_protection(chain).has(0, 2));
  CHECK(!actual_protection(chain).has(0, 0));
  CHECK(protection(chain).has(0, 0));

  Relation empty = rel(3, {});
  CHECK(actual_protection(empty).edge_count() == 0);
}

TEST_CASE("everybody protects initial elements, nobody actually does") {
  Rng rng(21);
  for (int i = 0; i < 300; ++i) {
    Relation r = qt::random_relation(5, rng);
    Relation prot = protection(r);
    Relation actual = actual_protection(r);
    for (std::size_t z : initial_elements(r).to_indices())
      for (std::size_t x = 0; x < r.size(); ++x) {
        REQUIRE(prot.has(x, z));
        REQUIRE(!actual.has(x, z));
      }
    // Containment and the definitional scan.
    for (std::size_t x = 0; x < r.size(); ++x)
      REQUIRE(actual.out(x).subset_of(prot.out(x)));
  }
}

TEST_CASE("consistency examples") {
  auto self = consistency_report(rel(1, {{0, 0}}));
  CHECK(!self.consistent);
  CHECK(*self.violation == Edge{0, 0});

  // Not anti-transitive yet consistent: only initial elements are protected.
  Relation r = rel(4, {{0, 1}, {1, 2}, {0, 2}, {3, 2}});
  CHECK(!check_basic(r, BasicProperty::anti_transitive).holds);
  auto report = consistency_report(r);
  CHECK(report.consistent);
  Relation expected =
      rel(4, {{0, 0}, {1, 0}, {2, 0}, {3, 0}, {0, 3}, {1, 3}, {2, 3}, {3, 3}});
  CHECK(report.protection == expected);
}

TEST_CASE("surjectivity does not transfer to protection") {
  Relation r = rel(3, {{0, 2}, {1, 2}, {0, 0}, {1, 1}});
  CHECK(check_basic(r, BasicProperty::surjective).holds);
  CHECK(!check_basic(protection(r), BasicProperty::surjective).holds);
  // Element 2 is protected by no one.
  CHECK(protection(r).in(2).none());
}

TEST_CASE("fixture relations R1, R2, R3") {
  Relation r1 = rel(3, {{0, 1}, {1, 0}, {1, 2}});
  Relation p1 = protection(r1);
  CHECK(p1.has(0, 2));
  CHECK(!p1.has(2, 0));
  CHECK(!check_basic(p1, BasicProperty::symmetric).holds);

  Relation r2 = rel(5, {{0, 1}, {1, 2}, {2, 0}, {0, 4}, {3, 4}, {2, 3}});
  Relation p2 = protection(r2);
  CHECK(p2.has(0, 2));
  CHECK(p2.has(2, 4));
  CHECK(!p2.has(0, 4));
  CHECK(!check_basic(p2, BasicProperty::transitive).holds);

  Relation r3 = rel(6, {{0, 1}, {1, 2}, {3, 4}, {4, 5}, {3, 1}});
  Relation p3 = protection(r3);
  CHECK(p3.has(0, 2));
  CHECK(p3.has(3, 2));
  CHECK(p3.has(3, 5));
  CHECK(!p3.has(0, 5));
  CHECK(!is_collusive_fast(p3));
}

TEST_CASE("collusive non-surjective relation with non-collusive protection") {
  Relation r = rel(5, {{0, 1}, {1, 2}});
  CHECK(is_collusive_fast(r));
  CHECK(!check_basic(r, BasicProperty::surjective).holds);
  Relation p = protection(r);
  CHECK(p.has(0, 4));
  CHECK(p.has(3, 4));
  CHECK(p.has(0, 2));
  CHECK(!p.has(3, 2));
  CHECK(!is_collusive_fast(p));
}

TEST_CASE("protection transfer laws on all n<=3 and sampled n=5 relations") {
  auto check_laws = [](const Relation& r) {
    Relation prot = protection(r);
    bool collusive = is_collusive_fast(r);
    bool surjective = check_basic(r, BasicProperty::surjective).holds;
    bool coconfluent =
        check_quadrangular(r, QuadPattern::co_confluent()).holds;
    bool irreflexive = check_basic(r, BasicProperty::irreflexive).holds;
    auto report = consistency_report(r);

    if (collusive && surjective) REQUIRE(is_collusive_fast(prot));
    if (collusive) REQUIRE(is_collusive_fast(actual_protection(r)));
    if (coconfluent && is_collusion(r)) REQUIRE(is_collusion(prot));
    if (coconfluent) REQUIRE(report.consistent == irreflexive);
    if (check_basic(r, BasicProperty::anti_transitive).holds)
      REQUIRE(report.consistent);
    REQUIRE(check_basic(prot, BasicProperty::reflexive).holds ==
            check_basic(r, BasicProperty::symmetric).holds);
  };
  for (std::size_t n = 1; n <= 3; ++n)
    for (std::uint64_t mask = 0; mask < qt::mask_count(n); ++mask)
      check_laws(qt::relation_from_mask(n, mask));
  Rng rng(23);
  for (int i = 0; i < 500; ++i) check_laws(qt::random_relation(5, rng));
}

TEST_CASE("completeness means protection is exactly the complement") {
  // On a singleton with no attacks, 0 protects 0 and does not attack it.
  auto report = consistency_report(rel(1, {}));
  CHECK(report.consistent);
  CHECK(report.complete);

  // Here protection happens to coincide with the complement of R.
  auto exact = consistency_report(rel(2, {{0, 1}, {1, 1}}));
  CHECK(exact.consistent);
  CHECK(exact.complete);

  // 0 neither attacks nor protects 2.
  auto partial = consistency_report(rel(3, {{1, 2}}));
  CHECK(partial.consistent);
  CHECK(!partial.complete);
}
