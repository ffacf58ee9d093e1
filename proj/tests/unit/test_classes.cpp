#include <doctest.h>

#include "quadrel/classes.hpp"
#include "support/oracles.hpp"

using namespace quadrel;
using namespace quadrel::classes;
namespace qb = quadrel::balance;
namespace qt = quadrel::testing;

namespace {

Relation rel(std::size_t n, std::vector<Edge> edges) {
  return Relation(Universe(n), std::move(edges));
}

Relation three_cycle() { return rel(3, {{0, 1}, {1, 2}, {2, 0}}); }

bool is_equivalence(const Relation& r) {
  return check_basic(r, BasicProperty::reflexive).holds &&
         check_basic(r, BasicProperty::symmetric).holds &&
         check_basic(r, BasicProperty::transitive).holds;
}

}  // namespace

TEST_CASE("targeting classes") {
  CHECK(targeting_class(three_cycle(), 0).to_indices() ==
        std::vector<std::size_t>{1});
  CHECK(targeting_class(rel(3, {}), 1).none());
  Relation id(Universe(3), {{0, 0}, {1, 1}, {2, 2}});
  CHECK(targeting_class(id, 2).to_indices() == std::vector<std::size_t>{2});
  CHECK_THROWS_AS(targeting_class(id, 5), IndexOutOfRange);
}

TEST_CASE("equi-targeting relations are equivalences") {
  for (std::uint64_t mask = 0; mask < qt::mask_count(3); ++mask) {
    Relation r = qt::relation_from_mask(3, mask);
    Relation l = equi_relation(r, CoalitionSide::left);
    Relation rr = equi_relation(r, CoalitionSide::right);
    REQUIRE(is_equivalence(l));
    REQUIRE(is_equivalence(rr));
    if (check_basic(r, BasicProperty::symmetric).holds) REQUIRE(l == rr);
    REQUIRE(rr == equi_relation(r.inverse(), CoalitionSide::left));
  }
}

TEST_CASE("collusion partition of the three-cycle") {
  Partition p = collusion_partition(three_cycle());
  Partition expected;
  expected.blocks = {{0}, {1}, {2}};
  CHECK(p == expected);
}

TEST_CASE("collusion partition of a bidirected complete bipartite relation") {
  Relation r = rel(3, {{0, 2}, {1, 2}, {2, 0}, {2, 1}});
  Partition p = collusion_partition(r);
  Partition expected;
  expected.blocks = {{0, 1}, {2}};
  CHECK(p == expected);

  Relation swap = rel(2, {{0, 1}, {1, 0}});
  Partition q = collusion_partition(swap);
  Partition expected2;
  expected2.blocks = {{0}, {1}};
  CHECK(q == expected2);
}

TEST_CASE("collusion partition names the failing property") {
  CHECK_THROWS_WITH_AS(collusion_partition(rel(2, {{0, 0}, {0, 1}, {1, 0}, {1, 1}})),
                       doctest::Contains("irreflexive"),
                       NotAnIrreflexiveCollusion);
  CHECK_THROWS_WITH_AS(collusion_partition(rel(5, {{0, 1}, {1, 2}})),
                       doctest::Contains("total"), NotAnIrreflexiveCollusion);
  CHECK_THROWS_WITH_AS(collusion_partition(rel(4, {{0, 2}, {1, 2}, {1, 3}, {2, 0}, {3, 0}})),
                       doctest::Contains("collusive"),
                       NotAnIrreflexiveCollusion);
}

TEST_CASE("partition blocks carry no internal attacks") {
  auto verify = [](const Relation& r) {
    Partition p = collusion_partition(r);
    auto owner = p.block_of(r.size());
    // Blocks are exactly the distinct out-neighborhoods.
    for (std::size_t x = 0; x < r.size(); ++x) {
      const auto& block = p.blocks[owner[r.out(x).first()]];
      REQUIRE(r.out(x).to_indices() == block);
    }
    for (const auto& block : p.blocks)
      for (std::size_t a : block)
        for (std::size_t b : block) REQUIRE(!r.has(a, b));
  };
  for (std::size_t n = 1; n <= 4; ++n)
    for (std::uint64_t mask = 0; mask < qt::mask_count(n); ++mask) {
      Relation r = qt::relation_from_mask(n, mask);
      if (check_basic(r, BasicProperty::irreflexive).holds && is_collusion(r))
        verify(r);
    }
  Rng rng(31);
  for (int i = 0; i < 200; ++i)
    if (auto r = qt::random_irreflexive_collusion(6, rng)) verify(*r);
}

TEST_CASE("induced weak frames are valid and weakly balanced") {
  // Three-cycle: identity positive relation, three singleton blocks.
  auto f = induced_weak_frame(three_cycle(), CoalitionSide::left, false);
  auto d = qb::validate_frame(f);
  CHECK(d.valid);
  CHECK(!d.ssf);
  CHECK(f.rplus == Relation(Universe(3), {{0, 0}, {1, 1}, {2, 2}}));
  auto wp = qb::weak_balance_partition(f);
  REQUIRE(wp.has_value());
  CHECK(wp->blocks.size() == 3);

  // Symmetric two-element collusion.
  auto g = induced_weak_frame(rel(2, {{0, 1}, {1, 0}}), CoalitionSide::right,
                              false);
  CHECK(qb::validate_frame(g).ssf);
  CHECK(qb::weak_balance_partition(g).has_value());

  // Symmetrized three-cycle becomes an s.s.f.
  auto h = induced_weak_frame(three_cycle(), CoalitionSide::left, true);
  auto dh = qb::validate_frame(h);
  CHECK(dh.valid);
  CHECK(dh.ssf);
  CHECK(qb::weak_balance_partition(h).has_value());

  CHECK_THROWS_AS(
      induced_weak_frame(rel(2, {{0, 1}}), CoalitionSide::left, false),
      NotAnIrreflexiveCollusion);
}

TEST_CASE("induced weak frames across all small irreflexive collusions") {
  auto verify = [](const Relation& r) {
    for (auto side : {CoalitionSide::left, CoalitionSide::right})
      for (bool symmetrize : {false, true}) {
        auto f = induced_weak_frame(r, side, symmetrize);
        auto d = qb::validate_frame(f);
        REQUIRE(d.valid);
        if (symmetrize) REQUIRE(d.ssf);
        REQUIRE(qb::weak_balance_partition(f).has_value());
      }
  };
  for (std::size_t n = 2; n <= 4; ++n)
    for (std::uint64_t mask = 0; mask < qt::mask_count(n); ++mask) {
      Relation r = qt::relation_from_mask(n, mask);
      if (check_basic(r, BasicProperty::irreflexive).holds && is_collusion(r))
        verify(r);
    }
}

TEST_CASE("odd cycle detection") {
  Relation square =
      rel(4, {{0, 1}, {1, 0}, {1, 2}, {2, 1}, {2, 3}, {3, 2}, {3, 0}, {0, 3}});
  CHECK(!has_odd_cycle(square).has_odd_cycle);

  Relation triangle = rel(3, {{0, 1}, {1, 0}, {1, 2}, {2, 1}, {2, 0}, {0, 2}});
  auto check = has_odd_cycle(triangle);
  CHECK(check.has_odd_cycle);
  CHECK(check.cycle.size() == 3);

  CHECK(has_odd_cycle(rel(1, {{0, 0}})).has_odd_cycle);
  CHECK(!has_odd_cycle(rel(3, {})).has_odd_cycle);
}

TEST_CASE("odd cycle detection agrees with cycle enumeration") {
  Rng rng(37);
  for (int i = 0; i < 400; ++i) {
    Relation r = qt::random_relation(6, rng);
    REQUIRE(has_odd_cycle(r).has_odd_cycle == qt::has_odd_cycle_oracle(r));
  }
}

TEST_CASE("symmetric irreflexive collusions are bipartite-like") {
  auto verify = [](const Relation& r) {
    REQUIRE(!has_odd_cycle(r).has_odd_cycle);
    auto f = induced_strong_frame(r);
    auto census = qb::classify_triads(f);
    REQUIRE(census.all_negative == 0);
    REQUIRE(census.one_negative == 0);
    REQUIRE(qb::is_locally_balanced(f));
  };
  for (std::size_t n = 2; n <= 4; ++n)
    for (std::uint64_t mask = 0; mask < qt::mask_count(n); ++mask) {
      Relation r = qt::relation_from_mask(n, mask);
      if (check_basic(r, BasicProperty::irreflexive).holds &&
          check_basic(r, BasicProperty::symmetric).holds &&
          is_collusive_fast(r) && r.edge_count() > 0)
        verify(r);
    }
  Rng rng(41);
  for (int i = 0; i < 100; ++i)
    if (auto r = qt::random_symmetric_irreflexive_collusion(6, rng)) verify(*r);
}

TEST_CASE("induced strong frame rejects unfit relations") {
  Relation pentagon = rel(5, {{0, 1}, {1, 0}, {1, 2}, {2, 1}, {2, 3}, {3, 2},
                              {3, 4}, {4, 3}, {4, 0}, {0, 4}});
  CHECK_THROWS_WITH_AS(induced_strong_frame(pentagon),
                       doctest::Contains("collusive"), PreconditionFailed);
  CHECK_THROWS_WITH_AS(induced_strong_frame(rel(3, {{0, 1}})),
                       doctest::Contains("symmetric"), PreconditionFailed);

  // Complete bipartite between {0,1} and {2,3}.
  Relation bipartite = rel(4, {{0, 2}, {2, 0}, {0, 3}, {3, 0}, {1, 2}, {2, 1},
                               {1, 3}, {3, 1}});
  auto f = induced_strong_frame(bipartite, true);
  auto sp = qb::strong_balance_partition(f);
  REQUIRE(sp.has_value());
  CHECK(sp->first == std::vector<std::size_t>{0, 1});
  CHECK(sp->second == std::vector<std::size_t>{2, 3});

  // Not total; the strict flag rejects it, the plain call accepts.
  Relation partial = rel(3, {{0, 1}, {1, 0}});
  CHECK_THROWS_WITH_AS(induced_strong_frame(partial, true),
                       doctest::Contains("total"), PreconditionFailed);
  CHECK(qb::validate_frame(induced_strong_frame(partial)).valid);
}
