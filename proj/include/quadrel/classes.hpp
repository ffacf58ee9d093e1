#pragma once

#include "quadrel/balance.hpp"
#include "quadrel/partition.hpp"
#include "quadrel/relation.hpp"

namespace quadrel::classes {

/// left: equi-targeted (same attackers); right: equi-targeters (same
/// targets).
enum class CoalitionSide { left, right };

/// The targeting class of x: its out-neighborhood.
Bitset targeting_class(const Relation& r, std::size_t x);

/// The equivalence relating elements with equal in-neighborhoods (left) or
/// equal out-neighborhoods (right).
Relation equi_relation(const Relation& r, CoalitionSide side);

/// For an irreflexive collusion, the distinct targeting classes partition
/// the universe and no block contains an attack. Throws
/// NotAnIrreflexiveCollusion naming the failing property otherwise.
Partition collusion_partition(const Relation& r);

/// Signed frame with the chosen equi-targeting equivalence as positive
/// relation and r (or r union r-inverse, when symmetrize is set) as
/// negative relation. Requires an irreflexive collusion.
balance::SignedFrame induced_weak_frame(const Relation& r, CoalitionSide side,
                                        bool symmetrize);

/// Signed frame over a symmetric irreflexive collusive relation, with the
/// (coinciding) equi-targeting equivalence as positive side. When strict is
/// set, totality and surjectivity are required as well.
balance::SignedFrame induced_strong_frame(const Relation& r,
                                          bool strict = false);

struct OddCycleCheck {
  bool has_odd_cycle;
  /// An odd closed walk with distinct vertices (closing edge implied).
  std::vector<std::size_t> cycle;
};

/// Treats edges as undirected (symmetric closure) and decides bipartiteness
/// by 2-coloring; the witness cycle is recovered from the search tree.
OddCycleCheck has_odd_cycle(const Relation& r);

}  // namespace quadrel::classes
