#pragma once

#include <cstddef>
#include <vector>

#include "quadrel/bitset.hpp"
#include "quadrel/errors.hpp"

namespace quadrel {

/// Disjoint nonempty blocks covering 0..n-1. Blocks are kept sorted by
/// their least element, elements ascending within a block.
struct Partition {
  std::vector<std::vector<std::size_t>> blocks;

  static Partition from_block_ids(const std::vector<std::size_t>& block_of);

  std::size_t element_count() const;
  /// Block index of each element; throws if the blocks do not cover 0..n-1
  /// disjointly.
  std::vector<std::size_t> block_of(std::size_t n) const;
  void normalize();

  bool operator==(const Partition& o) const { return blocks == o.blocks; }
};

}  // namespace quadrel
