#include "quadrel/partition.hpp"

#include <algorithm>
#include <map>

namespace quadrel {

Partition Partition::from_block_ids(const std::vector<std::size_t>& block_of) {
  std::map<std::size_t, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < block_of.size(); ++i)
    groups[block_of[i]].push_back(i);
  Partition p;
  for (auto& [id, members] : groups) p.blocks.push_back(std::move(members));
  p.normalize();
  return p;
}

std::size_t Partition::element_count() const {
  std::size_t c = 0;
  for (const auto& b : blocks) c += b.size();
  return c;
}

std::vector<std::size_t> Partition::block_of(std::size_t n) const {
  std::vector<std::size_t> owner(n, n);
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    if (blocks[b].empty()) throw Error("partition has an empty block");
    for (std::size_t e : blocks[b]) {
      if (e >= n) throw Error("partition element outside universe");
      if (owner[e] != n) throw Error("partition blocks overlap");
      owner[e] = b;
    }
  }
  for (std::size_t e = 0; e < n; ++e)
    if (owner[e] == n) throw Error("partition does not cover the universe");
  return owner;
}

void Partition::normalize() {
  for (auto& b : blocks) std::sort(b.begin(), b.end());
  std::sort(blocks.begin(), blocks.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
}

}  // namespace quadrel
