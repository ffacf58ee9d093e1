#include "quadrel/classes.hpp"

#include <algorithm>
#include <map>

namespace quadrel::classes {

Bitset targeting_class(const Relation& r, std::size_t x) {
  if (x >= r.size()) throw IndexOutOfRange("element outside universe");
  return r.out(x);
}

Relation equi_relation(const Relation& r, CoalitionSide side) {
  const std::size_t n = r.size();
  std::vector<Edge> edges;
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      bool eq = side == CoalitionSide::left ? r.in(x) == r.in(y)
                                            : r.out(x) == r.out(y);
      if (eq) edges.emplace_back(x, y);
    }
  return Relation(r.universe(), edges);
}

namespace {

void require_irreflexive_collusion(const Relation& r) {
  if (auto c = check_basic(r, BasicProperty::irreflexive); !c.holds)
    throw NotAnIrreflexiveCollusion("irreflexive");
  if (auto defect = collusion_defect(r))
    throw NotAnIrreflexiveCollusion(*defect);
}

}  // namespace

Partition collusion_partition(const Relation& r) {
  require_irreflexive_collusion(r);
  const std::size_t n = r.size();
  std::map<Bitset, std::vector<std::size_t>> classes;
  for (std::size_t x = 0; x < n; ++x) classes.try_emplace(r.out(x));
  Partition p;
  for (const auto& [targets, _] : classes) p.blocks.push_back(targets.to_indices());
  p.normalize();
  // Totality and surjectivity make the distinct classes cover the universe;
  // block_of re-checks disjointness.
  (void)p.block_of(n);
  return p;
}

balance::SignedFrame induced_weak_frame(const Relation& r, CoalitionSide side,
                                        bool symmetrize) {
  require_irreflexive_collusion(r);
  Relation plus = equi_relation(r, side);
  if (!symmetrize) return balance::SignedFrame(r.universe(), plus, r);
  std::vector<Edge> minus = r.edges();
  for (const auto& [x, y] : r.inverse().edges()) minus.emplace_back(x, y);
  return balance::SignedFrame(r.universe(), plus, Relation(r.universe(), minus));
}

balance::SignedFrame induced_strong_frame(const Relation& r, bool strict) {
  if (auto c = check_basic(r, BasicProperty::symmetric); !c.holds)
    throw PreconditionFailed("symmetric", "relation is not symmetric");
  if (auto c = check_basic(r, BasicProperty::irreflexive); !c.holds)
    throw PreconditionFailed("irreflexive", "relation is not irreflexive");
  if (!is_collusive_fast(r))
    throw PreconditionFailed("collusive", "relation is not collusive");
  if (strict) {
    if (auto defect = collusion_defect(r))
      throw PreconditionFailed(*defect, "relation is not a collusion: not " + *defect);
  }
  // For a symmetric relation the two equi-targeting equivalences coincide.
  return balance::SignedFrame(r.universe(),
                              equi_relation(r, CoalitionSide::left), r);
}

OddCycleCheck has_odd_cycle(const Relation& r) {
  const std::size_t n = r.size();
  // Self loops are odd closed walks of length one.
  for (std::size_t x = 0; x < n; ++x)
    if (r.has(x, x)) return {true, {x}};

  std::vector<int> color(n, -1);
  std::vector<std::size_t> parent(n);
  auto adjacent = [&](std::size_t x, std::size_t y) {
    return r.has(x, y) || r.has(y, x);
  };
  for (std::size_t s = 0; s < n; ++s) {
    if (color[s] >= 0) continue;
    color[s] = 0;
    parent[s] = s;
    std::vector<std::size_t> queue{s};
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      std::size_t u = queue[qi];
      for (std::size_t v = 0; v < n; ++v) {
        if (v == u || !adjacent(u, v)) continue;
        if (color[v] < 0) {
          color[v] = 1 - color[u];
          parent[v] = u;
          queue.push_back(v);
        } else if (color[v] == color[u]) {
          // Odd cycle through the BFS tree.
          std::vector<std::size_t> up;
          for (std::size_t a = u;; a = parent[a]) {
            up.push_back(a);
            if (parent[a] == a) break;
          }
          std::vector<std::size_t> down;
          std::size_t meet = 0;
          for (std::size_t b = v;; b = parent[b]) {
            auto it = std::find(up.begin(), up.end(), b);
            if (it != up.end()) {
              meet = static_cast<std::size_t>(it - up.begin());
              break;
            }
            down.push_back(b);
            if (parent[b] == b) break;
          }
          std::vector<std::size_t> cycle(up.begin(), up.begin() + meet + 1);
          std::reverse(down.begin(), down.end());
          cycle.insert(cycle.end(), down.begin(), down.end());
          return {true, cycle};
        }
      }
    }
  }
  return {false, {}};
}

}  // namespace quadrel::classes
