#pragma once

// Slow reference implementations tests check the library against. These
// stay deliberately independent of the bitset fast paths.

#include <cstdint>
#include <optional>
#include <vector>

#include "quadrel/balance.hpp"
#include "quadrel/partition.hpp"
#include "quadrel/relation.hpp"
#include "quadrel/rng.hpp"

namespace quadrel::testing {

/// Literal four-variable quantifier sweep; returns the lexicographically
/// least falsifying quadruple.
inline QuadCheck naive_quadrangular(const Relation& r, QuadPattern pattern) {
  const auto rev = pattern.reversed();
  auto atom = [&](std::size_t a, std::size_t b, bool reversed) {
    return reversed ? r.has(b, a) : r.has(a, b);
  };
  const std::size_t n = r.size();
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z)
        for (std::size_t w = 0; w < n; ++w)
          if (atom(x, y, rev[0]) && atom(x, z, rev[1]) && atom(y, w, rev[2]) &&
              !atom(z, w, rev[3]))
            return {false, QuadWitness{x, y, z, w}};
  return {true, std::nullopt};
}

/// Relation whose edge set is given by the bits of `mask`, row-major over
/// all n*n cells.
inline Relation relation_from_mask(std::size_t n, std::uint64_t mask) {
  std::vector<Edge> edges;
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      if ((mask >> (x * n + y)) & 1) edges.emplace_back(x, y);
  return Relation(Universe(n), edges);
}

inline std::uint64_t mask_count(std::size_t n) {
  return std::uint64_t{1} << (n * n);
}

inline Relation random_relation(std::size_t n, Rng& rng,
                                std::uint64_t denominator = 3) {
  std::vector<Edge> edges;
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      if (rng.below(denominator) == 0) edges.emplace_back(x, y);
  return Relation(Universe(n), edges);
}

/// Random irreflexive collusion: a partition into target blocks plus an
/// onto choice of target block per element avoiding the element's own
/// block.
inline std::optional<Relation> random_irreflexive_collusion(std::size_t n,
                                                            Rng& rng) {
  if (n < 2) return std::nullopt;
  for (int attempt = 0; attempt < 64; ++attempt) {
    std::size_t k = 2 + rng.below(n - 1);  // at least two blocks
    std::vector<std::size_t> block(n);
    for (auto& b : block) b = rng.below(k);
    std::vector<bool> used(k, false);
    for (auto b : block) used[b] = true;
    bool all_used = true;
    for (bool u : used) all_used &= u;
    if (!all_used) continue;
    // Target choice: onto, and never the element's own block.
    std::vector<std::size_t> choice(n);
    for (std::size_t x = 0; x < n; ++x) {
      choice[x] = rng.below(k);
      if (choice[x] == block[x]) choice[x] = (choice[x] + 1) % k;
    }
    std::vector<bool> hit(k, false);
    for (auto c : choice) hit[c] = true;
    bool onto = true;
    for (bool h : hit) onto &= h;
    if (!onto) continue;
    std::vector<Edge> edges;
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y)
        if (block[y] == choice[x]) edges.emplace_back(x, y);
    return Relation(Universe(n), edges);
  }
  return std::nullopt;
}

/// Random symmetric irreflexive collusion: an even number of blocks paired
/// off, each pair fully connected in both directions.
inline std::optional<Relation> random_symmetric_irreflexive_collusion(
    std::size_t n, Rng& rng) {
  if (n < 2) return std::nullopt;
  std::size_t pairs = 1 + rng.below(n / 2);
  std::vector<std::size_t> block(n);
  for (int attempt = 0; attempt < 64; ++attempt) {
    for (auto& b : block) b = rng.below(2 * pairs);
    std::vector<bool> used(2 * pairs, false);
    for (auto b : block) used[b] = true;
    bool all_used = true;
    for (bool u : used) all_used &= u;
    if (!all_used) continue;
    std::vector<Edge> edges;
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y)
        if (block[y] == (block[x] ^ 1)) edges.emplace_back(x, y);
    return Relation(Universe(n), edges);
  }
  return std::nullopt;
}

/// Any odd simple cycle in the symmetric closure, by DFS enumeration of all
/// simple cycles (n <= 8).
inline bool has_odd_cycle_oracle(const Relation& r) {
  const std::size_t n = r.size();
  for (std::size_t x = 0; x < n; ++x)
    if (r.has(x, x)) return true;
  auto adjacent = [&](std::size_t a, std::size_t b) {
    return a != b && (r.has(a, b) || r.has(b, a));
  };
  std::vector<std::size_t> path;
  std::vector<bool> on_path(n, false);
  auto dfs = [&](auto&& self, std::size_t start, std::size_t u) -> bool {
    for (std::size_t v = 0; v < n; ++v) {
      if (!adjacent(u, v)) continue;
      if (v == start && path.size() >= 3 && path[1] < path.back() &&
          path.size() % 2 == 1)
        return true;
      if (v <= start || on_path[v]) continue;
      path.push_back(v);
      on_path[v] = true;
      bool found = self(self, start, v);
      on_path[v] = false;
      path.pop_back();
      if (found) return true;
    }
    return false;
  };
  for (std::size_t s = 0; s < n; ++s) {
    path = {s};
    on_path.assign(n, false);
    on_path[s] = true;
    if (dfs(dfs, s, s)) return true;
  }
  return false;
}

/// Frame whose positive pairs are intra-block and negative pairs
/// cross-block: collectively connected and balanced (weakly for more than
/// two blocks) by construction.
inline balance::SignedFrame planted_frame(std::size_t n,
                                          const std::vector<std::size_t>& block) {
  Universe u(n);
  std::vector<Edge> plus, minus;
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      (block[x] == block[y] ? plus : minus).emplace_back(x, y);
  return balance::SignedFrame(u, Relation(u, plus), Relation(u, minus));
}

inline std::vector<std::size_t> random_blocks(std::size_t n, std::size_t k,
                                              Rng& rng) {
  std::vector<std::size_t> block(n);
  for (auto& b : block) b = rng.below(k);
  return block;
}

/// Collectively connected s.s.f. with a uniformly random sign per pair.
inline balance::SignedFrame uniform_cc_ssf(std::size_t n, Rng& rng) {
  Universe u(n);
  std::vector<Edge> plus, minus;
  for (std::size_t x = 0; x < n; ++x) plus.emplace_back(x, x);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = x + 1; y < n; ++y) {
      auto& side = rng.coin() ? plus : minus;
      side.emplace_back(x, y);
      side.emplace_back(y, x);
    }
  return balance::SignedFrame(u, Relation(u, plus), Relation(u, minus));
}

/// Flips the sign of one random off-diagonal pair; for n >= 3 this breaks
/// strong balance of a planted frame (every triangle through the pair
/// changes parity).
inline balance::SignedFrame flip_one_pair(const balance::SignedFrame& f,
                                          Rng& rng) {
  const std::size_t n = f.universe.size();
  std::size_t x = rng.below(n), y = rng.below(n);
  while (y == x) y = rng.below(n);
  std::vector<Edge> plus, minus;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      bool flip = (a == x && b == y) || (a == y && b == x);
      bool was_plus = f.rplus.has(a, b);
      bool was_minus = f.rminus.has(a, b);
      if (flip ? was_minus : was_plus) plus.emplace_back(a, b);
      if (flip ? was_plus : was_minus) minus.emplace_back(a, b);
    }
  return balance::SignedFrame(f.universe, Relation(f.universe, plus),
                              Relation(f.universe, minus));
}

}  // namespace quadrel::testing
