#include "quadrel/balance.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "quadrel/rng.hpp"

namespace quadrel::balance {

SignedFrame::SignedFrame(Universe u, Relation plus, Relation minus)
    : universe(std::move(u)), rplus(std::move(plus)), rminus(std::move(minus)) {
  if (rplus.size() != universe.size() || rminus.size() != universe.size())
    throw Error("signed frame relations must share the universe");
}

FrameDiagnostics validate_frame(const SignedFrame& f) {
  FrameDiagnostics d{true, {}, true, true};
  const std::size_t n = f.universe.size();
  if (auto c = check_basic(f.rplus, BasicProperty::reflexive); !c.holds) {
    d.violations.push_back({"plus-reflexive", c.witness});
  }
  if (auto c = check_basic(f.rplus, BasicProperty::symmetric); !c.holds) {
    d.violations.push_back({"plus-symmetric", c.witness});
  }
  for (std::size_t x = 0; x < n; ++x) {
    Bitset both = f.rplus.out(x) & f.rminus.out(x);
    if (both.any()) {
      d.violations.push_back({"non-overlapping", {x, both.first()}});
      break;
    }
  }
  d.valid = d.violations.empty();
  d.ssf = check_basic(f.rminus, BasicProperty::symmetric).holds;
  for (std::size_t x = 0; x < n && d.cc; ++x)
    if ((f.rplus.out(x) | f.rminus.out(x)).count() != n) d.cc = false;
  return d;
}

namespace {

void require_valid(const SignedFrame& f) {
  auto d = validate_frame(f);
  if (!d.valid)
    throw InvalidFrame("frame violates axiom " + d.violations.front().axiom);
}

// Sign of an unordered pair in a valid frame: +1 positive, -1 negative,
// 0 unrelated. Validity rules out a pair carrying both signs.
int pair_sign(const SignedFrame& f, std::size_t x, std::size_t y) {
  if (f.rplus.has(x, y) || f.rplus.has(y, x)) return 1;
  if (f.rminus.has(x, y) || f.rminus.has(y, x)) return -1;
  return 0;
}

}  // namespace

TriadCensus classify_triads(const SignedFrame& f) {
  require_valid(f);
  TriadCensus c;
  const std::size_t n = f.universe.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k) {
        int a = pair_sign(f, i, j), b = pair_sign(f, j, k),
            d = pair_sign(f, i, k);
        if (a == 0 || b == 0 || d == 0) {
          ++c.open;
          continue;
        }
        switch ((a < 0) + (b < 0) + (d < 0)) {
          case 0: ++c.all_positive; break;
          case 1: ++c.one_negative; break;
          case 2: ++c.one_positive; break;
          default: ++c.all_negative; break;
        }
      }
  return c;
}

bool is_locally_balanced(const SignedFrame& f) {
  require_valid(f);
  const std::size_t n = f.universe.size();
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z) {
        bool pp = f.rplus.has(x, y) && f.rplus.has(y, z);
        bool mm = f.rminus.has(x, y) && f.rminus.has(y, z);
        if ((pp || mm) && !f.rplus.has(x, z)) return false;
        bool pm = f.rplus.has(x, y) && f.rminus.has(y, z);
        bool mp = f.rminus.has(x, y) && f.rplus.has(y, z);
        if ((pm || mp) && !f.rminus.has(x, z)) return false;
      }
  return true;
}

bool is_locally_weak_balanced(const SignedFrame& f) {
  require_valid(f);
  const std::size_t n = f.universe.size();
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z) {
        if (f.rplus.has(x, y) && f.rplus.has(y, z) && !f.rplus.has(x, z))
          return false;
        bool pm = f.rplus.has(x, y) && f.rminus.has(y, z);
        bool mp = f.rminus.has(x, y) && f.rplus.has(y, z);
        if ((pm || mp) && !f.rminus.has(x, z)) return false;
      }
  return true;
}

namespace {

// Union-find with parity relative to the root.
struct ParityDsu {
  std::vector<std::size_t> parent;
  std::vector<unsigned char> parity;  // vs parent

  explicit ParityDsu(std::size_t n) : parent(n), parity(n, 0) {
    std::iota(parent.begin(), parent.end(), std::size_t{0});
  }

  std::pair<std::size_t, unsigned char> find(std::size_t x) {
    unsigned char p = 0;
    while (parent[x] != x) {
      p ^= parity[x];
      x = parent[x];
    }
    return {x, p};
  }

  // Returns false on parity conflict.
  bool merge(std::size_t a, std::size_t b, unsigned char rel) {
    auto [ra, pa] = find(a);
    auto [rb, pb] = find(b);
    if (ra == rb) return (pa ^ pb) == rel;
    parent[rb] = ra;
    parity[rb] = pa ^ pb ^ rel;
    return true;
  }
};

}  // namespace

std::optional<Bipartition> strong_balance_partition(const SignedFrame& f) {
  require_valid(f);
  auto d = validate_frame(f);
  if (!d.ssf) throw NotSSF("strong balance requires a symmetric negative relation");
  const std::size_t n = f.universe.size();
  ParityDsu dsu(n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = x + 1; y < n; ++y) {
      if (f.rplus.has(x, y) && !dsu.merge(x, y, 0)) return std::nullopt;
      if (f.rminus.has(x, y) && !dsu.merge(x, y, 1)) return std::nullopt;
    }
  // Anchor each component at its least element, which lands in the first
  // block; the split is then deterministic.
  std::vector<int> anchor_parity(n, -1);
  Bipartition bp;
  for (std::size_t x = 0; x < n; ++x) {
    auto [root, p] = dsu.find(x);
    if (anchor_parity[root] < 0) anchor_parity[root] = p;
    if (p == anchor_parity[root])
      bp.first.push_back(x);
    else
      bp.second.push_back(x);
  }
  return bp;
}

std::optional<Partition> weak_balance_partition(const SignedFrame& f) {
  require_valid(f);
  const std::size_t n = f.universe.size();
  ParityDsu dsu(n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = x + 1; y < n; ++y)
      if (f.rplus.has(x, y)) dsu.merge(x, y, 0);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      if (f.rminus.has(x, y) && dsu.find(x).first == dsu.find(y).first)
        return std::nullopt;
  std::vector<std::size_t> block_of(n);
  for (std::size_t x = 0; x < n; ++x) block_of[x] = dsu.find(x).first;
  return Partition::from_block_ids(block_of);
}

namespace {

struct SignedEdge {
  std::size_t to;
  bool negative;
};

// Adjacency over distinct-element pairs; self loops are never part of a
// simple cycle.
std::vector<std::vector<SignedEdge>> signed_adjacency(const SignedFrame& f) {
  const std::size_t n = f.universe.size();
  std::vector<std::vector<SignedEdge>> adj(n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = x + 1; y < n; ++y) {
      int s = pair_sign(f, x, y);
      if (s == 0) continue;
      adj[x].push_back({y, s < 0});
      adj[y].push_back({x, s < 0});
    }
  return adj;
}

// BFS tree path witness: walks parent pointers from u and v to their common
// ancestor and returns the cycle u .. lca .. v.
std::vector<std::size_t> tree_cycle(const std::vector<std::size_t>& parent,
                                    std::size_t u, std::size_t v) {
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
  return cycle;
}

CycleCriterion cycle_fast(const SignedFrame& f, BalanceMode mode) {
  const std::size_t n = f.universe.size();
  auto adj = signed_adjacency(f);
  if (mode == BalanceMode::strong) {
    // Potentials exist iff all cycles have even negative weight.
    std::vector<int> pot(n, -1);
    std::vector<std::size_t> parent(n);
    for (std::size_t s = 0; s < n; ++s) {
      if (pot[s] >= 0) continue;
      pot[s] = 0;
      parent[s] = s;
      std::vector<std::size_t> queue{s};
      for (std::size_t qi = 0; qi < queue.size(); ++qi) {
        std::size_t u = queue[qi];
        for (const auto& e : adj[u]) {
          int want = pot[u] ^ (e.negative ? 1 : 0);
          if (pot[e.to] < 0) {
            pot[e.to] = want;
            parent[e.to] = u;
            queue.push_back(e.to);
          } else if (pot[e.to] != want) {
            return {false, tree_cycle(parent, u, e.to)};
          }
        }
      }
    }
    return {true, {}};
  }
  // Weak: a violating cycle is a negative pair joined by a positive path.
  std::vector<std::size_t> comp(n, n), parent(n);
  for (std::size_t s = 0; s < n; ++s) {
    if (comp[s] != n) continue;
    comp[s] = s;
    parent[s] = s;
    std::vector<std::size_t> queue{s};
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      std::size_t u = queue[qi];
      for (const auto& e : adj[u]) {
        if (e.negative || comp[e.to] != n) continue;
        comp[e.to] = s;
        parent[e.to] = u;
        queue.push_back(e.to);
      }
    }
  }
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = x + 1; y < n; ++y)
      if (pair_sign(f, x, y) < 0 && comp[x] == comp[y])
        return {false, tree_cycle(parent, x, y)};
  return {true, {}};
}

CycleCriterion cycle_bruteforce(const SignedFrame& f, BalanceMode mode) {
  const std::size_t n = f.universe.size();
  if (n > 9)
    throw TooLargeForBruteForce(
        "simple-cycle enumeration is limited to 9 elements");
  auto adj = signed_adjacency(f);
  std::vector<std::size_t> path;
  std::vector<bool> on_path(n, false);
  std::vector<std::size_t> violating;

  // Canonical enumeration: cycles start at their least vertex and are
  // traversed with second vertex < last vertex.
  auto dfs = [&](auto&& self, std::size_t start, std::size_t u,
                 std::size_t negatives) -> bool {
    for (const auto& e : adj[u]) {
      std::size_t v = e.to;
      std::size_t neg2 = negatives + (e.negative ? 1 : 0);
      if (v == start && path.size() >= 3) {
        if (path[1] < path.back()) {
          bool bad = (mode == BalanceMode::strong) ? (neg2 % 2 == 1)
                                                   : (neg2 == 1);
          if (bad) {
            violating = path;
            return true;
          }
        }
        continue;
      }
      if (v <= start || on_path[v]) continue;
      path.push_back(v);
      on_path[v] = true;
      bool found = self(self, start, v, neg2);
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
    if (dfs(dfs, s, s, 0)) return {false, violating};
  }
  return {true, {}};
}

}  // namespace

CycleCriterion cycle_criterion(const SignedFrame& f, BalanceMode mode,
                               CycleMethod method) {
  require_valid(f);
  return method == CycleMethod::fast ? cycle_fast(f, mode)
                                     : cycle_bruteforce(f, mode);
}

SignedFrame complete_to_cc(const SignedFrame& f, const Partition& p) {
  const std::size_t n = f.universe.size();
  auto owner = p.block_of(n);
  for (const auto& [x, y] : f.rplus.edges())
    if (owner[x] != owner[y])
      throw PartitionIncompatible("positive pair (" + std::to_string(x) + "," +
                                  std::to_string(y) + ") crosses blocks");
  for (const auto& [x, y] : f.rminus.edges())
    if (owner[x] == owner[y])
      throw PartitionIncompatible("negative pair (" + std::to_string(x) + "," +
                                  std::to_string(y) + ") lies inside a block");
  std::vector<Edge> plus, minus;
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      (owner[x] == owner[y] ? plus : minus).emplace_back(x, y);
  return SignedFrame(f.universe, Relation(f.universe, plus),
                     Relation(f.universe, minus));
}

bool balance_via_collusion(const SignedFrame& f, BalanceMode mode) {
  auto d = validate_frame(f);
  if (!d.valid)
    throw PreconditionFailed("valid",
                             "frame violates axiom " + d.violations.front().axiom);
  if (!d.cc)
    throw PreconditionFailed("collectively-connected",
                             "collusivity characterization needs a c.c. frame");
  if (!d.ssf)
    throw PreconditionFailed("symmetric-negative",
                             "collusivity characterization needs an s.s.f.");
  bool plus = is_collusive_fast(f.rplus);
  if (mode == BalanceMode::weak) return plus;
  return plus && is_collusive_fast(f.rminus);
}

BalanceReport analyze(const SignedFrame& f) {
  require_valid(f);
  auto d = validate_frame(f);
  BalanceReport r{};
  r.locally_balanced = is_locally_balanced(f);
  r.locally_weak_balanced = is_locally_weak_balanced(f);
  if (d.ssf) r.strong_partition = strong_balance_partition(f);
  r.weak_partition = weak_balance_partition(f);
  r.cycle_criterion_strong = cycle_criterion(f, BalanceMode::strong, CycleMethod::fast).holds;
  r.cycle_criterion_weak = cycle_criterion(f, BalanceMode::weak, CycleMethod::fast).holds;
  r.collusive_plus = is_collusive_fast(f.rplus);
  r.collusive_minus = is_collusive_fast(f.rminus);
  return r;
}

namespace {

// Positive relation of the induced frame: same in-neighborhood and same
// out-neighborhood.
Relation equi_both(const Relation& r) {
  const std::size_t n = r.size();
  std::vector<Edge> edges;
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      if (r.in(x) == r.in(y) && r.out(x) == r.out(y)) edges.emplace_back(x, y);
  return Relation(r.universe(), edges);
}

std::optional<std::array<std::size_t, 3>> unstable_triad(
    const SignedFrame& f) {
  const std::size_t n = f.universe.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k) {
        int a = pair_sign(f, i, j), b = pair_sign(f, j, k),
            d = pair_sign(f, i, k);
        if (a == 0 || b == 0 || d == 0) continue;
        int negs = (a < 0) + (b < 0) + (d < 0);
        if (negs == 1 || negs == 3) return std::array<std::size_t, 3>{i, j, k};
      }
  return std::nullopt;
}

Relation relation_from_mask(const Universe& u, std::uint64_t mask) {
  const std::size_t n = u.size();
  std::vector<Edge> edges;
  std::size_t bit = 0;
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      if (x == y) continue;
      if ((mask >> bit) & 1) edges.emplace_back(x, y);
      ++bit;
    }
  return Relation(u, edges);
}

std::uint64_t sample_mask(Rng& rng, std::size_t n) {
  const std::size_t cells = n * n - n;
  std::uint64_t mask = 0;
  if (rng.coin()) {
    for (std::size_t b = 0; b < cells; ++b)
      if (rng.below(8) == 0) mask |= std::uint64_t{1} << b;
    return mask;
  }
  // Structured draw: a random family of disjoint target sets and a target
  // assignment, which satisfies Q3 by construction.
  std::size_t k = 1 + rng.below(n);
  std::vector<std::size_t> block(n);
  for (auto& b : block) b = rng.below(k);
  std::size_t bit = 0;
  std::vector<std::size_t> choice(n);
  for (auto& c : choice) c = rng.below(k + 1);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      if (x == y) continue;
      if (choice[x] < k && block[y] == choice[x] && block[x] != choice[x])
        mask |= std::uint64_t{1} << bit;
      ++bit;
    }
  return mask;
}

}  // namespace

std::string ConjectureReport::render() const {
  std::ostringstream os;
  os << "conjecture-search v1\n";
  os << "max-n " << max_n << "\n";
  os << "seed " << seed << "\n";
  os << "samples-per-n " << samples_per_n << "\n";
  for (const auto& l : levels) {
    os << "level n=" << l.n << " mode=" << (l.exhaustive ? "exhaustive" : "sampled")
       << " scanned=" << l.scanned << " candidates=" << l.candidates
       << " skipped-symmetric=" << l.skipped_symmetric << "\n";
  }
  for (const auto& h : hits) {
    os << "hit n=" << h.n << " edges=";
    for (const auto& [x, y] : h.edges) os << "(" << x << "," << y << ")";
    os << " triad=" << h.triad[0] << "," << h.triad[1] << "," << h.triad[2]
       << "\n";
  }
  os << "hits " << hits.size() << "\n";
  return os.str();
}

ConjectureReport conjecture_search(std::size_t max_n, std::uint64_t seed,
                                   std::size_t samples_per_n) {
  if (max_n > 6) throw TooLarge("conjecture search is limited to n <= 6");
  ConjectureReport report{max_n, seed, samples_per_n, {}, {}};
  Rng rng(seed);
  for (std::size_t n = 1; n <= max_n; ++n) {
    Universe u(n);
    ConjectureReport::Level level{n, n <= 4, 0, 0, 0};
    auto consider = [&](const Relation& r) {
      ++level.scanned;
      if (!check_quadrangular(r, QuadPattern::collusive()).holds) return;
      if (!check_quadrangular(r, QuadPattern::confluent()).holds) return;
      if (!check_quadrangular(r, QuadPattern::co_confluent()).holds) return;
      if (check_basic(r, BasicProperty::symmetric).holds) {
        ++level.skipped_symmetric;
        return;
      }
      ++level.candidates;
      SignedFrame f(r.universe(), equi_both(r), r);
      if (auto t = unstable_triad(f))
        report.hits.push_back(ConjectureHit{n, r.edges(), *t});
    };
    if (level.exhaustive) {
      const std::size_t cells = n * n - n;
      for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << cells); ++mask)
        consider(relation_from_mask(u, mask));
    } else {
      for (std::size_t s = 0; s < samples_per_n; ++s)
        consider(relation_from_mask(u, sample_mask(rng, n)));
    }
    report.levels.push_back(level);
  }
  return report;
}

}  // namespace quadrel::balance
