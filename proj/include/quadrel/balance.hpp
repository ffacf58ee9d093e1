#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "quadrel/partition.hpp"
#include "quadrel/relation.hpp"

namespace quadrel::balance {

/// A universe with a positive relation (reflexive, symmetric) and a negative
/// relation, non-overlapping with the positive one. The negative relation
/// need not be symmetric.
struct SignedFrame {
  Universe universe;
  Relation rplus;
  Relation rminus;

  SignedFrame(Universe u, Relation plus, Relation minus);
};

struct FrameViolation {
  std::string axiom;  // "plus-reflexive" | "plus-symmetric" | "non-overlapping"
  std::vector<std::size_t> witness;
};

struct FrameDiagnostics {
  bool valid;
  std::vector<FrameViolation> violations;
  bool ssf;  // negative relation symmetric
  bool cc;   // every ordered pair related positively or negatively
};

FrameDiagnostics validate_frame(const SignedFrame& f);

/// Counts of complete triads (all three pairs related) over unordered
/// triples of distinct elements, by number of negative pairs. Triples with
/// an unrelated pair are counted as open and excluded from the census.
struct TriadCensus {
  std::size_t all_positive = 0;   // + + +
  std::size_t one_positive = 0;   // - - +
  std::size_t all_negative = 0;   // - - -
  std::size_t one_negative = 0;   // + + -
  std::size_t open = 0;

  std::size_t closed() const {
    return all_positive + one_positive + all_negative + one_negative;
  }
};

TriadCensus classify_triads(const SignedFrame& f);

/// The two triple-closure properties, evaluated literally over all ordered
/// triples (elements may repeat).
bool is_locally_balanced(const SignedFrame& f);
bool is_locally_weak_balanced(const SignedFrame& f);

/// Two blocks with positive pairs inside one block and negative pairs
/// across; the second block may be empty.
struct Bipartition {
  std::vector<std::size_t> first;
  std::vector<std::size_t> second;
};

/// Requires a valid frame with symmetric negative relation. Decided by
/// parity-annotated union-find over the constraint graph.
std::optional<Bipartition> strong_balance_partition(const SignedFrame& f);

/// Blocks are the connected components of the positive relation; present
/// iff no negative pair lies inside a component. Accepts non-symmetric
/// negative relations.
std::optional<Partition> weak_balance_partition(const SignedFrame& f);

enum class BalanceMode { strong, weak };
enum class CycleMethod { fast, bruteforce };

struct CycleCriterion {
  bool holds;
  /// A violating simple cycle (vertex list, closing edge implied), when any.
  std::vector<std::size_t> witness;
};

/// strong: every simple cycle carries an even number of negative edges;
/// weak: no simple cycle carries exactly one negative edge. The bruteforce
/// method enumerates all simple cycles and requires size <= 9.
CycleCriterion cycle_criterion(const SignedFrame& f, BalanceMode mode,
                               CycleMethod method);

/// Completes a frame to a collectively connected one along a compatible
/// partition: all intra-block pairs become positive, all cross-block pairs
/// negative.
SignedFrame complete_to_cc(const SignedFrame& f, const Partition& p);

/// The collusivity characterization. Requires a valid, collectively
/// connected frame with symmetric negative relation.
bool balance_via_collusion(const SignedFrame& f, BalanceMode mode);

/// All indicators side by side (computed on demand by the CLI).
struct BalanceReport {
  bool locally_balanced;
  bool locally_weak_balanced;
  std::optional<Bipartition> strong_partition;
  std::optional<Partition> weak_partition;
  bool cycle_criterion_strong;
  bool cycle_criterion_weak;
  bool collusive_plus;
  bool collusive_minus;
};

BalanceReport analyze(const SignedFrame& f);

/// A candidate found by the conjecture search: an irreflexive, confluent,
/// co-confluent, collusive and non-symmetric relation whose induced frame
/// has an unstable complete triad.
struct ConjectureHit {
  std::size_t n;
  std::vector<Edge> edges;
  std::array<std::size_t, 3> triad;
};

struct ConjectureReport {
  std::size_t max_n;
  std::uint64_t seed;
  std::size_t samples_per_n;
  /// Per n: scanned, candidates (skipped symmetric excluded), skipped
  /// symmetric.
  struct Level {
    std::size_t n;
    bool exhaustive;
    std::size_t scanned = 0;
    std::size_t candidates = 0;
    std::size_t skipped_symmetric = 0;
  };
  std::vector<Level> levels;
  std::vector<ConjectureHit> hits;

  /// Canonical text rendering (LF line endings); reproducible bit-exactly
  /// for a fixed seed.
  std::string render() const;
};

/// Scans irreflexive relations satisfying Q1, Q2 and Q3 (exhaustively for
/// n <= 4, seeded sampling above), builds the induced signed frame with the
/// intersection of the two equi-targeting equivalences as positive relation,
/// and reports any candidate whose frame has an all-negative or
/// one-negative complete triad. max_n <= 6.
ConjectureReport conjecture_search(std::size_t max_n,
                                   std::uint64_t seed = 20250810,
                                   std::size_t samples_per_n = 2000);

}  // namespace quadrel::balance
