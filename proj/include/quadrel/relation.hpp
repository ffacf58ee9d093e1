#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "quadrel/bitset.hpp"
#include "quadrel/errors.hpp"

namespace quadrel {

using Edge = std::pair<std::size_t, std::size_t>;

/// A finite carrier set. Elements are the indices 0..size-1; labels, when
/// given, are display names only and must be pairwise distinct.
class Universe {
 public:
  explicit Universe(std::size_t size);
  Universe(std::size_t size, std::vector<std::string> labels);

  std::size_t size() const { return size_; }
  bool has_labels() const { return !labels_.empty(); }
  const std::vector<std::string>& labels() const { return labels_; }

  /// Display name of an element: its label, or its decimal index.
  std::string display(std::size_t i) const;

  /// Index of a labeled element; nullopt if no such label.
  std::optional<std::size_t> index_of(const std::string& label) const;

  bool operator==(const Universe& o) const {
    return size_ == o.size_ && labels_ == o.labels_;
  }

 private:
  std::size_t size_;
  std::vector<std::string> labels_;
};

/// A binary relation over a Universe, immutable after construction.
/// Both out-neighborhoods (x maps to {y : xRy}) and in-neighborhoods are
/// kept, as rows of bits.
class Relation {
 public:
  Relation(Universe universe, const std::vector<Edge>& edges);

  const Universe& universe() const { return universe_; }
  std::size_t size() const { return universe_.size(); }

  bool has(std::size_t x, std::size_t y) const { return out_[x].test(y); }
  const Bitset& out(std::size_t x) const { return out_[x]; }
  const Bitset& in(std::size_t y) const { return in_[y]; }

  std::size_t edge_count() const;
  /// All edges in lexicographic order.
  std::vector<Edge> edges() const;

  Relation inverse() const;

  bool operator==(const Relation& o) const {
    return universe_ == o.universe_ && out_ == o.out_;
  }
  bool operator!=(const Relation& o) const { return !(*this == o); }

 private:
  Universe universe_;
  std::vector<Bitset> out_;
  std::vector<Bitset> in_;
};

enum class BasicProperty {
  reflexive,
  irreflexive,
  symmetric,
  total,
  surjective,
  transitive,
  anti_transitive,
};

const char* to_string(BasicProperty p);
std::optional<BasicProperty> basic_property_from_string(const std::string& s);

/// Result of a universally quantified property check. When the property
/// fails, `witness` holds the lexicographically least falsifying tuple
/// (its arity depends on the property).
struct PropertyCheck {
  bool holds;
  std::vector<std::size_t> witness;
  explicit operator bool() const { return holds; }
};

PropertyCheck check_basic(const Relation& r, BasicProperty prop);

/// Elements with indegree zero.
Bitset initial_elements(const Relation& r);

/// One of the eight properties definable by a single universal implication
///   forall x,y,z,w: A1(x,y) & A2(x,z) & A3(y,w) => A4(z,w)
/// where each atom is taken as written (vRv') or reversed (v'Rv).
/// Orientation vectors with a reversed first atom denote the same property
/// as a canonical vector with the first atom as written; `canonical()`
/// performs that identification, so exactly eight distinct patterns exist.
class QuadPattern {
 public:
  QuadPattern(bool rev1, bool rev2, bool rev3, bool rev4)
      : rev_{rev1, rev2, rev3, rev4} {}

  static QuadPattern by_index(int k);  // 1..8
  static std::optional<QuadPattern> by_name(const std::string& name);

  static QuadPattern confluent() { return by_index(1); }
  static QuadPattern co_confluent() { return by_index(2); }
  static QuadPattern collusive() { return by_index(3); }

  QuadPattern canonical() const;
  /// "Q1".."Q8" for the canonical form of this pattern.
  std::string name() const;
  const std::array<bool, 4>& reversed() const { return rev_; }

  bool operator==(const QuadPattern& o) const {
    return canonical().rev_ == o.canonical().rev_;
  }

 private:
  std::array<bool, 4> rev_;
};

struct QuadWitness {
  std::size_t x, y, z, w;
  bool operator==(const QuadWitness& o) const {
    return x == o.x && y == o.y && z == o.z && w == o.w;
  }
};

struct QuadCheck {
  bool holds;
  std::optional<QuadWitness> witness;
  explicit operator bool() const { return holds; }
};

/// Decides a quadrangular property. On failure the witness is the
/// lexicographically least quadruple (x,y,z,w) falsifying the implication.
/// Quantified variables range over all elements; values may coincide.
QuadCheck check_quadrangular(const Relation& r, QuadPattern pattern);

/// Equivalent to check_quadrangular(r, Q3), decided by the out-neighborhood
/// criterion: any two out-neighborhoods are identical or disjoint.
bool is_collusive_fast(const Relation& r);

/// Collusive, total and surjective.
bool is_collusion(const Relation& r);

/// Name of the first property among {collusive, total, surjective} that `r`
/// violates; nullopt when r is a collusion.
std::optional<std::string> collusion_defect(const Relation& r);

}  // namespace quadrel
