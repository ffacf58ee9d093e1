#pragma once

#include <optional>
#include <utility>

#include "quadrel/relation.hpp"

namespace quadrel::agonal {

/// Protection induced by an attack relation: x protects z iff x attacks
/// every attacker of z. Row-wise this is in(z) contained in out(x).
Relation protection(const Relation& r);

/// Protection restricted to elements that have at least one attacker.
Relation actual_protection(const Relation& r);

struct ProtectionReport {
  Relation protection;
  Relation actual_protection;
  bool consistent;
  bool complete;
  /// First pair (x,z) with x protecting and attacking z, when inconsistent.
  std::optional<Edge> violation;
};

/// Consistency: no element both protects and attacks the same element.
/// Completeness: additionally every non-attack is a protection.
ProtectionReport consistency_report(const Relation& r);

}  // namespace quadrel::agonal
