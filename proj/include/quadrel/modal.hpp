#pragma once

#include <memory>
#include <string>
#include <vector>

#include "quadrel/balance.hpp"
#include "quadrel/relation.hpp"

namespace quadrel::modal {

enum class Kind {
  atom,
  bottom,
  neg,
  conj,
  disj,
  impl,
  box_f,  // all successors along the tagged relation
  box_b,  // all predecessors
  dia_f,
  dia_b,
};

class Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

/// Immutable formula node. Modal nodes carry the name of the relation they
/// quantify over; resolution against a model happens at evaluation time.
class Formula {
 public:
  static FormulaPtr atom(std::string name);
  static FormulaPtr bottom();
  static FormulaPtr neg(FormulaPtr f);
  static FormulaPtr conj(FormulaPtr a, FormulaPtr b);
  static FormulaPtr disj(FormulaPtr a, FormulaPtr b);
  static FormulaPtr impl(FormulaPtr a, FormulaPtr b);
  static FormulaPtr box_f(std::string rel, FormulaPtr f);
  static FormulaPtr box_b(std::string rel, FormulaPtr f);
  static FormulaPtr dia_f(std::string rel, FormulaPtr f);
  static FormulaPtr dia_b(std::string rel, FormulaPtr f);

  Kind kind() const { return kind_; }
  const std::string& name() const { return name_; }  // atom or relation tag
  const FormulaPtr& lhs() const { return lhs_; }
  const FormulaPtr& rhs() const { return rhs_; }
  std::size_t hash() const { return hash_; }

  Formula(Kind k, std::string name, FormulaPtr lhs, FormulaPtr rhs);

 private:
  Kind kind_;
  std::string name_;
  FormulaPtr lhs_, rhs_;
  std::size_t hash_;
};

bool equal(const FormulaPtr& a, const FormulaPtr& b);
/// Total order on formulas (structural); used to keep sequents canonical.
int compare(const FormulaPtr& a, const FormulaPtr& b);

/// Grammar: atoms [a-z][a-z0-9_]*, "false", prefix ~, infix & | ->
/// (tightest to loosest; -> right-associative), modalities [f NAME],
/// [b NAME], <f NAME>, <b NAME> binding like ~, and the shorthands
/// box+ dia+ box- dia- for [f R+] <f R+> [f R-] <f R->.
FormulaPtr parse_formula(std::string_view text);

/// Minimal-parentheses rendering; parsing it back yields the same tree.
std::string to_string(const FormulaPtr& f);

struct KripkeModel {
  Universe universe;
  std::vector<std::pair<std::string, Relation>> relations;
  std::vector<std::pair<std::string, Bitset>> valuation;
  /// When set, evaluating an atom absent from the valuation is an error
  /// instead of false-everywhere.
  bool strict_atoms = false;

  const Relation* find_relation(const std::string& name) const;
  const Bitset* find_atom(const std::string& name) const;
};

/// Model over a signed frame with relations named R+ and R-.
KripkeModel model_from_frame(
    const balance::SignedFrame& f,
    std::vector<std::pair<std::string, Bitset>> valuation);

/// Worlds where the formula holds.
Bitset eval_set(const KripkeModel& m, const FormulaPtr& f);
bool eval(const KripkeModel& m, std::size_t world, const FormulaPtr& f);

struct SchemeCheck {
  bool valid;
  /// Refuting single-atom valuation and world, when invalid.
  Bitset valuation;
  std::size_t world = 0;
};

/// Frame validity of the collusivity scheme, decided by sweeping all
/// single-atom valuations of its diamond form
///   dia_f A -> box_f box_b dia_f A
/// over all worlds (the first failing valuation in mask order is reported).
/// Agrees with is_collusive_fast on every relation. Universe size <= 20.
SchemeCheck frame_validates_C(const Relation& r);

}  // namespace quadrel::modal
