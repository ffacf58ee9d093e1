#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "quadrel/modal.hpp"

namespace quadrel::prover {

/// Interning table for world labels and relation names shared by a goal,
/// its search, and the resulting derivation.
class Context {
 public:
  int label(const std::string& name);
  int relation(const std::string& name);
  std::optional<int> find_label(const std::string& name) const;
  std::optional<int> find_relation(const std::string& name) const;
  const std::string& label_name(int id) const { return labels_[static_cast<std::size_t>(id)]; }
  const std::string& relation_name(int id) const { return relations_[static_cast<std::size_t>(id)]; }
  std::size_t label_count() const { return labels_.size(); }
  std::size_t relation_count() const { return relations_.size(); }
  /// Next unused generated label (w0, w1, ...).
  int fresh_label();

 private:
  std::vector<std::string> labels_;
  std::vector<std::string> relations_;
  std::size_t fresh_counter_ = 0;
};

struct RelAtom {
  int rel;
  int src;
  int dst;
  auto operator<=>(const RelAtom&) const = default;
};

struct LabeledFormula {
  int label = 0;
  modal::FormulaPtr formula;
};

bool operator==(const LabeledFormula& a, const LabeledFormula& b);
bool operator<(const LabeledFormula& a, const LabeledFormula& b);

/// One side of a sequent: a set of relational atoms and a set of labeled
/// formulas, kept sorted.
struct Side {
  std::vector<RelAtom> atoms;
  std::vector<LabeledFormula> formulas;

  bool has_atom(const RelAtom& a) const;
  bool has_formula(const LabeledFormula& f) const;
  bool insert_atom(const RelAtom& a);          // false if already present
  bool insert_formula(const LabeledFormula& f);
  void erase_formula(const LabeledFormula& f);

  bool operator==(const Side& o) const;
};

struct Sequent {
  Side left;
  Side right;

  bool operator==(const Sequent& o) const {
    return left == o.left && right == o.right;
  }
  bool mentions_label(int label) const;
  std::vector<int> labels() const;  // sorted distinct labels occurring
};

enum class RuleId {
  identity,
  bot_l,
  and_l,
  and_r,
  or_l,
  or_r,
  imp_l,
  imp_r,
  not_l,
  not_r,
  box_f_l,
  box_f_r,
  box_b_l,
  box_b_r,
  dia_f_l,
  dia_f_r,
  dia_b_l,
  dia_b_r,
  total,
  surj,
  collusive,
  refl,
  symm,
  nover,
  cc,
};

const char* rule_name(RuleId r);

/// A rule together with everything needed to recompute its premises from a
/// conclusion: the principal formula (for logical and modal rules), up to
/// four label parameters, the relation tag(s), and the fresh label if the
/// rule introduces one.
struct RuleInstance {
  RuleId rule = RuleId::identity;
  std::optional<LabeledFormula> principal;
  std::array<int, 4> labels{-1, -1, -1, -1};
  int rel = -1;
  int rel2 = -1;
  int fresh = -1;

  RuleInstance() = default;
  explicit RuleInstance(RuleId r) : rule(r) {}
  RuleInstance(RuleId r, LabeledFormula p) : rule(r), principal(std::move(p)) {}
};

struct Derivation {
  Sequent conclusion;
  RuleInstance rule;
  std::vector<Derivation> premises;

  std::size_t node_count() const;
  /// Pre-order rule names ("imp_r", "box_f_r", ...).
  std::vector<std::string> rule_sequence() const;
};

/// Which relational rules are available, and the search budgets.
struct SystemConfig {
  struct RelRule {
    RuleId rule;  // total, surj, collusive, refl, symm, nover, cc
    int rel;
    int rel2 = -1;  // nover and cc take an ordered pair
  };
  std::vector<RelRule> rules;
  std::size_t max_fresh = 8;
  std::size_t max_depth = 64;
  /// Nonzero: deterministically shuffles candidate order inside each
  /// priority tier and disables the closing-move preference.
  std::uint64_t shuffle_seed = 0;

  bool enabled(RuleId rule, int rel, int rel2 = -1) const;
  void validate(const Context& ctx) const;
};

/// Recomputes the premises the instance yields from the conclusion; throws
/// Error with a human-readable reason when the instance does not apply
/// (missing principal, missing side atoms, freshness or enabledness
/// violations).
std::vector<Sequent> apply_rule(const Sequent& conclusion,
                                const RuleInstance& inst,
                                const SystemConfig& cfg, const Context& ctx);

enum class Outcome { proved, saturated, budget_exceeded };

struct SearchStats {
  std::size_t nodes = 0;
  std::size_t max_depth = 0;
  std::size_t fresh_labels = 0;
};

struct ProveResult {
  Outcome outcome;
  std::optional<Derivation> derivation;  // when proved
  std::optional<Sequent> saturated;      // countermodel seed
  SearchStats stats;
};

/// Bounded backward search. All rules are applied in invertible form, so a
/// saturated sequent refutes the goal; total/surj can regenerate labels
/// forever, which the fresh-label budget converts into budget_exceeded.
ProveResult prove(const Sequent& goal, const SystemConfig& cfg, Context& ctx);

struct KernelReport {
  bool ok;
  std::size_t node_index = 0;  // pre-order index of the first failing node
  std::string message;
  explicit operator bool() const { return ok; }
};

/// Validates every inference of a derivation against the rule schemas,
/// including freshness side-conditions and presence of required atoms.
KernelReport check_derivation(const Derivation& d, const SystemConfig& cfg,
                              const Context& ctx);

std::string to_string(const Sequent& s, const Context& ctx);
/// `SEQ: <items> |- <items>`; items are `x : <formula>` or `x R y`,
/// comma-separated. The SEQ: prefix is optional.
Sequent parse_sequent(std::string_view text, Context& ctx);

std::string render_text(const Derivation& d, const Context& ctx);
std::string render_latex(const Derivation& d, const Context& ctx);

/// Model read off a saturated sequent: worlds are its labels, relations its
/// left-side atoms, and the valuation its left-side atomic formulas.
/// label_to_world receives the mapping.
modal::KripkeModel extract_countermodel(const Sequent& saturated,
                                        const Context& ctx,
                                        std::vector<std::pair<int, std::size_t>>* label_to_world = nullptr);

/// Named goals with their recommended rule sets. Available names:
/// axiom-C (collusivity), axiom-4, axiom-B, axiom-W2 (the mixed-diamond
/// conjunct), axiom-W1-step (dia+ dia+ p -> dia+ p), axiom-W1-idem
/// (dia+ p & dia+ p -> dia+ p), axiom-W (both W conjuncts), axiom-C-plus
/// (collusivity scheme for R+).
struct Preset {
  std::string name;
  std::vector<Sequent> goals;
  SystemConfig config;
};

Preset make_preset(const std::string& name, Context& ctx);
std::vector<std::string> preset_names();

}  // namespace quadrel::prover
