#include "quadrel/prover.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "quadrel/rng.hpp"

namespace quadrel::prover {

using modal::Formula;
using modal::FormulaPtr;
using modal::Kind;

int Context::label(const std::string& name) {
  for (std::size_t i = 0; i < labels_.size(); ++i)
    if (labels_[i] == name) return static_cast<int>(i);
  labels_.push_back(name);
  return static_cast<int>(labels_.size() - 1);
}

int Context::relation(const std::string& name) {
  for (std::size_t i = 0; i < relations_.size(); ++i)
    if (relations_[i] == name) return static_cast<int>(i);
  relations_.push_back(name);
  return static_cast<int>(relations_.size() - 1);
}

std::optional<int> Context::find_label(const std::string& name) const {
  for (std::size_t i = 0; i < labels_.size(); ++i)
    if (labels_[i] == name) return static_cast<int>(i);
  return std::nullopt;
}

std::optional<int> Context::find_relation(const std::string& name) const {
  for (std::size_t i = 0; i < relations_.size(); ++i)
    if (relations_[i] == name) return static_cast<int>(i);
  return std::nullopt;
}

int Context::fresh_label() {
  while (true) {
    std::string name = "w" + std::to_string(fresh_counter_++);
    if (!find_label(name)) return label(name);
  }
}

bool operator==(const LabeledFormula& a, const LabeledFormula& b) {
  return a.label == b.label && modal::equal(a.formula, b.formula);
}

bool operator<(const LabeledFormula& a, const LabeledFormula& b) {
  if (a.label != b.label) return a.label < b.label;
  return modal::compare(a.formula, b.formula) < 0;
}

bool Side::has_atom(const RelAtom& a) const {
  return std::binary_search(atoms.begin(), atoms.end(), a);
}

bool Side::has_formula(const LabeledFormula& f) const {
  auto it = std::lower_bound(formulas.begin(), formulas.end(), f);
  return it != formulas.end() && *it == f;
}

bool Side::insert_atom(const RelAtom& a) {
  auto it = std::lower_bound(atoms.begin(), atoms.end(), a);
  if (it != atoms.end() && *it == a) return false;
  atoms.insert(it, a);
  return true;
}

bool Side::insert_formula(const LabeledFormula& f) {
  auto it = std::lower_bound(formulas.begin(), formulas.end(), f);
  if (it != formulas.end() && *it == f) return false;
  formulas.insert(it, f);
  return true;
}

void Side::erase_formula(const LabeledFormula& f) {
  auto it = std::lower_bound(formulas.begin(), formulas.end(), f);
  if (it != formulas.end() && *it == f) formulas.erase(it);
}

bool Side::operator==(const Side& o) const {
  if (atoms != o.atoms) return false;
  if (formulas.size() != o.formulas.size()) return false;
  for (std::size_t i = 0; i < formulas.size(); ++i)
    if (!(formulas[i] == o.formulas[i])) return false;
  return true;
}

bool Sequent::mentions_label(int label) const {
  for (const Side* s : {&left, &right}) {
    for (const auto& a : s->atoms)
      if (a.src == label || a.dst == label) return true;
    for (const auto& f : s->formulas)
      if (f.label == label) return true;
  }
  return false;
}

std::vector<int> Sequent::labels() const {
  std::vector<int> ls;
  for (const Side* s : {&left, &right}) {
    for (const auto& a : s->atoms) {
      ls.push_back(a.src);
      ls.push_back(a.dst);
    }
    for (const auto& f : s->formulas) ls.push_back(f.label);
  }
  std::sort(ls.begin(), ls.end());
  ls.erase(std::unique(ls.begin(), ls.end()), ls.end());
  return ls;
}

const char* rule_name(RuleId r) {
  switch (r) {
    case RuleId::identity: return "I";
    case RuleId::bot_l: return "bot_l";
    case RuleId::and_l: return "and_l";
    case RuleId::and_r: return "and_r";
    case RuleId::or_l: return "or_l";
    case RuleId::or_r: return "or_r";
    case RuleId::imp_l: return "imp_l";
    case RuleId::imp_r: return "imp_r";
    case RuleId::not_l: return "not_l";
    case RuleId::not_r: return "not_r";
    case RuleId::box_f_l: return "box_f_l";
    case RuleId::box_f_r: return "box_f_r";
    case RuleId::box_b_l: return "box_b_l";
    case RuleId::box_b_r: return "box_b_r";
    case RuleId::dia_f_l: return "dia_f_l";
    case RuleId::dia_f_r: return "dia_f_r";
    case RuleId::dia_b_l: return "dia_b_l";
    case RuleId::dia_b_r: return "dia_b_r";
    case RuleId::total: return "total";
    case RuleId::surj: return "surj";
    case RuleId::collusive: return "collusive";
    case RuleId::refl: return "refl";
    case RuleId::symm: return "symm";
    case RuleId::nover: return "nover";
    case RuleId::cc: return "cc";
  }
  return "?";
}

std::size_t Derivation::node_count() const {
  std::size_t c = 1;
  for (const auto& p : premises) c += p.node_count();
  return c;
}

std::vector<std::string> Derivation::rule_sequence() const {
  std::vector<std::string> seq{rule_name(rule.rule)};
  for (const auto& p : premises) {
    auto sub = p.rule_sequence();
    seq.insert(seq.end(), sub.begin(), sub.end());
  }
  return seq;
}

bool SystemConfig::enabled(RuleId rule, int rel, int rel2) const {
  for (const auto& r : rules)
    if (r.rule == rule && r.rel == rel && (rel2 < 0 || r.rel2 == rel2))
      return true;
  return false;
}

void SystemConfig::validate(const Context& ctx) const {
  for (const auto& r : rules) {
    bool pair = r.rule == RuleId::nover || r.rule == RuleId::cc;
    bool single = r.rule == RuleId::total || r.rule == RuleId::surj ||
                  r.rule == RuleId::collusive || r.rule == RuleId::refl ||
                  r.rule == RuleId::symm;
    if (!pair && !single)
      throw MalformedSequent("rule " + std::string(rule_name(r.rule)) +
                             " is not a relational rule");
    if (r.rel < 0 || r.rel >= static_cast<int>(ctx.relation_count()))
      throw MalformedSequent("relational rule names an unknown relation");
    if (pair) {
      if (r.rel2 < 0 || r.rel2 >= static_cast<int>(ctx.relation_count()))
        throw MalformedSequent("relational rule names an unknown relation");
      if (r.rel2 == r.rel)
        throw MalformedSequent(std::string(rule_name(r.rule)) +
                               " needs two distinct relations");
    }
  }
  if (max_fresh == 0 || max_depth == 0)
    throw MalformedSequent("budgets must be positive");
}

namespace {

[[noreturn]] void reject(const std::string& why) { throw Error(why); }

void require_principal(const Sequent& s, const RuleInstance& inst, bool left,
                       Kind kind) {
  if (!inst.principal) reject("rule needs a principal formula");
  if (inst.principal->formula->kind() != kind)
    reject("principal formula has the wrong connective");
  const Side& side = left ? s.left : s.right;
  if (!side.has_formula(*inst.principal))
    reject("principal formula not present in the conclusion");
}

void require_fresh(const Sequent& s, const RuleInstance& inst,
                   const Context& ctx) {
  if (inst.fresh < 0 || inst.fresh >= static_cast<int>(ctx.label_count()))
    reject("rule needs a fresh label");
  if (s.mentions_label(inst.fresh))
    reject("label " + ctx.label_name(inst.fresh) +
           " is not fresh for the conclusion");
}

int formula_relation(const RuleInstance& inst, const Context& ctx) {
  if (inst.rel < 0 || inst.rel >= static_cast<int>(ctx.relation_count()))
    reject("modal rule carries no relation tag");
  if (ctx.relation_name(inst.rel) != inst.principal->formula->name())
    reject("relation tag does not match the principal formula");
  return inst.rel;
}

}  // namespace

std::vector<Sequent> apply_rule(const Sequent& s, const RuleInstance& inst,
                                const SystemConfig& cfg, const Context& ctx) {
  switch (inst.rule) {
    case RuleId::identity: {
      if (inst.principal) {
        if (inst.principal->formula->kind() != Kind::atom)
          reject("identity closes on atomic formulas only");
        if (!s.left.has_formula(*inst.principal) ||
            !s.right.has_formula(*inst.principal))
          reject("identity formula must appear on both sides");
        return {};
      }
      RelAtom a{inst.rel, inst.labels[0], inst.labels[1]};
      if (a.rel < 0) reject("identity needs a formula or a relational atom");
      if (!s.left.has_atom(a) || !s.right.has_atom(a))
        reject("identity atom must appear on both sides");
      return {};
    }
    case RuleId::bot_l: {
      if (!inst.principal || inst.principal->formula->kind() != Kind::bottom)
        reject("bot_l needs a falsum principal");
      if (!s.left.has_formula(*inst.principal))
        reject("falsum not present on the left");
      return {};
    }
    case RuleId::and_l: {
      require_principal(s, inst, true, Kind::conj);
      Sequent p = s;
      p.left.erase_formula(*inst.principal);
      p.left.insert_formula({inst.principal->label, inst.principal->formula->lhs()});
      p.left.insert_formula({inst.principal->label, inst.principal->formula->rhs()});
      return {p};
    }
    case RuleId::and_r: {
      require_principal(s, inst, false, Kind::conj);
      Sequent a = s, b = s;
      a.right.erase_formula(*inst.principal);
      b.right.erase_formula(*inst.principal);
      a.right.insert_formula({inst.principal->label, inst.principal->formula->lhs()});
      b.right.insert_formula({inst.principal->label, inst.principal->formula->rhs()});
      return {a, b};
    }
    case RuleId::or_l: {
      require_principal(s, inst, true, Kind::disj);
      Sequent a = s, b = s;
      a.left.erase_formula(*inst.principal);
      b.left.erase_formula(*inst.principal);
      a.left.insert_formula({inst.principal->label, inst.principal->formula->lhs()});
      b.left.insert_formula({inst.principal->label, inst.principal->formula->rhs()});
      return {a, b};
    }
    case RuleId::or_r: {
      require_principal(s, inst, false, Kind::disj);
      Sequent p = s;
      p.right.erase_formula(*inst.principal);
      p.right.insert_formula({inst.principal->label, inst.principal->formula->lhs()});
      p.right.insert_formula({inst.principal->label, inst.principal->formula->rhs()});
      return {p};
    }
    case RuleId::imp_l: {
      require_principal(s, inst, true, Kind::impl);
      Sequent a = s, b = s;
      a.left.erase_formula(*inst.principal);
      b.left.erase_formula(*inst.principal);
      a.right.insert_formula({inst.principal->label, inst.principal->formula->lhs()});
      b.left.insert_formula({inst.principal->label, inst.principal->formula->rhs()});
      return {a, b};
    }
    case RuleId::imp_r: {
      require_principal(s, inst, false, Kind::impl);
      Sequent p = s;
      p.right.erase_formula(*inst.principal);
      p.left.insert_formula({inst.principal->label, inst.principal->formula->lhs()});
      p.right.insert_formula({inst.principal->label, inst.principal->formula->rhs()});
      return {p};
    }
    case RuleId::not_l: {
      require_principal(s, inst, true, Kind::neg);
      Sequent p = s;
      p.left.erase_formula(*inst.principal);
      p.right.insert_formula({inst.principal->label, inst.principal->formula->lhs()});
      return {p};
    }
    case RuleId::not_r: {
      require_principal(s, inst, false, Kind::neg);
      Sequent p = s;
      p.right.erase_formula(*inst.principal);
      p.left.insert_formula({inst.principal->label, inst.principal->formula->lhs()});
      return {p};
    }
    case RuleId::box_f_l:
    case RuleId::box_b_l: {
      bool fwd = inst.rule == RuleId::box_f_l;
      require_principal(s, inst, true, fwd ? Kind::box_f : Kind::box_b);
      int rel = formula_relation(inst, ctx);
      int x = inst.principal->label, y = inst.labels[1];
      RelAtom a = fwd ? RelAtom{rel, x, y} : RelAtom{rel, y, x};
      if (!s.left.has_atom(a)) reject("box rule needs its relational atom");
      Sequent p = s;  // principal kept
      p.left.insert_formula({y, inst.principal->formula->lhs()});
      return {p};
    }
    case RuleId::box_f_r:
    case RuleId::box_b_r: {
      bool fwd = inst.rule == RuleId::box_f_r;
      require_principal(s, inst, false, fwd ? Kind::box_f : Kind::box_b);
      int rel = formula_relation(inst, ctx);
      require_fresh(s, inst, ctx);
      int x = inst.principal->label, y = inst.fresh;
      Sequent p = s;
      p.right.erase_formula(*inst.principal);
      p.left.insert_atom(fwd ? RelAtom{rel, x, y} : RelAtom{rel, y, x});
      p.right.insert_formula({y, inst.principal->formula->lhs()});
      return {p};
    }
    case RuleId::dia_f_l:
    case RuleId::dia_b_l: {
      bool fwd = inst.rule == RuleId::dia_f_l;
      require_principal(s, inst, true, fwd ? Kind::dia_f : Kind::dia_b);
      int rel = formula_relation(inst, ctx);
      require_fresh(s, inst, ctx);
      int x = inst.principal->label, y = inst.fresh;
      Sequent p = s;
      p.left.erase_formula(*inst.principal);
      p.left.insert_atom(fwd ? RelAtom{rel, x, y} : RelAtom{rel, y, x});
      p.left.insert_formula({y, inst.principal->formula->lhs()});
      return {p};
    }
    case RuleId::dia_f_r:
    case RuleId::dia_b_r: {
      bool fwd = inst.rule == RuleId::dia_f_r;
      require_principal(s, inst, false, fwd ? Kind::dia_f : Kind::dia_b);
      int rel = formula_relation(inst, ctx);
      int x = inst.principal->label, y = inst.labels[1];
      RelAtom a = fwd ? RelAtom{rel, x, y} : RelAtom{rel, y, x};
      if (!s.left.has_atom(a)) reject("diamond rule needs its relational atom");
      Sequent p = s;  // principal kept
      p.right.insert_formula({y, inst.principal->formula->lhs()});
      return {p};
    }
    case RuleId::total:
    case RuleId::surj: {
      if (!cfg.enabled(inst.rule, inst.rel))
        reject("relational rule not enabled for this relation");
      require_fresh(s, inst, ctx);
      int x = inst.labels[0];
      if (!s.mentions_label(x)) reject("rule label must occur in the conclusion");
      Sequent p = s;
      p.left.insert_atom(inst.rule == RuleId::total
                             ? RelAtom{inst.rel, x, inst.fresh}
                             : RelAtom{inst.rel, inst.fresh, x});
      return {p};
    }
    case RuleId::collusive: {
      if (!cfg.enabled(inst.rule, inst.rel))
        reject("relational rule not enabled for this relation");
      int a = inst.labels[0], b = inst.labels[1], a2 = inst.labels[2],
          c = inst.labels[3];
      if (!s.left.has_atom({inst.rel, a, b}) ||
          !s.left.has_atom({inst.rel, a2, b}) ||
          !s.left.has_atom({inst.rel, a, c}))
        reject("collusive rule needs its three premise atoms");
      Sequent p = s;
      p.left.insert_atom({inst.rel, a2, c});
      return {p};
    }
    case RuleId::refl: {
      if (!cfg.enabled(inst.rule, inst.rel))
        reject("relational rule not enabled for this relation");
      int x = inst.labels[0];
      if (!s.mentions_label(x)) reject("rule label must occur in the conclusion");
      Sequent p = s;
      p.left.insert_atom({inst.rel, x, x});
      return {p};
    }
    case RuleId::symm: {
      if (!cfg.enabled(inst.rule, inst.rel))
        reject("relational rule not enabled for this relation");
      int x = inst.labels[0], y = inst.labels[1];
      if (!s.left.has_atom({inst.rel, x, y}))
        reject("symm rule needs its premise atom");
      Sequent p = s;
      p.left.insert_atom({inst.rel, y, x});
      return {p};
    }
    case RuleId::nover: {
      if (!cfg.enabled(inst.rule, inst.rel, inst.rel2))
        reject("relational rule not enabled for this relation pair");
      int x = inst.labels[0], y = inst.labels[1];
      if (!s.left.has_atom({inst.rel, x, y}) ||
          !s.left.has_atom({inst.rel2, x, y}))
        reject("nover needs the pair in both relations");
      return {};
    }
    case RuleId::cc: {
      if (!cfg.enabled(inst.rule, inst.rel, inst.rel2))
        reject("relational rule not enabled for this relation pair");
      int x = inst.labels[0], y = inst.labels[1];
      if (!s.mentions_label(x) || !s.mentions_label(y))
        reject("cc labels must occur in the conclusion");
      Sequent a = s, b = s;
      a.left.insert_atom({inst.rel, x, y});
      b.left.insert_atom({inst.rel2, x, y});
      return {a, b};
    }
  }
  reject("unknown rule");
}

namespace {

bool is_left_rule(Kind k, bool* branching) {
  switch (k) {
    case Kind::conj: *branching = false; return true;
    case Kind::disj: *branching = true; return true;
    case Kind::impl: *branching = true; return true;
    case Kind::neg: *branching = false; return true;
    default: return false;
  }
}

struct Searcher {
  const SystemConfig& cfg;
  Context& ctx;
  SearchStats stats;
  std::optional<Sequent> saturated;
  std::optional<Rng> shuffle;

  Searcher(const SystemConfig& c, Context& x) : cfg(c), ctx(x) {
    if (cfg.shuffle_seed) shuffle.emplace(cfg.shuffle_seed);
  }

  std::optional<RuleInstance> closing_move(const Sequent& s) const {
    for (const auto& f : s.left.formulas) {
      if (f.formula->kind() == Kind::atom && s.right.has_formula(f))
        return RuleInstance{RuleId::identity, f};
    }
    for (const auto& a : s.left.atoms)
      if (s.right.has_atom(a)) {
        RuleInstance inst{RuleId::identity};
        inst.rel = a.rel;
        inst.labels[0] = a.src;
        inst.labels[1] = a.dst;
        return inst;
      }
    for (const auto& f : s.left.formulas)
      if (f.formula->kind() == Kind::bottom)
        return RuleInstance{RuleId::bot_l, f};
    for (const auto& r : cfg.rules) {
      if (r.rule != RuleId::nover) continue;
      for (const auto& a : s.left.atoms) {
        if (a.rel != r.rel) continue;
        if (s.left.has_atom({r.rel2, a.src, a.dst})) {
          RuleInstance inst{RuleId::nover};
          inst.rel = r.rel;
          inst.rel2 = r.rel2;
          inst.labels[0] = a.src;
          inst.labels[1] = a.dst;
          return inst;
        }
      }
    }
    return std::nullopt;
  }

  // Candidate moves for one tier. Tiers:
  //  2 non-branching logical, 3 fresh-label modal, 4 branching logical,
  //  5 relational saturation, 6 non-fresh modal saturation, 7 cc,
  //  8 total/surj. Fresh labels are only reserved when a move is applied.
  std::vector<RuleInstance> tier_moves(const Sequent& s, int tier) const {
    std::vector<RuleInstance> out;
    switch (tier) {
      case 2: {
        for (const auto& f : s.left.formulas) {
          bool branching;
          if (is_left_rule(f.formula->kind(), &branching) && !branching) {
            RuleId r = f.formula->kind() == Kind::conj ? RuleId::and_l
                                                       : RuleId::not_l;
            out.push_back(RuleInstance{r, f});
          }
        }
        for (const auto& f : s.right.formulas) {
          switch (f.formula->kind()) {
            case Kind::disj: out.push_back(RuleInstance{RuleId::or_r, f}); break;
            case Kind::impl: out.push_back(RuleInstance{RuleId::imp_r, f}); break;
            case Kind::neg: out.push_back(RuleInstance{RuleId::not_r, f}); break;
            default: break;
          }
        }
        break;
      }
      case 3: {
        for (const auto& f : s.right.formulas) {
          Kind k = f.formula->kind();
          if (k == Kind::box_f || k == Kind::box_b) {
            RuleInstance inst{k == Kind::box_f ? RuleId::box_f_r
                                               : RuleId::box_b_r,
                              f};
            inst.rel = -2;  // resolved when applied
            out.push_back(inst);
          }
        }
        for (const auto& f : s.left.formulas) {
          Kind k = f.formula->kind();
          if (k == Kind::dia_f || k == Kind::dia_b) {
            RuleInstance inst{k == Kind::dia_f ? RuleId::dia_f_l
                                               : RuleId::dia_b_l,
                              f};
            inst.rel = -2;
            out.push_back(inst);
          }
        }
        break;
      }
      case 4: {
        for (const auto& f : s.left.formulas) {
          if (f.formula->kind() == Kind::disj)
            out.push_back(RuleInstance{RuleId::or_l, f});
          if (f.formula->kind() == Kind::impl)
            out.push_back(RuleInstance{RuleId::imp_l, f});
        }
        for (const auto& f : s.right.formulas)
          if (f.formula->kind() == Kind::conj)
            out.push_back(RuleInstance{RuleId::and_r, f});
        break;
      }
      case 5: {
        auto ls = s.labels();
        for (const auto& r : cfg.rules) {
          if (r.rule == RuleId::refl) {
            for (int x : ls)
              if (!s.left.has_atom({r.rel, x, x})) {
                RuleInstance inst{RuleId::refl};
                inst.rel = r.rel;
                inst.labels[0] = x;
                out.push_back(inst);
              }
          } else if (r.rule == RuleId::symm) {
            for (const auto& a : s.left.atoms)
              if (a.rel == r.rel && !s.left.has_atom({r.rel, a.dst, a.src})) {
                RuleInstance inst{RuleId::symm};
                inst.rel = r.rel;
                inst.labels[0] = a.src;
                inst.labels[1] = a.dst;
                out.push_back(inst);
              }
          } else if (r.rule == RuleId::collusive) {
            for (int a : ls)
              for (int b : ls) {
                if (!s.left.has_atom({r.rel, a, b})) continue;
                for (int a2 : ls) {
                  if (!s.left.has_atom({r.rel, a2, b})) continue;
                  for (int c : ls) {
                    if (!s.left.has_atom({r.rel, a, c})) continue;
                    if (s.left.has_atom({r.rel, a2, c})) continue;
                    RuleInstance inst{RuleId::collusive};
                    inst.rel = r.rel;
                    inst.labels = {a, b, a2, c};
                    out.push_back(inst);
                  }
                }
              }
          }
        }
        break;
      }
      case 6: {
        for (const auto& f : s.left.formulas) {
          Kind k = f.formula->kind();
          if (k != Kind::box_f && k != Kind::box_b) continue;
          auto rel = ctx.find_relation(f.formula->name());
          if (!rel) continue;
          for (const auto& a : s.left.atoms) {
            if (a.rel != *rel) continue;
            bool fwd = k == Kind::box_f;
            if ((fwd ? a.src : a.dst) != f.label) continue;
            int y = fwd ? a.dst : a.src;
            if (s.left.has_formula({y, f.formula->lhs()})) continue;
            RuleInstance inst{fwd ? RuleId::box_f_l : RuleId::box_b_l, f};
            inst.rel = *rel;
            inst.labels[0] = f.label;
            inst.labels[1] = y;
            out.push_back(inst);
          }
        }
        for (const auto& f : s.right.formulas) {
          Kind k = f.formula->kind();
          if (k != Kind::dia_f && k != Kind::dia_b) continue;
          auto rel = ctx.find_relation(f.formula->name());
          if (!rel) continue;
          for (const auto& a : s.left.atoms) {
            if (a.rel != *rel) continue;
            bool fwd = k == Kind::dia_f;
            if ((fwd ? a.src : a.dst) != f.label) continue;
            int y = fwd ? a.dst : a.src;
            if (s.right.has_formula({y, f.formula->lhs()})) continue;
            RuleInstance inst{fwd ? RuleId::dia_f_r : RuleId::dia_b_r, f};
            inst.rel = *rel;
            inst.labels[0] = f.label;
            inst.labels[1] = y;
            out.push_back(inst);
          }
        }
        break;
      }
      case 7: {
        auto ls = s.labels();
        for (const auto& r : cfg.rules) {
          if (r.rule != RuleId::cc) continue;
          for (int x : ls)
            for (int y : ls) {
              if (s.left.has_atom({r.rel, x, y}) ||
                  s.left.has_atom({r.rel2, x, y}))
                continue;
              RuleInstance inst{RuleId::cc};
              inst.rel = r.rel;
              inst.rel2 = r.rel2;
              inst.labels[0] = x;
              inst.labels[1] = y;
              out.push_back(inst);
            }
        }
        break;
      }
      case 8: {
        auto ls = s.labels();
        for (const auto& r : cfg.rules) {
          if (r.rule != RuleId::total && r.rule != RuleId::surj) continue;
          for (int x : ls) {
            bool covered = false;
            for (const auto& a : s.left.atoms)
              if (a.rel == r.rel &&
                  (r.rule == RuleId::total ? a.src : a.dst) == x)
                covered = true;
            if (covered) continue;
            RuleInstance inst{r.rule};
            inst.rel = r.rel;
            inst.labels[0] = x;
            out.push_back(inst);
          }
        }
        break;
      }
      default: break;
    }
    if (shuffle && out.size() > 1) {
      Rng rng(cfg.shuffle_seed ^ (out.size() * 0x9e3779b9u));
      for (std::size_t i = out.size() - 1; i > 0; --i)
        std::swap(out[i], out[rng.below(i + 1)]);
    }
    return out;
  }

  bool uses_fresh(const RuleInstance& inst) const {
    switch (inst.rule) {
      case RuleId::box_f_r:
      case RuleId::box_b_r:
      case RuleId::dia_f_l:
      case RuleId::dia_b_l:
      case RuleId::total:
      case RuleId::surj: return true;
      default: return false;
    }
  }

  // Reserves the fresh label and resolves the relation tag of modal moves.
  RuleInstance finalize(const Sequent& s, RuleInstance inst) {
    (void)s;
    if (inst.rel == -2) inst.rel = ctx.relation(inst.principal->formula->name());
    if (uses_fresh(inst)) inst.fresh = ctx.fresh_label();
    return inst;
  }

  struct Result {
    Outcome outcome;
    Derivation derivation;
  };

  Result descend(const Sequent& s, const RuleInstance& inst, std::size_t depth,
                 std::size_t fresh_used) {
    std::size_t fu = fresh_used + (uses_fresh(inst) ? 1 : 0);
    stats.fresh_labels = std::max(stats.fresh_labels, fu);
    auto premises = apply_rule(s, inst, cfg, ctx);
    std::vector<Derivation> children;
    bool branch_budget = false;
    for (const auto& p : premises) {
      auto sub = expand(p, depth + 1, fu);
      if (sub.outcome == Outcome::saturated) return sub;
      if (sub.outcome == Outcome::budget_exceeded) {
        branch_budget = true;
        continue;
      }
      children.push_back(std::move(sub.derivation));
    }
    if (branch_budget) return {Outcome::budget_exceeded, {}};
    return {Outcome::proved, Derivation{s, inst, std::move(children)}};
  }

  Result expand(const Sequent& s, std::size_t depth, std::size_t fresh_used) {
    ++stats.nodes;
    stats.max_depth = std::max(stats.max_depth, depth);
    if (depth > cfg.max_depth) return {Outcome::budget_exceeded, {}};

    if (auto close = closing_move(s))
      return {Outcome::proved, Derivation{s, *close, {}}};

    // Closing-move preference: a single-premise move whose premise closes
    // immediately is applied first. Fresh-label tiers cannot produce one.
    if (!shuffle) {
      for (int tier : {2, 5, 6}) {
        for (const auto& cand : tier_moves(s, tier)) {
          auto premises = apply_rule(s, cand, cfg, ctx);
          if (premises.size() == 1 && closing_move(premises[0]))
            return descend(s, cand, depth, fresh_used);
        }
      }
    }

    bool skipped_for_budget = false;
    for (int tier : {2, 3, 4, 5, 6, 7, 8}) {
      for (const auto& cand : tier_moves(s, tier)) {
        if (uses_fresh(cand) && fresh_used >= cfg.max_fresh) {
          skipped_for_budget = true;
          continue;
        }
        return descend(s, finalize(s, cand), depth, fresh_used);
      }
    }

    if (skipped_for_budget) return {Outcome::budget_exceeded, {}};
    if (!saturated) saturated = s;
    return {Outcome::saturated, {}};
  }
};

}  // namespace

ProveResult prove(const Sequent& goal, const SystemConfig& cfg, Context& ctx) {
  cfg.validate(ctx);
  if (goal.left.atoms.empty() && goal.left.formulas.empty() &&
      goal.right.atoms.empty() && goal.right.formulas.empty())
    throw MalformedSequent("goal sequent is empty");
  Searcher searcher(cfg, ctx);
  auto res = searcher.expand(goal, 0, 0);
  ProveResult out;
  out.outcome = res.outcome;
  out.stats = searcher.stats;
  if (res.outcome == Outcome::proved) out.derivation = std::move(res.derivation);
  if (res.outcome == Outcome::saturated) out.saturated = searcher.saturated;
  return out;
}

namespace {

KernelReport kernel_walk(const Derivation& d, const SystemConfig& cfg,
                         const Context& ctx, std::size_t& index) {
  std::size_t my_index = index++;
  std::vector<Sequent> premises;
  try {
    premises = apply_rule(d.conclusion, d.rule, cfg, ctx);
  } catch (const Error& e) {
    return {false, my_index,
            std::string(rule_name(d.rule.rule)) + ": " + e.what()};
  }
  if (premises.size() != d.premises.size())
    return {false, my_index,
            std::string(rule_name(d.rule.rule)) + ": expected " +
                std::to_string(premises.size()) + " premises, found " +
                std::to_string(d.premises.size())};
  for (std::size_t i = 0; i < premises.size(); ++i) {
    if (!(premises[i] == d.premises[i].conclusion))
      return {false, my_index,
              std::string(rule_name(d.rule.rule)) +
                  ": premise does not match the rule schema"};
    auto sub = kernel_walk(d.premises[i], cfg, ctx, index);
    if (!sub.ok) return sub;
  }
  return {true, my_index, ""};
}

}  // namespace

KernelReport check_derivation(const Derivation& d, const SystemConfig& cfg,
                              const Context& ctx) {
  std::size_t index = 0;
  return kernel_walk(d, cfg, ctx, index);
}

std::string to_string(const Sequent& s, const Context& ctx) {
  auto side = [&](const Side& sd) {
    std::string out;
    bool first = true;
    for (const auto& a : sd.atoms) {
      if (!first) out += ", ";
      first = false;
      out += ctx.label_name(a.src) + " " + ctx.relation_name(a.rel) + " " +
             ctx.label_name(a.dst);
    }
    for (const auto& f : sd.formulas) {
      if (!first) out += ", ";
      first = false;
      out += ctx.label_name(f.label) + " : " + modal::to_string(f.formula);
    }
    return out;
  };
  std::string l = side(s.left), r = side(s.right);
  if (l.empty()) return "|- " + r;
  return l + " |- " + r;
}

Sequent parse_sequent(std::string_view text, Context& ctx) {
  std::string src(text);
  std::size_t at = src.find("SEQ:");
  if (at != std::string::npos) src = src.substr(at + 4);
  std::size_t turnstile = src.find("|-");
  if (turnstile == std::string::npos)
    throw ParseError("sequent needs a '|-' separator");
  auto parse_side = [&](std::string_view part, Side& side) {
    std::size_t start = 0;
    while (start <= part.size()) {
      std::size_t comma = part.find(',', start);
      std::string item(part.substr(
          start, comma == std::string_view::npos ? part.size() - start
                                                 : comma - start));
      start = comma == std::string_view::npos ? part.size() + 1 : comma + 1;
      // Trim.
      while (!item.empty() && std::isspace(static_cast<unsigned char>(item.front())))
        item.erase(item.begin());
      while (!item.empty() && std::isspace(static_cast<unsigned char>(item.back())))
        item.pop_back();
      if (item.empty()) continue;
      // Leading label.
      std::size_t i = 0;
      while (i < item.size() && !std::isspace(static_cast<unsigned char>(item[i])) &&
             item[i] != ':')
        ++i;
      std::string first = item.substr(0, i);
      while (i < item.size() && std::isspace(static_cast<unsigned char>(item[i])))
        ++i;
      if (i < item.size() && item[i] == ':') {
        auto f = modal::parse_formula(item.substr(i + 1));
        side.insert_formula({ctx.label(first), f});
        continue;
      }
      // Relational atom: label REL label.
      std::size_t j = i;
      while (j < item.size() && !std::isspace(static_cast<unsigned char>(item[j])))
        ++j;
      std::string rel = item.substr(i, j - i);
      while (j < item.size() && std::isspace(static_cast<unsigned char>(item[j])))
        ++j;
      std::string second = item.substr(j);
      if (first.empty() || rel.empty() || second.empty() ||
          second.find(' ') != std::string::npos)
        throw ParseError("cannot parse sequent item '" + item + "'");
      side.insert_atom(
          {ctx.relation(rel), ctx.label(first), ctx.label(second)});
    }
  };
  Sequent s;
  parse_side(std::string_view(src).substr(0, turnstile), s.left);
  parse_side(std::string_view(src).substr(turnstile + 2), s.right);
  return s;
}

namespace {

void render_text_walk(const Derivation& d, const Context& ctx,
                      std::size_t indent, std::string& out) {
  out.append(indent * 2, ' ');
  out += rule_name(d.rule.rule);
  out += ": ";
  out += to_string(d.conclusion, ctx);
  out += "\n";
  for (const auto& p : d.premises) render_text_walk(p, ctx, indent + 1, out);
}

std::string latex_formula(const FormulaPtr& f, int parent_prec);

std::string latex_unary(const char* op, const FormulaPtr& f) {
  return std::string(op) + " " + latex_formula(f->lhs(), 4);
}

std::string latex_formula(const FormulaPtr& f, int parent_prec) {
  int prec;
  switch (f->kind()) {
    case Kind::impl: prec = 1; break;
    case Kind::disj: prec = 2; break;
    case Kind::conj: prec = 3; break;
    case Kind::atom:
    case Kind::bottom: prec = 5; break;
    default: prec = 4; break;
  }
  std::string body;
  switch (f->kind()) {
    case Kind::atom: body = f->name(); break;
    case Kind::bottom: body = "\\bot"; break;
    case Kind::neg: body = latex_unary("\\neg", f); break;
    case Kind::box_f:
      body = latex_unary(("\\Box^{\\rightarrow}_{" + f->name() + "}").c_str(), f);
      break;
    case Kind::box_b:
      body = latex_unary(("\\Box^{\\leftarrow}_{" + f->name() + "}").c_str(), f);
      break;
    case Kind::dia_f:
      body = latex_unary(("\\Diamond^{\\rightarrow}_{" + f->name() + "}").c_str(), f);
      break;
    case Kind::dia_b:
      body = latex_unary(("\\Diamond^{\\leftarrow}_{" + f->name() + "}").c_str(), f);
      break;
    case Kind::conj:
      body = latex_formula(f->lhs(), 3) + " \\wedge " + latex_formula(f->rhs(), 4);
      break;
    case Kind::disj:
      body = latex_formula(f->lhs(), 2) + " \\vee " + latex_formula(f->rhs(), 3);
      break;
    case Kind::impl:
      body = latex_formula(f->lhs(), 2) + " \\Rightarrow " +
             latex_formula(f->rhs(), 1);
      break;
  }
  if (prec < parent_prec) return "(" + body + ")";
  return body;
}

std::string latex_rule(RuleId r) {
  switch (r) {
    case RuleId::identity: return "\\mathsf{I}";
    case RuleId::bot_l: return "\\bot_L";
    case RuleId::and_l: return "\\wedge_L";
    case RuleId::and_r: return "\\wedge_R";
    case RuleId::or_l: return "\\vee_L";
    case RuleId::or_r: return "\\vee_R";
    case RuleId::imp_l: return "\\Rightarrow_L";
    case RuleId::imp_r: return "\\Rightarrow_R";
    case RuleId::not_l: return "\\neg_L";
    case RuleId::not_r: return "\\neg_R";
    case RuleId::box_f_l: return "\\Box^{\\rightarrow}_L";
    case RuleId::box_f_r: return "\\Box^{\\rightarrow}_R";
    case RuleId::box_b_l: return "\\Box^{\\leftarrow}_L";
    case RuleId::box_b_r: return "\\Box^{\\leftarrow}_R";
    case RuleId::dia_f_l: return "\\Diamond^{\\rightarrow}_L";
    case RuleId::dia_f_r: return "\\Diamond^{\\rightarrow}_R";
    case RuleId::dia_b_l: return "\\Diamond^{\\leftarrow}_L";
    case RuleId::dia_b_r: return "\\Diamond^{\\leftarrow}_R";
    default: return "\\mathit{" + std::string(rule_name(r)) + "}";
  }
}

std::string latex_sequent(const Sequent& s, const Context& ctx) {
  auto side = [&](const Side& sd) {
    std::string out;
    bool first = true;
    for (const auto& a : sd.atoms) {
      if (!first) out += ", ";
      first = false;
      out += ctx.label_name(a.src) + " \\, " + ctx.relation_name(a.rel) +
             " \\, " + ctx.label_name(a.dst);
    }
    for (const auto& f : sd.formulas) {
      if (!first) out += ", ";
      first = false;
      out += ctx.label_name(f.label) + " {:} " + latex_formula(f.formula, 0);
    }
    return out;
  };
  return side(s.left) + " \\vdash " + side(s.right);
}

void render_latex_walk(const Derivation& d, const Context& ctx,
                       std::string& out) {
  out += "\\infer[" + latex_rule(d.rule.rule) + "]{" +
         latex_sequent(d.conclusion, ctx) + "}{";
  for (std::size_t i = 0; i < d.premises.size(); ++i) {
    if (i) out += " & ";
    render_latex_walk(d.premises[i], ctx, out);
  }
  out += "}";
}

}  // namespace

std::string render_text(const Derivation& d, const Context& ctx) {
  std::string out;
  render_text_walk(d, ctx, 0, out);
  return out;
}

std::string render_latex(const Derivation& d, const Context& ctx) {
  std::string out = "\\[\n";
  render_latex_walk(d, ctx, out);
  out += "\n\\]\n";
  return out;
}

modal::KripkeModel extract_countermodel(
    const Sequent& saturated, const Context& ctx,
    std::vector<std::pair<int, std::size_t>>* label_to_world) {
  auto ls = saturated.labels();
  std::size_t n = std::max<std::size_t>(1, ls.size());
  std::vector<std::string> names;
  for (int l : ls) names.push_back(ctx.label_name(l));
  if (ls.empty()) names.push_back("w");
  auto world_of = [&](int label) {
    return static_cast<std::size_t>(
        std::lower_bound(ls.begin(), ls.end(), label) - ls.begin());
  };
  Universe u(n, names);
  modal::KripkeModel m{u, {}, {}};
  for (std::size_t r = 0; r < ctx.relation_count(); ++r) {
    std::vector<Edge> edges;
    for (const auto& a : saturated.left.atoms)
      if (a.rel == static_cast<int>(r))
        edges.emplace_back(world_of(a.src), world_of(a.dst));
    m.relations.emplace_back(ctx.relation_name(static_cast<int>(r)),
                             Relation(u, edges));
  }
  for (const auto& f : saturated.left.formulas) {
    if (f.formula->kind() != Kind::atom) continue;
    Bitset* v = nullptr;
    for (auto& [name, bits] : m.valuation)
      if (name == f.formula->name()) v = &bits;
    if (!v) {
      m.valuation.emplace_back(f.formula->name(), Bitset(n));
      v = &m.valuation.back().second;
    }
    v->set(world_of(f.label));
  }
  if (label_to_world) {
    label_to_world->clear();
    for (int l : ls) label_to_world->emplace_back(l, world_of(l));
  }
  return m;
}

namespace {

Sequent goal_formula(const std::string& text, Context& ctx) {
  Sequent s;
  s.right.insert_formula({ctx.label("x"), modal::parse_formula(text)});
  return s;
}

SystemConfig w_rules(Context& ctx) {
  int rp = ctx.relation("R+"), rm = ctx.relation("R-");
  SystemConfig cfg;
  cfg.rules = {{RuleId::refl, rp},       {RuleId::symm, rp},
               {RuleId::symm, rm},       {RuleId::collusive, rp},
               {RuleId::nover, rp, rm},  {RuleId::cc, rp, rm}};
  return cfg;
}

}  // namespace

std::vector<std::string> preset_names() {
  return {"axiom-C",  "axiom-4",       "axiom-B",      "axiom-W2",
          "axiom-W1-step", "axiom-W1-idem", "axiom-W", "axiom-C-plus"};
}

Preset make_preset(const std::string& name, Context& ctx) {
  if (name == "axiom-C") {
    int r = ctx.relation("R");
    SystemConfig cfg;
    cfg.rules = {{RuleId::collusive, r}};
    return {name, {goal_formula("<f R><b R>[f R] p -> [f R] p", ctx)}, cfg};
  }
  if (name == "axiom-4") {
    int r = ctx.relation("R");
    SystemConfig cfg;
    cfg.rules = {{RuleId::refl, r}, {RuleId::collusive, r}};
    return {name, {goal_formula("[f R] p -> [f R][f R] p", ctx)}, cfg};
  }
  if (name == "axiom-B") {
    int r = ctx.relation("R");
    SystemConfig cfg;
    cfg.rules = {{RuleId::refl, r}, {RuleId::collusive, r}};
    return {name, {goal_formula("p -> [f R]<f R> p", ctx)}, cfg};
  }
  if (name == "axiom-W2")
    return {name,
            {goal_formula("(dia+ dia- p | dia- dia+ p) -> dia- p", ctx)},
            w_rules(ctx)};
  if (name == "axiom-W1-step")
    return {name, {goal_formula("dia+ dia+ p -> dia+ p", ctx)}, w_rules(ctx)};
  if (name == "axiom-W1-idem")
    return {name,
            {goal_formula("dia+ p & dia+ p -> dia+ p", ctx)},
            w_rules(ctx)};
  if (name == "axiom-W")
    return {name,
            {goal_formula("dia+ dia+ p -> dia+ p", ctx),
             goal_formula("(dia+ dia- p | dia- dia+ p) -> dia- p", ctx)},
            w_rules(ctx)};
  if (name == "axiom-C-plus") {
    SystemConfig cfg = w_rules(ctx);
    // Probe for the converse direction: the collusivity scheme for R+ from
    // the frame rules other than collusive itself.
    std::erase_if(cfg.rules,
                  [](const auto& r) { return r.rule == RuleId::collusive; });
    return {name,
            {goal_formula("<f R+><b R+>[f R+] p -> [f R+] p", ctx)},
            cfg};
  }
  throw Error("unknown preset '" + name + "'");
}

}  // namespace quadrel::prover
