#include "quadrel/modal.hpp"

#include <cctype>
#include <functional>
#include <sstream>

namespace quadrel::modal {

namespace {

std::size_t hash_combine(std::size_t h, std::size_t v) {
  return h ^ (v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2));
}

}  // namespace

Formula::Formula(Kind k, std::string name, FormulaPtr lhs, FormulaPtr rhs)
    : kind_(k), name_(std::move(name)), lhs_(std::move(lhs)),
      rhs_(std::move(rhs)) {
  hash_ = static_cast<std::size_t>(kind_);
  hash_ = hash_combine(hash_, std::hash<std::string>{}(name_));
  if (lhs_) hash_ = hash_combine(hash_, lhs_->hash());
  if (rhs_) hash_ = hash_combine(hash_, rhs_->hash());
}

FormulaPtr Formula::atom(std::string name) {
  return std::make_shared<Formula>(Kind::atom, std::move(name), nullptr,
                                   nullptr);
}
FormulaPtr Formula::bottom() {
  static const FormulaPtr b =
      std::make_shared<Formula>(Kind::bottom, "", nullptr, nullptr);
  return b;
}
FormulaPtr Formula::neg(FormulaPtr f) {
  return std::make_shared<Formula>(Kind::neg, "", std::move(f), nullptr);
}
FormulaPtr Formula::conj(FormulaPtr a, FormulaPtr b) {
  return std::make_shared<Formula>(Kind::conj, "", std::move(a), std::move(b));
}
FormulaPtr Formula::disj(FormulaPtr a, FormulaPtr b) {
  return std::make_shared<Formula>(Kind::disj, "", std::move(a), std::move(b));
}
FormulaPtr Formula::impl(FormulaPtr a, FormulaPtr b) {
  return std::make_shared<Formula>(Kind::impl, "", std::move(a), std::move(b));
}
FormulaPtr Formula::box_f(std::string rel, FormulaPtr f) {
  return std::make_shared<Formula>(Kind::box_f, std::move(rel), std::move(f),
                                   nullptr);
}
FormulaPtr Formula::box_b(std::string rel, FormulaPtr f) {
  return std::make_shared<Formula>(Kind::box_b, std::move(rel), std::move(f),
                                   nullptr);
}
FormulaPtr Formula::dia_f(std::string rel, FormulaPtr f) {
  return std::make_shared<Formula>(Kind::dia_f, std::move(rel), std::move(f),
                                   nullptr);
}
FormulaPtr Formula::dia_b(std::string rel, FormulaPtr f) {
  return std::make_shared<Formula>(Kind::dia_b, std::move(rel), std::move(f),
                                   nullptr);
}

int compare(const FormulaPtr& a, const FormulaPtr& b) {
  if (a == b) return 0;
  if (!a) return -1;
  if (!b) return 1;
  if (a->kind() != b->kind()) return a->kind() < b->kind() ? -1 : 1;
  if (int c = a->name().compare(b->name()); c != 0) return c < 0 ? -1 : 1;
  if (int c = compare(a->lhs(), b->lhs()); c != 0) return c;
  return compare(a->rhs(), b->rhs());
}

bool equal(const FormulaPtr& a, const FormulaPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->hash() != b->hash()) return false;
  return compare(a, b) == 0;
}

namespace {

struct Parser {
  std::string_view text;
  std::size_t pos = 0;

  [[noreturn]] void fail(const std::string& expected) {
    throw ParseError("expected " + expected + " at position " +
                         std::to_string(pos),
                     1, pos);
  }

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])))
      ++pos;
  }

  bool eat(char c) {
    skip_ws();
    if (pos < text.size() && text[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }

  bool eat_str(std::string_view s) {
    skip_ws();
    if (text.substr(pos, s.size()) == s) {
      pos += s.size();
      return true;
    }
    return false;
  }

  char peek() {
    skip_ws();
    return pos < text.size() ? text[pos] : '\0';
  }

  static bool ident_start(char c) { return std::islower(static_cast<unsigned char>(c)); }
  static bool ident_char(char c) {
    return std::islower(static_cast<unsigned char>(c)) ||
           std::isdigit(static_cast<unsigned char>(c)) || c == '_';
  }

  std::string ident() {
    skip_ws();
    if (pos >= text.size() || !ident_start(text[pos])) fail("an atom");
    std::size_t start = pos;
    while (pos < text.size() && ident_char(text[pos])) ++pos;
    return std::string(text.substr(start, pos - start));
  }

  // Relation names may carry a trailing sign, e.g. R+ and R-.
  std::string rel_name() {
    skip_ws();
    if (pos >= text.size() || !std::isalpha(static_cast<unsigned char>(text[pos])))
      fail("a relation name");
    std::size_t start = pos;
    while (pos < text.size() &&
           (std::isalnum(static_cast<unsigned char>(text[pos])) ||
            text[pos] == '_'))
      ++pos;
    if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) ++pos;
    return std::string(text.substr(start, pos - start));
  }

  FormulaPtr parse_implication() {
    FormulaPtr lhs = parse_disjunction();
    skip_ws();
    if (eat_str("->")) return Formula::impl(lhs, parse_implication());
    return lhs;
  }

  FormulaPtr parse_disjunction() {
    FormulaPtr lhs = parse_conjunction();
    while (true) {
      skip_ws();
      // A lone '|' (not the turnstile of sequent syntax).
      if (pos < text.size() && text[pos] == '|' &&
          (pos + 1 >= text.size() || text[pos + 1] != '-')) {
        ++pos;
        lhs = Formula::disj(lhs, parse_conjunction());
      } else {
        return lhs;
      }
    }
  }

  FormulaPtr parse_conjunction() {
    FormulaPtr lhs = parse_unary();
    while (eat('&')) lhs = Formula::conj(lhs, parse_unary());
    return lhs;
  }

  FormulaPtr parse_unary() {
    skip_ws();
    if (eat('~')) return Formula::neg(parse_unary());
    if (eat_str("box+")) return Formula::box_f("R+", parse_unary());
    if (eat_str("box-")) return Formula::box_f("R-", parse_unary());
    if (eat_str("dia+")) return Formula::dia_f("R+", parse_unary());
    if (eat_str("dia-")) return Formula::dia_f("R-", parse_unary());
    if (eat('[')) {
      bool forward = modality_direction(']');
      std::string rel = rel_name();
      if (!eat(']')) fail("']'");
      FormulaPtr body = parse_unary();
      return forward ? Formula::box_f(rel, std::move(body))
                     : Formula::box_b(rel, std::move(body));
    }
    if (eat('<')) {
      bool forward = modality_direction('>');
      std::string rel = rel_name();
      if (!eat('>')) fail("'>'");
      FormulaPtr body = parse_unary();
      return forward ? Formula::dia_f(rel, std::move(body))
                     : Formula::dia_b(rel, std::move(body));
    }
    return parse_primary();
  }

  bool modality_direction(char closer) {
    skip_ws();
    if (pos < text.size() && (text[pos] == 'f' || text[pos] == 'b')) {
      char c = text[pos];
      // 'f'/'b' must be a standalone tag, not the start of an atom.
      if (pos + 1 < text.size() && ident_char(text[pos + 1]))
        fail(std::string("'f' or 'b' before '") + closer + "'");
      ++pos;
      return c == 'f';
    }
    fail(std::string("'f' or 'b' after opening modality bracket"));
  }

  FormulaPtr parse_primary() {
    skip_ws();
    if (eat('(')) {
      FormulaPtr f = parse_implication();
      if (!eat(')')) fail("')'");
      return f;
    }
    std::string name = ident();
    if (name == "false") return Formula::bottom();
    return Formula::atom(std::move(name));
  }
};

}  // namespace

FormulaPtr parse_formula(std::string_view text) {
  Parser p{text};
  FormulaPtr f = p.parse_implication();
  p.skip_ws();
  if (p.pos != text.size())
    throw ParseError("unexpected trailing input at position " +
                         std::to_string(p.pos),
                     1, p.pos);
  return f;
}

namespace {

// Precedence levels for printing: -> 1, | 2, & 3, unary 4, primary 5.
int precedence(Kind k) {
  switch (k) {
    case Kind::impl: return 1;
    case Kind::disj: return 2;
    case Kind::conj: return 3;
    case Kind::neg:
    case Kind::box_f:
    case Kind::box_b:
    case Kind::dia_f:
    case Kind::dia_b: return 4;
    default: return 5;
  }
}

void print(const FormulaPtr& f, int parent_prec, std::ostringstream& os) {
  int prec = precedence(f->kind());
  bool parens = prec < parent_prec;
  if (parens) os << "(";
  switch (f->kind()) {
    case Kind::atom: os << f->name(); break;
    case Kind::bottom: os << "false"; break;
    case Kind::neg:
      os << "~";
      print(f->lhs(), 4, os);
      break;
    case Kind::box_f:
      os << "[f " << f->name() << "] ";
      print(f->lhs(), 4, os);
      break;
    case Kind::box_b:
      os << "[b " << f->name() << "] ";
      print(f->lhs(), 4, os);
      break;
    case Kind::dia_f:
      os << "<f " << f->name() << "> ";
      print(f->lhs(), 4, os);
      break;
    case Kind::dia_b:
      os << "<b " << f->name() << "> ";
      print(f->lhs(), 4, os);
      break;
    case Kind::conj:
      print(f->lhs(), 3, os);
      os << " & ";
      print(f->rhs(), 4, os);
      break;
    case Kind::disj:
      print(f->lhs(), 2, os);
      os << " | ";
      print(f->rhs(), 3, os);
      break;
    case Kind::impl:
      print(f->lhs(), 2, os);
      os << " -> ";
      print(f->rhs(), 1, os);
      break;
  }
  if (parens) os << ")";
}

}  // namespace

std::string to_string(const FormulaPtr& f) {
  std::ostringstream os;
  print(f, 0, os);
  return os.str();
}

const Relation* KripkeModel::find_relation(const std::string& name) const {
  for (const auto& [n, r] : relations)
    if (n == name) return &r;
  return nullptr;
}

const Bitset* KripkeModel::find_atom(const std::string& name) const {
  for (const auto& [n, v] : valuation)
    if (n == name) return &v;
  return nullptr;
}

KripkeModel model_from_frame(
    const balance::SignedFrame& f,
    std::vector<std::pair<std::string, Bitset>> valuation) {
  return KripkeModel{f.universe,
                     {{"R+", f.rplus}, {"R-", f.rminus}},
                     std::move(valuation)};
}

Bitset eval_set(const KripkeModel& m, const FormulaPtr& f) {
  const std::size_t n = m.universe.size();
  switch (f->kind()) {
    case Kind::atom: {
      if (const Bitset* v = m.find_atom(f->name())) return *v;
      if (m.strict_atoms)
        throw Error("unknown atom '" + f->name() + "' in strict model");
      return Bitset(n);
    }
    case Kind::bottom: return Bitset(n);
    case Kind::neg: return eval_set(m, f->lhs()).complement();
    case Kind::conj: return eval_set(m, f->lhs()) & eval_set(m, f->rhs());
    case Kind::disj: return eval_set(m, f->lhs()) | eval_set(m, f->rhs());
    case Kind::impl:
      return eval_set(m, f->lhs()).complement() | eval_set(m, f->rhs());
    default: break;
  }
  const Relation* r = m.find_relation(f->name());
  if (!r) throw UnknownRelation("unknown relation '" + f->name() + "'");
  Bitset body = eval_set(m, f->lhs());
  Bitset out(n);
  for (std::size_t x = 0; x < n; ++x) {
    switch (f->kind()) {
      case Kind::box_f:
        if (r->out(x).subset_of(body)) out.set(x);
        break;
      case Kind::box_b:
        if (r->in(x).subset_of(body)) out.set(x);
        break;
      case Kind::dia_f:
        if (r->out(x).intersects(body)) out.set(x);
        break;
      default:
        if (r->in(x).intersects(body)) out.set(x);
        break;
    }
  }
  return out;
}

bool eval(const KripkeModel& m, std::size_t world, const FormulaPtr& f) {
  if (world >= m.universe.size())
    throw IndexOutOfRange("world outside universe");
  return eval_set(m, f).test(world);
}

SchemeCheck frame_validates_C(const Relation& r) {
  const std::size_t n = r.size();
  if (n > 20)
    throw TooLarge("valuation sweep is limited to 20 worlds");
  auto dia_f = [&](const Bitset& s) {
    Bitset out(n);
    for (std::size_t x = 0; x < n; ++x)
      if (r.out(x).intersects(s)) out.set(x);
    return out;
  };
  auto box_f = [&](const Bitset& s) {
    Bitset out(n);
    for (std::size_t x = 0; x < n; ++x)
      if (r.out(x).subset_of(s)) out.set(x);
    return out;
  };
  auto box_b = [&](const Bitset& s) {
    Bitset out(n);
    for (std::size_t x = 0; x < n; ++x)
      if (r.in(x).subset_of(s)) out.set(x);
    return out;
  };
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    Bitset v(n);
    for (std::size_t i = 0; i < n; ++i)
      if ((mask >> i) & 1) v.set(i);
    Bitset lhs = dia_f(v);
    Bitset rhs = box_f(box_b(lhs));
    std::size_t world = lhs.first_not_in(rhs);
    if (world < n) return {false, v, world};
  }
  return {true, Bitset(n), 0};
}

}  // namespace quadrel::modal
