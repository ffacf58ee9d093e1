#include "quadrel/relation.hpp"

#include <algorithm>
#include <set>

namespace quadrel {

Universe::Universe(std::size_t size) : size_(size) {
  if (size == 0) throw Error("universe size must be at least 1");
}

Universe::Universe(std::size_t size, std::vector<std::string> labels)
    : size_(size), labels_(std::move(labels)) {
  if (size == 0) throw Error("universe size must be at least 1");
  if (!labels_.empty()) {
    if (labels_.size() != size_)
      throw Error("label count does not match universe size");
    std::set<std::string> seen(labels_.begin(), labels_.end());
    if (seen.size() != labels_.size())
      throw Error("universe labels must be pairwise distinct");
  }
}

std::string Universe::display(std::size_t i) const {
  if (i < labels_.size()) return labels_[i];
  return std::to_string(i);
}

std::optional<std::size_t> Universe::index_of(const std::string& label) const {
  for (std::size_t i = 0; i < labels_.size(); ++i)
    if (labels_[i] == label) return i;
  return std::nullopt;
}

Relation::Relation(Universe universe, const std::vector<Edge>& edges)
    : universe_(std::move(universe)) {
  const std::size_t n = universe_.size();
  out_.assign(n, Bitset(n));
  in_.assign(n, Bitset(n));
  for (const auto& [x, y] : edges) {
    if (x >= n || y >= n)
      throw IndexOutOfRange("edge (" + std::to_string(x) + "," +
                            std::to_string(y) + ") outside universe of size " +
                            std::to_string(n));
    out_[x].set(y);
    in_[y].set(x);
  }
}

std::size_t Relation::edge_count() const {
  std::size_t c = 0;
  for (const auto& row : out_) c += row.count();
  return c;
}

std::vector<Edge> Relation::edges() const {
  std::vector<Edge> es;
  for (std::size_t x = 0; x < size(); ++x)
    for (std::size_t y = 0; y < size(); ++y)
      if (has(x, y)) es.emplace_back(x, y);
  return es;
}

Relation Relation::inverse() const {
  Relation r(universe_, {});
  r.out_ = in_;
  r.in_ = out_;
  return r;
}

const char* to_string(BasicProperty p) {
  switch (p) {
    case BasicProperty::reflexive: return "reflexive";
    case BasicProperty::irreflexive: return "irreflexive";
    case BasicProperty::symmetric: return "symmetric";
    case BasicProperty::total: return "total";
    case BasicProperty::surjective: return "surjective";
    case BasicProperty::transitive: return "transitive";
    case BasicProperty::anti_transitive: return "anti_transitive";
  }
  return "?";
}

std::optional<BasicProperty> basic_property_from_string(const std::string& s) {
  static const std::pair<const char*, BasicProperty> table[] = {
      {"reflexive", BasicProperty::reflexive},
      {"irreflexive", BasicProperty::irreflexive},
      {"symmetric", BasicProperty::symmetric},
      {"total", BasicProperty::total},
      {"surjective", BasicProperty::surjective},
      {"transitive", BasicProperty::transitive},
      {"anti_transitive", BasicProperty::anti_transitive},
      {"anti-transitive", BasicProperty::anti_transitive},
  };
  for (const auto& [name, p] : table)
    if (s == name) return p;
  return std::nullopt;
}

PropertyCheck check_basic(const Relation& r, BasicProperty prop) {
  const std::size_t n = r.size();
  switch (prop) {
    case BasicProperty::reflexive:
      for (std::size_t x = 0; x < n; ++x)
        if (!r.has(x, x)) return {false, {x}};
      return {true, {}};
    case BasicProperty::irreflexive:
      for (std::size_t x = 0; x < n; ++x)
        if (r.has(x, x)) return {false, {x}};
      return {true, {}};
    case BasicProperty::symmetric:
      for (std::size_t x = 0; x < n; ++x) {
        std::size_t y = r.out(x).first_not_in(r.in(x));
        if (y < n) return {false, {x, y}};
      }
      return {true, {}};
    case BasicProperty::total:
      for (std::size_t x = 0; x < n; ++x)
        if (r.out(x).none()) return {false, {x}};
      return {true, {}};
    case BasicProperty::surjective:
      for (std::size_t x = 0; x < n; ++x)
        if (r.in(x).none()) return {false, {x}};
      return {true, {}};
    case BasicProperty::transitive:
      for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) {
          if (!r.has(x, y)) continue;
          std::size_t z = r.out(y).first_not_in(r.out(x));
          if (z < n) return {false, {x, y, z}};
        }
      return {true, {}};
    case BasicProperty::anti_transitive:
      for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) {
          if (!r.has(x, y)) continue;
          Bitset bad = r.out(y) & r.out(x);
          if (bad.any()) return {false, {x, y, bad.first()}};
        }
      return {true, {}};
  }
  return {true, {}};
}

Bitset initial_elements(const Relation& r) {
  Bitset s(r.size());
  for (std::size_t x = 0; x < r.size(); ++x)
    if (r.in(x).none()) s.set(x);
  return s;
}

namespace {

// Canonical orientation vectors of Q1..Q8, first atom always as written.
constexpr std::array<std::array<bool, 4>, 8> kPatterns = {{
    {false, false, false, false},  // Q1 confluent
    {false, true, true, false},    // Q2 co-confluent
    {false, false, true, true},    // Q3 collusive
    {false, false, false, true},   // Q4
    {false, false, true, false},   // Q5
    {false, true, false, false},   // Q6
    {false, true, false, true},    // Q7
    {false, true, true, true},     // Q8
}};

}  // namespace

QuadPattern QuadPattern::by_index(int k) {
  if (k < 1 || k > 8) throw Error("quadrangular pattern index must be 1..8");
  const auto& f = kPatterns[static_cast<std::size_t>(k - 1)];
  return QuadPattern(f[0], f[1], f[2], f[3]);
}

std::optional<QuadPattern> QuadPattern::by_name(const std::string& name) {
  if (name == "confluent") return confluent();
  if (name == "co-confluent" || name == "co_confluent" || name == "protective")
    return co_confluent();
  if (name == "collusive") return collusive();
  if ((name.size() == 2) && (name[0] == 'Q' || name[0] == 'q') &&
      name[1] >= '1' && name[1] <= '8')
    return by_index(name[1] - '0');
  return std::nullopt;
}

QuadPattern QuadPattern::canonical() const {
  if (!rev_[0]) return *this;
  // Renaming x<->y, z<->w turns a reversed first atom into the written
  // orientation, swaps the roles of the second and third atoms, and flips
  // the fourth.
  return QuadPattern(false, rev_[2], rev_[1], !rev_[3]);
}

std::string QuadPattern::name() const {
  const auto c = canonical().rev_;
  for (std::size_t i = 0; i < kPatterns.size(); ++i)
    if (kPatterns[i] == c) return "Q" + std::to_string(i + 1);
  return "?";
}

QuadCheck check_quadrangular(const Relation& r, QuadPattern pattern) {
  const auto rev = pattern.reversed();
  const std::size_t n = r.size();
  // For each (x,y) satisfying the first atom, the remaining atoms fix the z
  // candidates A2(x,z), the w candidates A3(y,w), and the consequent row
  // A4(z,.), so the inner test is one row containment per z.
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      if (!(rev[0] ? r.has(y, x) : r.has(x, y))) continue;
      const Bitset& zs = rev[1] ? r.in(x) : r.out(x);
      const Bitset& ws = rev[2] ? r.in(y) : r.out(y);
      for (std::size_t z = 0; z < n; ++z) {
        if (!zs.test(z)) continue;
        const Bitset& ok = rev[3] ? r.in(z) : r.out(z);
        std::size_t w = ws.first_not_in(ok);
        if (w < n) return {false, QuadWitness{x, y, z, w}};
      }
    }
  }
  return {true, std::nullopt};
}

bool is_collusive_fast(const Relation& r) {
  const std::size_t n = r.size();
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t w = x + 1; w < n; ++w)
      if (r.out(x).intersects(r.out(w)) && r.out(x) != r.out(w)) return false;
  return true;
}

bool is_collusion(const Relation& r) { return !collusion_defect(r); }

std::optional<std::string> collusion_defect(const Relation& r) {
  if (!is_collusive_fast(r)) return "collusive";
  if (!check_basic(r, BasicProperty::total).holds) return "total";
  if (!check_basic(r, BasicProperty::surjective).holds) return "surjective";
  return std::nullopt;
}

}  // namespace quadrel
