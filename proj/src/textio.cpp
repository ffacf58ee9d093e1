#include "quadrel/textio.hpp"

#include <fstream>
#include <sstream>

namespace quadrel::textio {

namespace {

std::vector<std::string> tokens(const std::string& line) {
  std::string stripped = line;
  if (auto hash = stripped.find('#'); hash != std::string::npos)
    stripped.resize(hash);
  std::istringstream is(stripped);
  std::vector<std::string> out;
  std::string t;
  while (is >> t) out.push_back(t);
  return out;
}

std::size_t parse_index(const std::string& t, std::size_t limit,
                        std::size_t line_no) {
  std::size_t value = 0;
  if (t.empty()) throw ParseError("expected an element index", line_no);
  for (char c : t) {
    if (c < '0' || c > '9')
      throw ParseError("expected an element index, got '" + t + "'", line_no);
    value = value * 10 + static_cast<std::size_t>(c - '0');
  }
  if (value >= limit)
    throw ParseError("element " + t + " outside universe of size " +
                         std::to_string(limit),
                     line_no);
  return value;
}

}  // namespace

const Relation* RelationDocument::find(const std::string& name) const {
  for (const auto& nr : relations)
    if (nr.name == name) return &nr.rel;
  return nullptr;
}

RelationDocument parse_document(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;

  std::size_t size = 0;
  std::vector<std::string> labels;
  bool implicit_reflexive = false;
  struct Section {
    bool is_val;
    std::string name;
    std::vector<Edge> edges;
    std::vector<std::size_t> worlds;
  };
  std::vector<Section> sections;

  while (std::getline(in, line)) {
    ++line_no;
    auto ts = tokens(line);
    if (ts.empty()) continue;
    if (ts[0] == "universe") {
      if (size != 0) throw ParseError("duplicate universe line", line_no);
      if (ts.size() != 2)
        throw ParseError("universe line needs exactly one count", line_no);
      size = parse_index(ts[1], SIZE_MAX, line_no);
      if (size == 0) throw ParseError("universe size must be positive", line_no);
    } else if (ts[0] == "labels") {
      if (size == 0)
        throw ParseError("labels line before universe line", line_no);
      labels.assign(ts.begin() + 1, ts.end());
      if (labels.size() != size)
        throw ParseError("expected " + std::to_string(size) + " labels",
                         line_no);
    } else if (ts[0] == "implicit-reflexive") {
      implicit_reflexive = true;
    } else if (ts[0] == "rel") {
      if (size == 0) throw ParseError("rel section before universe line", line_no);
      if (ts.size() != 2) throw ParseError("rel line needs a name", line_no);
      sections.push_back({false, ts[1], {}, {}});
    } else if (ts[0] == "val") {
      if (size == 0) throw ParseError("val section before universe line", line_no);
      if (ts.size() != 2) throw ParseError("val line needs an atom name", line_no);
      sections.push_back({true, ts[1], {}, {}});
    } else if (sections.empty()) {
      throw ParseError("unexpected line outside a section: '" + ts[0] + "'",
                       line_no);
    } else if (sections.back().is_val) {
      if (ts.size() != 1)
        throw ParseError("valuation lines carry one world index", line_no);
      sections.back().worlds.push_back(parse_index(ts[0], size, line_no));
    } else {
      if (ts.size() != 2)
        throw ParseError("edge lines carry two element indices", line_no);
      sections.back().edges.emplace_back(parse_index(ts[0], size, line_no),
                                         parse_index(ts[1], size, line_no));
    }
  }
  if (size == 0) throw ParseError("missing universe line", line_no);

  RelationDocument doc;
  doc.universe = labels.empty() ? Universe(size) : Universe(size, labels);
  doc.implicit_reflexive = implicit_reflexive;
  for (auto& s : sections) {
    if (s.is_val) {
      Bitset v(size);
      for (std::size_t w : s.worlds) v.set(w);
      doc.valuations.emplace_back(s.name, v);
    } else {
      doc.relations.push_back({s.name, Relation(doc.universe, s.edges)});
    }
  }
  return doc;
}

RelationDocument load_document(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_document(buf.str());
}

std::string write_document(const RelationDocument& doc) {
  std::ostringstream os;
  os << "universe " << doc.universe.size() << "\n";
  if (doc.universe.has_labels()) {
    os << "labels";
    for (const auto& l : doc.universe.labels()) os << " " << l;
    os << "\n";
  }
  if (doc.implicit_reflexive) os << "implicit-reflexive\n";
  for (const auto& nr : doc.relations) {
    os << "rel " << nr.name << "\n";
    for (const auto& [x, y] : nr.rel.edges()) {
      if (doc.implicit_reflexive && nr.name == "R+" && x == y) continue;
      os << x << " " << y << "\n";
    }
  }
  for (const auto& [name, v] : doc.valuations) {
    os << "val " << name << "\n";
    for (std::size_t w : v.to_indices()) os << w << "\n";
  }
  return os.str();
}

Relation single_relation(const RelationDocument& doc) {
  if (doc.relations.empty())
    throw ParseError("document contains no relation section");
  return doc.relations.front().rel;
}

balance::SignedFrame frame_from_document(const RelationDocument& doc) {
  const Relation* plus = doc.find("R+");
  const Relation* minus = doc.find("R-");
  if (!plus || !minus)
    throw ParseError("frame documents need rel R+ and rel R- sections");
  Relation rplus = *plus;
  if (doc.implicit_reflexive) {
    auto edges = rplus.edges();
    for (std::size_t x = 0; x < doc.universe.size(); ++x)
      edges.emplace_back(x, x);
    rplus = Relation(doc.universe, edges);
  }
  return balance::SignedFrame(doc.universe, rplus, *minus);
}

balance::SignedFrame load_frame(const std::string& path) {
  return frame_from_document(load_document(path));
}

std::string write_frame(const balance::SignedFrame& f) {
  RelationDocument doc;
  doc.universe = f.universe;
  doc.relations.push_back({"R+", f.rplus});
  doc.relations.push_back({"R-", f.rminus});
  return write_document(doc);
}

modal::KripkeModel model_from_document(const RelationDocument& doc) {
  modal::KripkeModel m{doc.universe, {}, {}};
  for (const auto& nr : doc.relations) m.relations.emplace_back(nr.name, nr.rel);
  m.valuation = doc.valuations;
  return m;
}

modal::KripkeModel load_model(const std::string& path) {
  return model_from_document(load_document(path));
}

}  // namespace quadrel::textio
