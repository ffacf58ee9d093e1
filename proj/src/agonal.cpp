#include "quadrel/agonal.hpp"

namespace quadrel::agonal {

Relation protection(const Relation& r) {
  const std::size_t n = r.size();
  std::vector<Edge> edges;
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t z = 0; z < n; ++z)
      if (r.in(z).subset_of(r.out(x))) edges.emplace_back(x, z);
  return Relation(r.universe(), edges);
}

Relation actual_protection(const Relation& r) {
  const std::size_t n = r.size();
  std::vector<Edge> edges;
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t z = 0; z < n; ++z)
      if (r.in(z).any() && r.in(z).subset_of(r.out(x)))
        edges.emplace_back(x, z);
  return Relation(r.universe(), edges);
}

ProtectionReport consistency_report(const Relation& r) {
  Relation prot = protection(r);
  Relation actual = actual_protection(r);
  std::optional<Edge> violation;
  const std::size_t n = r.size();
  for (std::size_t x = 0; x < n && !violation; ++x) {
    Bitset both = prot.out(x) & r.out(x);
    if (both.any()) violation = Edge{x, both.first()};
  }
  bool consistent = !violation;
  bool complete = consistent;
  if (complete) {
    for (std::size_t x = 0; x < n && complete; ++x)
      if (!r.out(x).complement().subset_of(prot.out(x))) complete = false;
  }
  return ProtectionReport{std::move(prot), std::move(actual), consistent,
                          complete, violation};
}

}  // namespace quadrel::agonal
