#include "powb/creature.hpp"

#include <algorithm>
#include <set>

namespace powb {

Creature::Creature(Poset order, PairMap f, HSet h)
    : order_(std::move(order)), f_(std::move(f)), h_(std::move(h)) {
  for (const auto& [k, v] : f_.entries()) {
    if (!order_.contains(k.first)) throw UnknownElement(k.first);
    if (!order_.contains(k.second)) throw UnknownElement(k.second);
    if (!order_.contains(v)) throw UnknownElement(v);
  }
  for (const auto& t : h_.triples())
    for (Id id : t)
      if (!order_.contains(id)) throw UnknownElement(id);
}

Creature Creature::restrict_to(const std::vector<Id>& ids) const {
  std::set<Id> keep(ids.begin(), ids.end());
  PairMap f;
  for (const auto& [k, v] : f_.entries())
    if (keep.count(k.first) && keep.count(k.second) && keep.count(v)) f.set(k.first, k.second, v);
  HSet h;
  for (const auto& t : h_.triples())
    if (keep.count(t[0]) && keep.count(t[1]) && keep.count(t[2])) h.insert(t[0], t[1], t[2]);
  return Creature(order_.restrict_to(ids), std::move(f), std::move(h));
}

std::vector<Id> f_closure(const PairMap& f, std::vector<Id> base) {
  std::set<Id> in(base.begin(), base.end());
  bool grew = true;
  while (grew) {
    grew = false;
    for (const auto& [k, v] : f.entries()) {
      if (in.count(k.first) && in.count(k.second) && !in.count(v)) {
        in.insert(v);
        grew = true;
      }
    }
  }
  return {in.begin(), in.end()};
}

namespace {

// Minimal upper bound of an incomparable pair, with the non-strict reading
// of the minimality clause: no z' < z with x <= z' and y <= z'. For
// incomparable x, y this coincides with "no common strict upper bound
// strictly below z" (z' = x would force y <= x).
bool is_min_ub(const Poset& p, Id x, Id y, Id z) {
  if (!p.lt(x, z) || !p.lt(y, z)) return false;
  for (Id zp : p.down_set(z))
    if (p.leq(x, zp) && p.leq(y, zp)) return false;
  return true;
}

}  // namespace

std::vector<Violation> validate_creature(const Creature& c) {
  std::vector<Violation> out;
  const Poset& p = c.order();

  for (const auto& [k, v] : c.f().entries()) {
    Id x = k.first, y = k.second, z = v;
    if (p.comparable(x, y)) {
      out.push_back({"f_incomparable", {x, y, z}, "F defined on a comparable pair"});
      continue;
    }
    if (!p.lt(x, z) || !p.lt(y, z)) {
      out.push_back({"f_upper_bound", {x, y, z}, "F value is not a strict upper bound"});
      continue;
    }
    if (!is_min_ub(p, x, y, z))
      out.push_back({"f_minimal", {x, y, z}, "F value is not a minimal upper bound"});
  }

  // Local finiteness: on a finite carrier every singleton has a finite
  // F-closure; computing it exercises the definition and pins the witness.
  for (const auto& e : p.elements()) {
    auto closure = f_closure(c.f(), {e.id});
    if (closure.size() > p.size())
      out.push_back({"f_locally_finite", {e.id}, "closure escaped the carrier"});
  }

  for (const auto& t : c.h().triples()) {
    Id x = t[0], y = t[1], z = t[2];
    if (p.comparable(x, y)) {
      out.push_back({"h_incomparable", {x, y, z}, "H witness for a comparable pair"});
      continue;
    }
    if (!is_min_ub(p, x, y, z))
      out.push_back({"h_minimal_ub", {x, y, z}, "H witness is not a minimal upper bound"});
    if (c.f().contains(x, y))
      out.push_back({"h_meets_dom_f", {x, y, z}, "H defined on an F-pair"});
  }
  return out;
}

bool creature_leq(const Creature& c1, const Creature& c2) {
  const Poset& p1 = c1.order();
  const Poset& p2 = c2.order();
  for (const auto& e : p1.elements()) {
    if (!p2.contains(e.id)) return false;
    if (!(p2.element(e.id) == e)) return false;
  }
  for (const auto& ex : p1.elements())
    for (const auto& ey : p1.elements()) {
      if (ex.id == ey.id) continue;
      if (p1.lt(ex.id, ey.id) != p2.lt(ex.id, ey.id)) return false;
    }
  // dom(F2) restricted to the small carrier must equal dom(F1), values too.
  for (const auto& [k, v] : c2.f().entries()) {
    if (!p1.contains(k.first) || !p1.contains(k.second)) continue;
    auto v1 = c1.f().get(k.first, k.second);
    if (!v1 || *v1 != v) return false;
  }
  for (const auto& [k, v] : c1.f().entries()) {
    auto v2 = c2.f().get(k.first, k.second);
    if (!v2 || *v2 != v) return false;
  }
  for (const auto& t : c2.h().triples()) {
    if (!p1.contains(t[0]) || !p1.contains(t[1]) || !p1.contains(t[2])) continue;
    if (!c1.h().contains(t[0], t[1], t[2])) return false;
  }
  for (const auto& t : c1.h().triples())
    if (!c2.h().contains(t[0], t[1], t[2])) return false;
  return true;
}

std::vector<Triangle> find_triangles(const Creature& c) {
  // F-neighbourhood graph; triangles are its 3-cliques.
  std::map<Id, std::vector<Id>> nbr;
  for (const auto& [k, v] : c.f().entries()) {
    nbr[k.first].push_back(k.second);
    nbr[k.second].push_back(k.first);
  }

  // Multiplicity of each element as an F-value, and the pairs producing it.
  std::map<Id, std::vector<PairMap::Key>> preimage;
  for (const auto& [k, v] : c.f().entries()) preimage[v].push_back(k);

  std::vector<Triangle> out;
  std::set<std::array<Id, 3>> seen;
  for (const auto& [a, ns] : nbr) {
    for (Id b : ns) {
      if (b <= a) continue;
      for (Id d : ns) {
        if (d <= b) continue;
        if (!c.f().contains(b, d)) continue;
        std::array<Id, 3> vs{a, b, d};
        if (!seen.insert(vs).second) continue;
        Triangle t;
        t.vertices = vs;
        for (Id v : vs) {
          auto it = preimage.find(v);
          if (it != preimage.end() && it->second.size() == 1) t.base_points.push_back(v);
        }
        std::set<Id> anchors;
        for (Id bp : t.base_points)
          for (const auto& k : preimage.at(bp)) {
            anchors.insert(k.first);
            anchors.insert(k.second);
          }
        t.anchors.assign(anchors.begin(), anchors.end());
        out.push_back(std::move(t));
      }
    }
  }
  return out;
}

SeparationResult separation_clauses(const Creature& c1, const Creature& c2) {
  SeparationResult r;
  auto inside = [&](Id id) { return c1.contains(id); };

  for (const auto& t : find_triangles(c2)) {
    int in = 0;
    for (Id v : t.vertices) in += inside(v) ? 1 : 0;
    if (in != 0 && in != 3) {
      r.ok = false;
      r.violations.push_back({"triangle_straddles",
                              {t.vertices[0], t.vertices[1], t.vertices[2]},
                              "triangle crosses the carrier boundary"});
      continue;
    }
    if (in == 0) {
      for (Id a : t.anchors)
        if (inside(a)) {
          r.ok = false;
          r.violations.push_back({"new_triangle_anchored_inside",
                                  {t.vertices[0], t.vertices[1], t.vertices[2], a},
                                  "new triangle anchored at an old point"});
        }
    }
  }
  for (const auto& t : c2.h().triples()) {
    if (inside(t[0]) && inside(t[1]) && !inside(t[2])) {
      r.ok = false;
      r.violations.push_back(
          {"h_witness_escapes", {t[0], t[1], t[2]}, "H witness for an old pair lies outside"});
    }
  }
  return r;
}

SeparationResult is_separated_extension(const Creature& c1, const Creature& c2) {
  if (!creature_leq(c1, c2)) throw PreconditionFailed("is_separated_extension: not a substructure");
  if (!is_end_extension(c1.order(), c2.order()))
    throw PreconditionFailed("is_separated_extension: not an end extension");
  return separation_clauses(c1, c2);
}

}  // namespace powb
