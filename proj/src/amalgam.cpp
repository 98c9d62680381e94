#include "powb/amalgam.hpp"

#include <algorithm>
#include <set>

namespace powb {

namespace {

std::vector<Id> carrier_ids(const Creature& c) {
  std::vector<Id> out;
  out.reserve(c.size());
  for (const auto& e : c.order().elements()) out.push_back(e.id);
  return out;
}

std::vector<Id> intersection_ids(const Creature& p, const Creature& q) {
  std::vector<Id> out;
  for (const auto& e : p.order().elements())
    if (q.contains(e.id)) out.push_back(e.id);
  return out;
}

void check_agreement(const Creature& p, const Creature& q, const std::vector<Id>& common) {
  for (Id a : common) {
    if (!(p.order().element(a) == q.order().element(a)))
      throw Disagreement(a, a, "element metadata differs on the intersection");
    for (Id b : common) {
      if (a == b) continue;
      if (p.order().lt(a, b) != q.order().lt(a, b))
        throw Disagreement(a, b, "orders disagree on the intersection");
    }
  }
  for (Id a : common)
    for (Id b : common) {
      if (a >= b) continue;
      auto fp = p.f().get(a, b), fq = q.f().get(a, b);
      if (fp.has_value() != fq.has_value() || (fp && *fp != *fq))
        throw Disagreement(a, b, "F disagrees on the intersection");
    }
  std::set<Id> in_common(common.begin(), common.end());
  auto h_restricted = [&](const Creature& c) {
    std::set<HSet::Triple> out;
    for (const auto& t : c.h().triples())
      if (in_common.count(t[0]) && in_common.count(t[1]) && in_common.count(t[2])) out.insert(t);
    return out;
  };
  if (h_restricted(p) != h_restricted(q))
    throw Disagreement(0, 0, "H disagrees on the intersection");
}

Creature union_creature(const Creature& p, const Creature& q, std::optional<std::pair<Id, Id>> extra) {
  std::vector<Element> elems = p.order().elements();
  for (const auto& e : q.order().elements())
    if (!p.contains(e.id)) elems.push_back(e);
  std::vector<std::pair<Id, Id>> pairs = p.order().lt_pairs();
  for (auto pr : q.order().lt_pairs()) pairs.push_back(pr);
  if (extra && extra->first != extra->second) pairs.push_back(*extra);

  PairMap f = p.f();
  for (const auto& [k, v] : q.f().entries()) f.set(k.first, k.second, v);
  HSet h = p.h();
  for (const auto& t : q.h().triples()) h.insert(t[0], t[1], t[2]);
  return Creature(Poset::close(std::move(elems), pairs), std::move(f), std::move(h));
}

}  // namespace

AmalgamInput make_oplus_input(const Creature& p, const Creature& q) {
  auto common = intersection_ids(p, q);
  check_agreement(p, q, common);
  AmalgamInput in;
  in.p = p;
  in.q = q;
  in.r = p.restrict_to(common);
  return in;
}

AmalgamInput make_amalgam_input(const Creature& p, Id x, const Creature& q, Id y) {
  AmalgamInput in = make_oplus_input(p, q);
  if (!p.contains(x)) throw PreconditionFailed("marked point x outside p");
  if (!q.contains(y)) throw PreconditionFailed("marked point y outside q");
  in.x = x;
  in.y = y;

  bool degenerate = (x == y) && p.size() == in.r.size() && q.size() == in.r.size();
  if (!degenerate) {
    if (in.r.contains(x)) throw PreconditionFailed("marked point x lies in the intersection");
    if (in.r.contains(y)) throw PreconditionFailed("marked point y lies in the intersection");
  }
  auto rids = carrier_ids(in.r);
  if (!is_end_extension(in.r.order(), p.order()))
    throw PreconditionFailed("p is not an end extension of the intersection");
  if (!is_end_extension(in.r.order(), q.order()))
    throw PreconditionFailed("q is not an end extension of the intersection");
  if (!separation_clauses(in.r, p).ok)
    throw PreconditionFailed("p is not a separated extension of the intersection");
  if (!separation_clauses(in.r, q).ok)
    throw PreconditionFailed("q is not a separated extension of the intersection");
  if (type_over(p, x, rids) != type_over(q, y, rids))
    throw PreconditionFailed("marked points have different types over the intersection");
  return in;
}

std::vector<Id> type_over(const Creature& c, Id x, const std::vector<Id>& r) {
  if (!c.contains(x)) throw UnknownElement(x);
  std::vector<Id> out;
  for (Id z : r) {
    if (!c.contains(z)) throw UnknownElement(z);
    if (c.order().lt(z, x)) out.push_back(z);
  }
  std::sort(out.begin(), out.end());
  return out;
}

Creature oplus(const Creature& p, const Creature& q) {
  make_oplus_input(p, q);
  return union_creature(p, q, std::nullopt);
}

Creature amal(const Creature& p, Id x, const Creature& q, Id y) {
  make_amalgam_input(p, x, q, y);
  return union_creature(p, q, std::pair<Id, Id>{x, y});
}

std::vector<std::pair<Id, Id>> star_order(const Creature& p, Id x, const Creature& q, Id y) {
  make_amalgam_input(p, x, q, y);
  std::set<std::pair<Id, Id>> rel;
  for (auto pr : p.order().lt_pairs()) rel.insert(pr);
  for (auto pr : q.order().lt_pairs()) rel.insert(pr);
  // third clause: p |= a <= x, q |= y <= b (non-strict on both sides, so
  // the added pair x < y itself is included)
  for (Id a : carrier_ids(p)) {
    if (!p.order().leq(a, x)) continue;
    for (Id b : carrier_ids(q)) {
      if (!q.order().leq(y, b)) continue;
      if (a != b) rel.insert({a, b});
    }
  }
  return {rel.begin(), rel.end()};
}

NineCaseReport check_nine_cases(const Creature& p, Id x, const Creature& q, Id y) {
  make_amalgam_input(p, x, q, y);
  auto star = star_order(p, x, q, y);
  std::set<std::pair<Id, Id>> star_set(star.begin(), star.end());

  auto in_p = [&](Id a, Id b) { return p.contains(a) && p.contains(b) && p.order().lt(a, b); };
  auto in_q = [&](Id a, Id b) { return q.contains(a) && q.contains(b) && q.order().lt(a, b); };
  // A bridge fact proper has b outside p (automatic when y is a fresh
  // point of q; rules the clause out in the degenerate x = y input).
  auto bridge = [&](Id a, Id b) {
    return p.contains(a) && q.contains(b) && !p.contains(b) && p.order().leq(a, x) &&
           q.order().leq(y, b) && a != b;
  };

  NineCaseReport rep;
  std::set<Id> all;
  for (Id v : carrier_ids(p)) all.insert(v);
  for (Id v : carrier_ids(q)) all.insert(v);

  for (auto [a, b] : star) {
    // the clauses that put (a,b) into the relation
    bool ab1 = in_p(a, b), ab2 = in_q(a, b), ab3 = bridge(a, b);
    for (Id c : all) {
      if (!star_set.count({b, c})) continue;
      bool bc1 = in_p(b, c), bc2 = in_q(b, c), bc3 = bridge(b, c);
      bool composed = star_set.count({a, c}) != 0 || a == c;
      // a == c would mean a cycle; flag it through the row check below
      struct RowHit {
        int row;
        bool first, second;
      };
      const RowHit rows[] = {
          {1, ab1, bc1}, {2, ab1, bc2}, {3, ab1, bc3},
          {4, ab2, bc1}, {5, ab2, bc2}, {6, ab2, bc3},
          {7, ab3, bc1}, {8, ab3, bc2}, {9, ab3, bc3},
      };
      for (const auto& rh : rows) {
        if (!rh.first || !rh.second) continue;
        ++rep.counts[rh.row];
        if (rh.row == 7 || rh.row == 9) {
          rep.violations.push_back({rh.row, a, b, c, "impossible row fired"});
        } else if (!composed || a == c) {
          rep.violations.push_back({rh.row, a, b, c, "composition left the relation"});
        }
      }
    }
  }
  return rep;
}

bool key_fact_common_ub(const Creature& p, Id x, const Creature& q, Id y, Id a, Id b, Id c) {
  bool ab_in_p = p.contains(a) && p.contains(b);
  bool ab_in_q = q.contains(a) && q.contains(b);
  if (!ab_in_p && !ab_in_q) throw PreconditionFailed("pair {a,b} inside neither side");
  Creature m = amal(p, x, q, y);
  if (!m.contains(c)) throw UnknownElement(c);

  bool lhs = m.order().lt(a, c) && m.order().lt(b, c);
  bool via_p = p.contains(c) && ab_in_p && p.order().lt(a, c) && p.order().lt(b, c);
  bool via_q = q.contains(c) && ab_in_q && q.order().lt(a, c) && q.order().lt(b, c);
  bool via_bridge = ab_in_p && q.contains(c) && p.order().lt(a, x) && p.order().lt(b, x) &&
                    q.order().leq(y, c);
  bool rhs = via_p || via_q || via_bridge;
  if (lhs != rhs)
    throw InternalError("common upper bound fact failed at (" + std::to_string(a) + "," +
                        std::to_string(b) + "," + std::to_string(c) + ")");
  return lhs;
}

namespace {

// Largest sub-family containing `base_heart` in every set, residuals
// pairwise disjoint: branch and bound over the conflict graph.
void best_independent(const std::vector<std::vector<Id>>& residuals,
                      const std::vector<std::vector<char>>& conflict, std::size_t i,
                      std::vector<std::size_t>& cur, std::vector<std::size_t>& best) {
  if (cur.size() + (residuals.size() - i) <= best.size()) return;  // bound
  if (i == residuals.size()) {
    if (cur.size() > best.size()) best = cur;
    return;
  }
  bool can_take = true;
  for (auto j : cur)
    if (conflict[j][i]) {
      can_take = false;
      break;
    }
  if (can_take) {
    cur.push_back(i);
    best_independent(residuals, conflict, i + 1, cur, best);
    cur.pop_back();
  }
  best_independent(residuals, conflict, i + 1, cur, best);
}

}  // namespace

DeltaSystem find_delta_system(const std::vector<std::vector<Id>>& family, std::size_t min_size) {
  if (min_size == 0 || family.size() < min_size) {
    if (min_size == 0) return DeltaSystem{{}, {}, true};
    throw NotFound("family smaller than requested sub-family");
  }
  std::vector<std::set<Id>> sets;
  sets.reserve(family.size());
  for (const auto& s : family) sets.emplace_back(s.begin(), s.end());

  if (min_size == 1) {
    return DeltaSystem{{0}, family.empty() ? std::vector<Id>{} : std::vector<Id>(sets[0].begin(), sets[0].end()), true};
  }

  // Candidate hearts: all pairwise intersections (a sub-family of size >= 2
  // realizes its heart as such an intersection).
  std::set<std::vector<Id>> hearts;
  for (std::size_t i = 0; i < sets.size(); ++i)
    for (std::size_t j = i + 1; j < sets.size(); ++j) {
      std::vector<Id> h;
      std::set_intersection(sets[i].begin(), sets[i].end(), sets[j].begin(), sets[j].end(),
                            std::back_inserter(h));
      hearts.insert(h);
    }

  bool exact = family.size() <= 20;
  DeltaSystem best;
  best.indices.clear();
  for (const auto& heart : hearts) {
    std::set<Id> hs(heart.begin(), heart.end());
    std::vector<std::size_t> members;
    std::vector<std::vector<Id>> residuals;
    for (std::size_t i = 0; i < sets.size(); ++i) {
      if (!std::includes(sets[i].begin(), sets[i].end(), hs.begin(), hs.end())) continue;
      std::vector<Id> res;
      std::set_difference(sets[i].begin(), sets[i].end(), hs.begin(), hs.end(),
                          std::back_inserter(res));
      members.push_back(i);
      residuals.push_back(std::move(res));
    }
    if (members.size() < min_size) continue;
    std::vector<std::vector<char>> conflict(residuals.size(),
                                            std::vector<char>(residuals.size(), 0));
    for (std::size_t i = 0; i < residuals.size(); ++i)
      for (std::size_t j = i + 1; j < residuals.size(); ++j) {
        std::vector<Id> tmp;
        std::set_intersection(residuals[i].begin(), residuals[i].end(), residuals[j].begin(),
                              residuals[j].end(), std::back_inserter(tmp));
        conflict[i][j] = conflict[j][i] = !tmp.empty();
      }
    std::vector<std::size_t> chosen;
    if (exact) {
      std::vector<std::size_t> cur;
      best_independent(residuals, conflict, 0, cur, chosen);
    } else {
      for (std::size_t i = 0; i < residuals.size(); ++i) {
        bool ok = true;
        for (auto j : chosen)
          if (conflict[j][i]) ok = false;
        if (ok) chosen.push_back(i);
      }
    }
    if (chosen.size() >= min_size && chosen.size() > best.indices.size()) {
      best.indices.clear();
      for (auto k : chosen) best.indices.push_back(members[k]);
      best.heart = heart;
      best.exact = exact;
    }
  }
  if (best.indices.size() < min_size) throw NotFound("no delta system of the requested size");
  std::sort(best.indices.begin(), best.indices.end());
  return best;
}

SccProbeResult scc_probe(const Creature& m, const std::vector<std::pair<Creature, Id>>& marked_subs) {
  for (const auto& [sub, mark] : marked_subs) {
    if (!creature_leq(sub, m)) throw PreconditionFailed("probe substructure is not <= the ambient");
    if (!sub.contains(mark)) throw PreconditionFailed("marked element outside its substructure");
  }
  SccProbeResult res;
  for (std::size_t a = 0; a < marked_subs.size(); ++a) {
    for (std::size_t b = a + 1; b < marked_subs.size(); ++b) {
      const auto& [xa, ma] = marked_subs[a];
      const auto& [xb, mb] = marked_subs[b];
      Creature merged;
      try {
        merged = amal(xa, ma, xb, mb);
      } catch (const Error& err) {
        res.rejected.push_back({a, b, err.what()});
        continue;
      }
      // merged <= m in the probe sense: every amalgamated pair already
      // holds in m, F and H restrictions agree.
      bool ok = true;
      std::string reason;
      for (auto [u, v] : merged.order().lt_pairs())
        if (!m.order().lt(u, v)) {
          ok = false;
          reason = "amalgam pair (" + std::to_string(u) + "," + std::to_string(v) +
                   ") does not hold in the ambient";
          break;
        }
      if (ok) {
        auto ids = [&] {
          std::vector<Id> v;
          for (const auto& e : merged.order().elements()) v.push_back(e.id);
          return v;
        }();
        Creature ambient_restr = m.restrict_to(ids);
        if (!(ambient_restr.f() == merged.f())) {
          ok = false;
          reason = "F restriction disagrees with the ambient";
        } else if (!(ambient_restr.h() == merged.h())) {
          ok = false;
          reason = "H restriction disagrees with the ambient";
        }
      }
      if (ok) {
        res.found = true;
        res.alpha = a;
        res.beta = b;
        res.amalgam = merged;
        return res;
      }
      res.rejected.push_back({a, b, reason});
    }
  }
  return res;
}

}  // namespace powb
