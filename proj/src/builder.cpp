#include "powb/builder.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "powb/rng.hpp"

namespace powb {

namespace {

std::map<Id, Element> element_index(const StepContext& ctx) {
  std::map<Id, Element> out;
  for (const auto& e : ctx.ground.order().elements()) out[e.id] = e;
  for (const auto& e : ctx.alloc.fresh) out[e.id] = e;
  return out;
}

// Closure of seeds under Omega sets and coded F-values (relative to an
// already-present carrier).
std::set<Id> element_closure(const StepContext& ctx, const std::set<Id>& present,
                             const std::vector<Id>& seeds) {
  std::set<Id> s(seeds.begin(), seeds.end());
  auto have = [&](Id id) { return s.count(id) || present.count(id); };
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<Id> batch(s.begin(), s.end());
    for (Id x : batch)
      for (Id w : ctx.alloc.omega_of(x))
        if (!s.count(w) && !present.count(w)) {
          s.insert(w);
          grew = true;
        }
    for (const auto& [k, v] : ctx.fspec.entries())
      if (have(k.first) && have(k.second) && !have(v)) {
        s.insert(v);
        grew = true;
      }
  }
  return s;
}

}  // namespace

std::vector<Id> core_auto(const StepContext& ctx) {
  std::set<Id> out;
  out.insert(ctx.alloc.e);
  for (const auto& g : ctx.alloc.gadgets)
    for (Id m : g.omega()) out.insert(m);
  for (const auto& e : ctx.ground.order().elements())
    if (e.tag.kind != TagKind::witness && e.tag.kind != TagKind::spare) out.insert(e.id);
  return {out.begin(), out.end()};
}

Creature forced_condition(const StepContext& ctx, const std::vector<Id>& carrier) {
  auto index = element_index(ctx);
  std::set<Id> in(carrier.begin(), carrier.end());
  std::vector<Element> elems;
  for (Id id : carrier) {
    auto it = index.find(id);
    if (it == index.end()) throw UnknownElement(id);
    elems.push_back(it->second);
  }
  std::vector<std::pair<Id, Id>> pairs;
  for (auto [a, b] : ctx.ground.order().lt_pairs())
    if (in.count(a) && in.count(b)) pairs.emplace_back(a, b);
  PairMap f;
  for (const auto& [k, v] : ctx.fspec.entries()) {
    if (!in.count(k.first) || !in.count(k.second)) continue;
    if (in.count(v)) f.set(k.first, k.second, v);
    pairs.emplace_back(k.first, v);
    pairs.emplace_back(k.second, v);
  }
  HSet h;
  for (const auto& t : ctx.ground.h().triples())
    if (in.count(t[0]) && in.count(t[1]) && in.count(t[2])) h.insert(t[0], t[1], t[2]);
  return Creature(Poset::close(std::move(elems), pairs), std::move(f), std::move(h));
}

std::vector<Violation> is_condition(const Creature& c, const StepContext& ctx) {
  std::vector<Violation> out = validate_creature(c);
  auto index = element_index(ctx);

  for (const auto& e : c.order().elements()) {
    auto it = index.find(e.id);
    if (it == index.end()) {
      out.push_back({"carrier_scope", {e.id}, "element outside the enlarged carrier"});
    } else if (!(it->second == e) && it->second.tag.kind != TagKind::spare) {
      out.push_back({"carrier_scope", {e.id}, "element metadata differs from the carrier's"});
    }
  }

  std::vector<Id> ground_members;
  for (const auto& e : c.order().elements())
    if (ctx.in_ground(e.id)) ground_members.push_back(e.id);
  Creature ground_part = c.restrict_to(ground_members);
  if (!creature_leq(ground_part, ctx.ground))
    out.push_back({"ground_restriction", ground_members, "ground part does not restrict the ground"});

  for (const auto& e : c.order().elements()) {
    if (ctx.in_ground(e.id)) continue;
    for (Id w : ctx.alloc.omega_of(e.id))
      if (!c.contains(w)) out.push_back({"omega_closure", {e.id, w}, "Omega set sticks out"});
  }

  for (const auto& [k, v] : ctx.fspec.entries()) {
    if (!c.contains(k.first) || !c.contains(k.second)) continue;
    auto got = c.f().get(k.first, k.second);
    if (!got)
      out.push_back({"f_matches_spec", {k.first, k.second, v}, "coded F-pair missing (value present?)"});
    else if (*got != v)
      out.push_back({"f_matches_spec", {k.first, k.second, v}, "coded F-pair has the wrong value"});
  }
  for (const auto& [k, v] : c.f().entries()) {
    auto want = ctx.fspec.get(k.first, k.second);
    if (!want || *want != v)
      out.push_back({"f_matches_spec", {k.first, k.second, v}, "F-entry not in the coded F"});
  }

  try {
    if (!is_end_extension(ground_part.order(), c.order()))
      out.push_back({"end_extension", {}, "new element below a ground element"});
  } catch (const NotASubstructure&) {
    // already reported through ground_restriction
  }
  for (auto v : separation_clauses(ground_part, c).violations) out.push_back(std::move(v));
  return out;
}

std::string Requirement::describe() const {
  switch (kind) {
    case Kind::element: return "element " + std::to_string(x);
    case Kind::pair_witness:
      return "pair_witness (" + std::to_string(x) + "," + std::to_string(y) + ")#" +
             std::to_string(index);
    case Kind::extra_ub:
      return "extra_ub (" + std::to_string(x) + "," + std::to_string(y) + ") above " +
             std::to_string(z);
  }
  return "?";
}

std::vector<Requirement> schedule_requirements(const StepContext& ctx,
                                               const std::vector<Id>& core) {
  std::vector<Requirement> out;
  std::set<Id> seen;
  auto add_element = [&](Id id) {
    if (seen.insert(id).second)
      out.push_back({Requirement::Kind::element, id, 0, 0, 1, Requirement::Status::unmet, ""});
  };
  add_element(ctx.alloc.e);
  for (const auto& e : ctx.ground.order().elements()) add_element(e.id);
  for (const auto& g : ctx.alloc.gadgets) {
    for (Id m : g.a_set) add_element(m);
    for (Id m : g.b_set) add_element(m);
    for (Id m : g.c_set) add_element(m);
    add_element(g.delta_a);
    add_element(g.delta_b);
    add_element(g.delta_c);
    add_element(g.gamma);
  }
  for (Id id : core) add_element(id);

  // Pair requirements are judged on the fully forced skeleton.
  std::vector<Id> skeleton_ids(seen.begin(), seen.end());
  auto closed = element_closure(ctx, {}, skeleton_ids);
  Creature skeleton = forced_condition(ctx, {closed.begin(), closed.end()});
  for (std::size_t i = 0; i < core.size(); ++i)
    for (std::size_t j = i + 1; j < core.size(); ++j) {
      Id u = std::min(core[i], core[j]), v = std::max(core[i], core[j]);
      if (ctx.fspec.contains(u, v)) continue;
      if (!skeleton.order().incomparable(u, v)) continue;
      out.push_back({Requirement::Kind::pair_witness, u, v, 0, 1, Requirement::Status::unmet, ""});
      out.push_back({Requirement::Kind::pair_witness, u, v, 0, 2, Requirement::Status::unmet, ""});
    }
  return out;
}

ConditionBuilder::ConditionBuilder(const StepContext& ctx, BuildOptions opts)
    : ctx_(&ctx), opts_(opts) {
  for (const auto& e : ctx.alloc.spares) spare_order_.push_back(e.id);
  SplitMix64 rng(opts.seed);
  rng.split(0xC0FFEE).shuffle(spare_order_);

  auto closed = element_closure(ctx, {}, {ctx.alloc.e});
  cond_ = forced_condition(ctx, {closed.begin(), closed.end()});
  auto viols = is_condition(cond_, ctx);
  if (!viols.empty())
    throw InternalError("minimal condition invalid: " + viols.front().axiom);
  ++validated_;
  log_.push_back("init carrier=" + std::to_string(cond_.size()));
}

std::vector<Id> ConditionBuilder::mubs(Id x, Id y) const {
  if (!cond_.contains(x) || !cond_.contains(y)) return {};
  return cond_.order().minimal_upper_bounds(x, y);
}

bool ConditionBuilder::commit(Creature next, Requirement& req, const std::string& action) {
  auto viols = is_condition(next, *ctx_);
  ++validated_;
  if (!viols.empty()) {
    req.status = Requirement::Status::blocked;
    req.note = viols.front().axiom + ": " + viols.front().detail;
    log_.push_back(req.describe() + " -> blocked (" + req.note + ")");
    return false;
  }
  cond_ = std::move(next);
  req.note = action;
  log_.push_back(req.describe() + " -> " + action);
  return true;
}

void ConditionBuilder::add_elements(Requirement& req, const std::vector<Id>& seeds) {
  auto index = element_index(*ctx_);
  std::set<Id> present;
  for (const auto& e : cond_.order().elements()) present.insert(e.id);
  std::set<Id> fresh;
  for (Id id : element_closure(*ctx_, present, seeds))
    if (!present.count(id)) fresh.insert(id);

  std::vector<Element> new_elements;
  for (Id id : fresh) {
    auto it = index.find(id);
    if (it == index.end()) throw UnknownElement(id);
    new_elements.push_back(it->second);
  }
  auto have = [&](Id id) { return present.count(id) || fresh.count(id); };

  // Forced order: ground pairs touching a fresh ground element, and
  // argument-below-value pairs of newly complete coded F-pairs.
  std::vector<std::pair<Id, Id>> new_pairs;
  for (Id g : fresh) {
    if (!ctx_->in_ground(g)) continue;
    for (const auto& eh : ctx_->ground.order().elements()) {
      if (!have(eh.id)) continue;
      if (ctx_->ground.order().lt(g, eh.id)) new_pairs.emplace_back(g, eh.id);
      if (ctx_->ground.order().lt(eh.id, g)) new_pairs.emplace_back(eh.id, g);
    }
  }
  PairMap f = cond_.f();
  for (const auto& [k, v] : ctx_->fspec.entries()) {
    if (!have(k.first) || !have(k.second)) continue;
    bool had = present.count(k.first) && present.count(k.second) && present.count(v);
    if (had) continue;
    f.set(k.first, k.second, v);
    new_pairs.emplace_back(k.first, v);
    new_pairs.emplace_back(k.second, v);
  }
  HSet h = cond_.h();
  for (const auto& t : ctx_->ground.h().triples()) {
    if (!have(t[0]) || !have(t[1]) || !have(t[2])) continue;
    h.insert(t[0], t[1], t[2]);
  }

  Poset order = cond_.order().extend(new_elements, new_pairs, opts_.carrier_cap);
  std::string action = "added " + std::to_string(fresh.size()) + " element(s)";
  if (commit(Creature(std::move(order), std::move(f), std::move(h)), req, action))
    req.status = Requirement::Status::met;
}

Id ConditionBuilder::next_spare(WitnessKind kind, Element& out) {
  while (spare_next_ < spare_order_.size()) {
    Id id = spare_order_[spare_next_++];
    if (cond_.contains(id)) continue;
    out = Element{id, Tag::witness(kind), ctx_->alloc.step};
    return id;
  }
  throw SparePoolExhausted("spare pool exhausted after " +
                           std::to_string(spare_order_.size()) + " spares");
}

Requirement::Status ConditionBuilder::extend_to_meet(Requirement& req) {
  switch (req.kind) {
    case Requirement::Kind::element: {
      if (cond_.contains(req.x)) {
        req.status = Requirement::Status::met;
        req.note = "already present";
        return req.status;
      }
      add_elements(req, {req.x});
      return req.status;
    }
    case Requirement::Kind::pair_witness: {
      if (!cond_.contains(req.x) || !cond_.contains(req.y))
        throw PreconditionFailed("pair witness for elements outside the condition");
      if (ctx_->fspec.contains(req.x, req.y)) {
        req.status = Requirement::Status::met;
        req.note = "pair carries a coded F-value";
        return req.status;
      }
      if (cond_.order().comparable(req.x, req.y)) {
        req.status = Requirement::Status::met;
        req.note = "pair comparable";
        return req.status;
      }
      // Prefer pulling a ground witness: for pairs inside the ground the
      // separation clauses forbid fresh ones, and the ground, when built by
      // an earlier step, already carries them.
      for (Id z : ctx_->ground.h().witnesses(req.x, req.y)) {
        if (cond_.contains(z)) continue;
        add_elements(req, {z});
        if (req.status == Requirement::Status::met) req.note = "pulled ground witness " + std::to_string(z);
        return req.status;
      }

      // F-closed down-closure of the pair.
      std::set<Id> d{req.x, req.y};
      for (Id w : cond_.order().down_set(req.x)) d.insert(w);
      for (Id w : cond_.order().down_set(req.y)) d.insert(w);
      bool grew = true;
      while (grew) {
        grew = false;
        for (const auto& [k, v] : cond_.f().entries()) {
          if (!d.count(k.first) || !d.count(k.second) || d.count(v)) continue;
          d.insert(v);
          for (Id w : cond_.order().down_set(v)) d.insert(w);
          grew = true;
        }
      }
      for (Id w : d) {
        if (w == req.x || w == req.y) continue;
        if (cond_.order().lt(req.x, w) && cond_.order().lt(req.y, w)) {
          req.status = Requirement::Status::blocked;
          req.note = "mixed_pair_hazard: closure holds upper bound " + std::to_string(w);
          log_.push_back(req.describe() + " -> blocked (" + req.note + ")");
          return req.status;
        }
      }

      Element z;
      next_spare(WitnessKind::pair, z);
      std::vector<std::pair<Id, Id>> pairs;
      for (Id w : d) pairs.emplace_back(w, z.id);
      Poset order = cond_.order().extend({z}, pairs, opts_.carrier_cap);
      HSet h = cond_.h();
      bool both_ground = ctx_->in_ground(req.x) && ctx_->in_ground(req.y);
      if (!both_ground) h.insert(req.x, req.y, z.id);
      std::string action = std::string(both_ground ? "twin " : "H-witness ") +
                           std::to_string(z.id) + " above " + std::to_string(d.size()) +
                           " element(s)";
      if (commit(Creature(std::move(order), cond_.f(), std::move(h)), req, action))
        req.status = Requirement::Status::met;
      return req.status;
    }
    case Requirement::Kind::extra_ub: {
      auto w = ctx_->fspec.get(req.x, req.y);
      if (!w) throw PreconditionFailed("extra_ub requirement for a pair outside the coded F");
      if (!cond_.contains(req.x) || !cond_.contains(req.y) || !cond_.contains(req.z) ||
          !cond_.contains(*w))
        throw PreconditionFailed("extra_ub elements outside the condition");
      if (req.z == *w) throw PreconditionFailed("extra_ub bound equals the coded value");
      // already met: some upper bound of the pair sits strictly below z
      for (Id s : cond_.order().down_set(req.z))
        if (cond_.order().lt(req.x, s) && cond_.order().lt(req.y, s)) {
          req.status = Requirement::Status::met;
          req.note = "undercut by " + std::to_string(s);
          return req.status;
        }
      if (opts_.depth_budget < 1)
        throw DepthExceeded("depth budget exhausted for " + req.describe());
      if (cond_.order().lt(req.z, *w)) {
        req.status = Requirement::Status::blocked;
        req.note = "coded value already above the bound";
        log_.push_back(req.describe() + " -> blocked (" + req.note + ")");
        return req.status;
      }
      Poset order = cond_.order().extend({}, {{*w, req.z}}, opts_.carrier_cap);
      if (commit(Creature(std::move(order), cond_.f(), cond_.h()), req,
                 "placed " + std::to_string(*w) + " below " + std::to_string(req.z)))
        req.status = Requirement::Status::met;
      return req.status;
    }
  }
  return req.status;
}

std::vector<const Requirement*> BuildResult::unmet() const {
  std::vector<const Requirement*> out;
  for (const auto& r : requirements)
    if (r.status == Requirement::Status::unmet) out.push_back(&r);
  return out;
}

std::vector<const Requirement*> BuildResult::blocked() const {
  std::vector<const Requirement*> out;
  for (const auto& r : requirements)
    if (r.status == Requirement::Status::blocked) out.push_back(&r);
  return out;
}

BuildResult build_generic(const StepContext& ctx, const std::vector<Id>& core,
                          const BuildOptions& opts) {
  BuildResult res;
  res.seed = opts.seed;
  ConditionBuilder builder(ctx, opts);
  std::vector<Requirement> reqs = schedule_requirements(ctx, core);

  bool aborted = false;
  std::string abort_note;
  auto guard = [&](auto&& fn) {
    try {
      fn();
      return true;
    } catch (const SparePoolExhausted& ex) {
      aborted = true;
      abort_note = ex.what();
    } catch (const BudgetExceeded& ex) {
      aborted = true;
      abort_note = ex.what();
    } catch (const DepthExceeded& ex) {
      abort_note = ex.what();
    }
    return false;
  };

  for (auto& r : reqs) {
    if (r.kind != Requirement::Kind::element) continue;
    if (aborted) break;
    guard([&] { builder.extend_to_meet(r); });
  }

  // Lazily discovered upper-bound requirements, keyed to avoid retrying.
  std::map<std::array<Id, 3>, std::size_t> extra_index;
  std::vector<Requirement> extra;

  int pass = 0;
  while (!aborted) {
    ++pass;
    bool changed = false;

    // F-uniqueness: every upper bound of a coded pair must be undercut.
    for (const auto& [k, w] : ctx.fspec.entries()) {
      if (aborted) break;
      if (!builder.element_present(k.first) || !builder.element_present(k.second)) continue;
      const Poset& ord = builder.condition().order();
      Bitset common = ord.above_row(ord.pos(k.first));
      common &= ord.above_row(ord.pos(k.second));
      std::vector<Id> bounds;
      common.for_each([&](std::size_t q) { bounds.push_back(ord.id_at(q)); });
      for (Id t : bounds) {
        if (t == w) continue;
        bool undercut = false;
        for (Id s : ord.down_set(t))
          if (ord.lt(k.first, s) && ord.lt(k.second, s)) {
            undercut = true;
            break;
          }
        if (undercut) continue;
        std::array<Id, 3> key{k.first, k.second, t};
        auto it = extra_index.find(key);
        if (it != extra_index.end() &&
            extra[it->second].status != Requirement::Status::unmet)
          continue;
        if (it == extra_index.end()) {
          extra_index[key] = extra.size();
          extra.push_back({Requirement::Kind::extra_ub, k.first, k.second, t, 1,
                           Requirement::Status::unmet, ""});
          it = extra_index.find(key);
        }
        Requirement& er = extra[it->second];
        bool committed = false;
        guard([&] {
          auto before = er.status;
          builder.extend_to_meet(er);
          committed = er.status == Requirement::Status::met &&
                      before == Requirement::Status::unmet;
        });
        if (er.status == Requirement::Status::unmet && !abort_note.empty()) {
          er.note = abort_note;  // depth budget
          abort_note.clear();
        }
        changed |= committed;
      }
    }

    // Pair witnesses: act whenever a pair sits at exactly one minimal
    // upper bound; two scheduled requirements per pair allow two mints.
    for (auto& r : reqs) {
      if (aborted) break;
      if (r.kind != Requirement::Kind::pair_witness) continue;
      if (r.status == Requirement::Status::blocked) continue;
      if (!builder.element_present(r.x) || !builder.element_present(r.y)) continue;
      if (builder.condition().order().comparable(r.x, r.y)) continue;
      if (builder.mubs(r.x, r.y).size() != 1) continue;
      bool committed = false;
      guard([&] {
        builder.extend_to_meet(r);
        committed = r.status == Requirement::Status::met;
      });
      changed |= committed;
    }

    if (!changed) break;
    if (pass >= opts.pass_budget) {
      aborted = true;
      abort_note = "pass budget exhausted";
      break;
    }
  }

  // Final statuses for the report: a pair requirement is met when the pair
  // is settled away from a unique minimal upper bound.
  for (auto& r : reqs) {
    if (r.status == Requirement::Status::blocked) continue;
    switch (r.kind) {
      case Requirement::Kind::element:
        r.status = builder.element_present(r.x) ? Requirement::Status::met
                                                : Requirement::Status::unmet;
        break;
      case Requirement::Kind::pair_witness: {
        if (!builder.element_present(r.x) || !builder.element_present(r.y)) {
          r.status = Requirement::Status::unmet;
          break;
        }
        bool settled = builder.condition().order().comparable(r.x, r.y) ||
                       ctx.fspec.contains(r.x, r.y) || builder.mubs(r.x, r.y).size() != 1;
        r.status = settled ? Requirement::Status::met : Requirement::Status::unmet;
        break;
      }
      case Requirement::Kind::extra_ub:
        break;
    }
  }

  res.mg = builder.condition();
  res.passes = pass;
  res.requirements = std::move(reqs);
  for (auto& er : extra) res.requirements.push_back(er);
  res.log = builder.log();
  if (aborted) res.log.push_back("aborted: " + abort_note);
  res.conditions_validated = builder.conditions_validated();
  res.completed = !aborted && res.unmet().empty();
  return res;
}

AuditReport audit_exactness(const Creature& mg, const StepContext& ctx,
                            const std::vector<Id>& core, const BuildResult* build) {
  AuditReport rep;

  auto classify = [&](ExactnessDiscrepancy& d) {
    d.classification = "unexplained";
    if (!build) return;
    for (const auto& r : build->requirements) {
      bool touches = (r.x == d.x && r.y == d.y) || (r.x == d.y && r.y == d.x);
      if (!touches) continue;
      if (r.status == Requirement::Status::blocked) {
        d.classification =
            r.note.rfind("mixed_pair_hazard", 0) == 0 ? "hazard_blocked" : "chain_truncation";
        return;
      }
      if (r.status == Requirement::Status::unmet) {
        d.classification = "chain_truncation";
        return;
      }
    }
    if (!build->completed) d.classification = "chain_truncation";
  };

  for (std::size_t i = 0; i < core.size(); ++i) {
    for (std::size_t j = i + 1; j < core.size(); ++j) {
      Id u = std::min(core[i], core[j]), v = std::max(core[i], core[j]);
      ++rep.core_pairs_checked;
      auto fv = ctx.fspec.get(u, v);
      if (!mg.contains(u) || !mg.contains(v)) {
        if (fv) {
          ExactnessDiscrepancy d{u, v, fv, {}, "missing_elements", ""};
          classify(d);
          rep.discrepancies.push_back(std::move(d));
        }
        continue;
      }
      bool comp = mg.order().comparable(u, v);
      if (fv) {
        if (comp) {
          ExactnessDiscrepancy d{u, v, fv, {}, "comparable_f_pair", ""};
          classify(d);
          rep.discrepancies.push_back(std::move(d));
          continue;
        }
        auto mubs = mg.order().minimal_upper_bounds(u, v);
        if (mubs.size() == 1 && mubs[0] == *fv) continue;
        ExactnessDiscrepancy d{u, v, fv, mubs, "", ""};
        d.kind = std::find(mubs.begin(), mubs.end(), *fv) != mubs.end() ? "not_unique"
                                                                        : "wrong_unique";
        classify(d);
        rep.discrepancies.push_back(std::move(d));
      } else if (!comp) {
        auto mubs = mg.order().minimal_upper_bounds(u, v);
        if (mubs.size() == 1) {
          ExactnessDiscrepancy d{u, v, std::nullopt, mubs, "spurious_unique", ""};
          classify(d);
          rep.discrepancies.push_back(std::move(d));
        }
      }
    }
  }

  rep.substructure = creature_leq(ctx.ground, mg);
  try {
    rep.end_extension = rep.substructure && is_end_extension(ctx.ground.order(), mg.order());
  } catch (const NotASubstructure&) {
    rep.end_extension = false;
  }
  if (rep.substructure) {
    rep.separation = separation_clauses(ctx.ground, mg);
  } else {
    rep.separation.ok = false;
    rep.separation.violations.push_back({"ground_restriction", {}, "ground is not <= the result"});
  }
  return rep;
}

}  // namespace powb
