#include "powb/coder.hpp"

#include <algorithm>

namespace powb {

std::vector<Id> Gadget::omega() const {
  std::vector<Id> out{a_set[0], a_set[1], b_set[0], b_set[1], b_set[2],
                      c_set[0], delta_a,  delta_b,  delta_c,  gamma};
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Id> GadgetAllocation::omega_of(Id x) const {
  auto it = member_gadget_.find(x);
  if (it == member_gadget_.end()) return {};
  const Gadget& g = gadgets[it->second];
  std::vector<Id> out = g.omega();
  out.push_back(g.coded_pair.first);
  if (g.coded_pair.second != g.coded_pair.first) out.push_back(g.coded_pair.second);
  std::sort(out.begin(), out.end());
  return out;
}

const Gadget* GadgetAllocation::gadget_of(Id x) const {
  auto it = member_gadget_.find(x);
  return it == member_gadget_.end() ? nullptr : &gadgets[it->second];
}

GadgetAllocation allocate_gadgets(const StepInput& input, std::size_t spare_floor,
                                  std::size_t carrier_cap) {
  for (auto [a, b] : input.relation) {
    if (!input.ground.contains(a)) throw UnknownElement(a);
    if (!input.ground.contains(b)) throw UnknownElement(b);
  }
  std::vector<std::pair<Id, Id>> rel = input.relation;
  std::sort(rel.begin(), rel.end());
  rel.erase(std::unique(rel.begin(), rel.end()), rel.end());

  std::size_t need = 1 + 10 * rel.size() + spare_floor;
  if (input.ground.size() + need > carrier_cap)
    throw BudgetExceeded("allocation would exceed the carrier cap");

  Id next = 0;
  std::uint32_t step = 0;
  for (const auto& e : input.ground.order().elements()) {
    next = std::max(next, e.id + 1);
    step = std::max(step, e.step + 1);
  }

  GadgetAllocation alloc;
  alloc.step = step;
  auto mint = [&](Tag tag) {
    Element e{next++, tag, step};
    alloc.fresh.push_back(e);
    return e.id;
  };

  alloc.e = mint(Tag::e_point());
  for (const auto& pr : rel) {
    Gadget g;
    g.coded_pair = pr;
    auto [al, be] = pr;
    g.a_set = {mint(Tag::gadget(GadgetRole::a_set, al, be)),
               mint(Tag::gadget(GadgetRole::a_set, al, be))};
    g.b_set = {mint(Tag::gadget(GadgetRole::b_set, al, be)),
               mint(Tag::gadget(GadgetRole::b_set, al, be)),
               mint(Tag::gadget(GadgetRole::b_set, al, be))};
    g.c_set = {mint(Tag::gadget(GadgetRole::c_set, al, be))};
    g.delta_a = mint(Tag::gadget(GadgetRole::delta_a, al, be));
    g.delta_b = mint(Tag::gadget(GadgetRole::delta_b, al, be));
    g.delta_c = mint(Tag::gadget(GadgetRole::delta_c, al, be));
    g.gamma = mint(Tag::gadget(GadgetRole::gamma, al, be));
    std::size_t gi = alloc.gadgets.size();
    for (Id m : g.omega()) alloc.member_gadget_[m] = gi;
    alloc.gadgets.push_back(g);
  }
  for (std::size_t s = 0; s < spare_floor; ++s) {
    Id id = mint(Tag::spare());
    alloc.spares.push_back(alloc.fresh.back());
    (void)id;
  }
  return alloc;
}

PairMap encode_relation(const StepInput& input, const GadgetAllocation& alloc) {
  std::vector<std::pair<Id, Id>> rel = input.relation;
  std::sort(rel.begin(), rel.end());
  rel.erase(std::unique(rel.begin(), rel.end()), rel.end());
  if (rel.size() != alloc.gadgets.size())
    throw AllocationMismatch("allocation has a different number of gadgets than R");
  for (std::size_t i = 0; i < rel.size(); ++i)
    if (alloc.gadgets[i].coded_pair != rel[i])
      throw AllocationMismatch("allocation codes different pairs than R");
  for (const auto& e : alloc.fresh)
    if (input.ground.contains(e.id))
      throw AllocationMismatch("allocated id collides with the ground carrier");

  PairMap f = input.ground.f();
  for (const Gadget& g : alloc.gadgets) {
    auto [al, be] = g.coded_pair;
    for (Id x : g.a_set) f.set(al, x, g.delta_a);
    for (Id x : g.b_set) f.set(be, x, g.delta_b);
    for (Id x : g.c_set) f.set(alloc.e, x, g.delta_c);
    f.set(g.delta_a, g.delta_b, g.gamma);
    f.set(g.delta_a, g.delta_c, g.gamma);
    f.set(g.delta_b, g.delta_c, g.gamma);
  }
  return f;
}

std::vector<Element> StepContext::enlarged_elements() const {
  std::vector<Element> out = ground.order().elements();
  for (const auto& e : alloc.fresh) out.push_back(e);
  return out;
}

StepContext make_step_context(const StepInput& input, std::size_t spare_floor,
                              std::size_t carrier_cap) {
  StepContext ctx;
  ctx.ground = input.ground;
  ctx.relation = input.relation;
  std::sort(ctx.relation.begin(), ctx.relation.end());
  ctx.relation.erase(std::unique(ctx.relation.begin(), ctx.relation.end()), ctx.relation.end());
  ctx.alloc = allocate_gadgets(input, spare_floor, carrier_cap);
  ctx.fspec = encode_relation(input, ctx.alloc);
  return ctx;
}

std::set<std::pair<Id, Id>> decode_relation(const Creature& c, Id e) {
  std::set<std::pair<Id, Id>> out;
  if (!c.contains(e)) return out;
  for (const Triangle& t : find_triangles(c)) {
    if (t.base_points.size() != 1) continue;
    if (std::find(t.anchors.begin(), t.anchors.end(), e) == t.anchors.end()) continue;
    std::set<Id> delta(t.vertices.begin(), t.vertices.end());
    // fan-in counts |{x : F(v,x) in Delta}| per element
    std::map<Id, std::size_t> fan;
    for (const auto& [k, v] : c.f().entries()) {
      if (!delta.count(v)) continue;
      ++fan[k.first];
      ++fan[k.second];
    }
    std::vector<Id> twos, threes, fives;
    for (auto [v, n] : fan) {
      if (n == 2) twos.push_back(v);
      if (n == 3) threes.push_back(v);
      if (n == 5) fives.push_back(v);
    }
    for (Id al : twos)
      for (Id be : threes) out.insert({al, be});
    for (Id al : fives) out.insert({al, al});
  }
  return out;
}

bool check_absoluteness(const Creature& c_small, const Creature& c_big, Id e) {
  if (!c_small.contains(e)) throw PreconditionFailed("anchor point outside the small carrier");
  if (!creature_leq(c_small, c_big))
    throw PreconditionFailed("check_absoluteness: not a substructure");
  if (!separation_clauses(c_small, c_big).ok)
    throw PreconditionFailed("check_absoluteness: extension is not separated");
  for (const auto& [k, v] : c_big.f().entries()) {
    if (!c_small.contains(v)) continue;
    if (!c_small.contains(k.first) || !c_small.contains(k.second))
      throw PreconditionFailed("F-pair with an old value sticks out of the old carrier");
  }
  return decode_relation(c_small, e) == decode_relation(c_big, e);
}

}  // namespace powb
