#include "powb/poset.hpp"

#include <algorithm>
#include <queue>

namespace powb {

std::string tag_to_string(const Tag& t) {
  switch (t.kind) {
    case TagKind::ground: return "ground";
    case TagKind::e_point: return "e";
    case TagKind::gadget: {
      const char* role = nullptr;
      switch (t.role) {
        case GadgetRole::a_set: role = "A"; break;
        case GadgetRole::b_set: role = "B"; break;
        case GadgetRole::c_set: role = "C"; break;
        case GadgetRole::delta_a: role = "da"; break;
        case GadgetRole::delta_b: role = "db"; break;
        case GadgetRole::delta_c: role = "dc"; break;
        case GadgetRole::gamma: role = "gamma"; break;
      }
      return std::string("gadget:") + role + ":" + std::to_string(t.pair_alpha) + ":" +
             std::to_string(t.pair_beta);
    }
    case TagKind::witness:
      return t.wkind == WitnessKind::pair ? "witness:pair" : "witness:ub";
    case TagKind::spare: return "spare";
  }
  return "ground";
}

Tag tag_from_string(const std::string& s) {
  if (s == "ground") return Tag::ground();
  if (s == "e") return Tag::e_point();
  if (s == "witness:pair") return Tag::witness(WitnessKind::pair);
  if (s == "witness:ub") return Tag::witness(WitnessKind::upper_bound);
  if (s == "spare") return Tag::spare();
  if (s.rfind("gadget:", 0) == 0) {
    auto rest = s.substr(7);
    auto c1 = rest.find(':');
    auto c2 = rest.find(':', c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos) throw ParseError("bad tag: " + s);
    auto role_s = rest.substr(0, c1);
    GadgetRole role;
    if (role_s == "A") role = GadgetRole::a_set;
    else if (role_s == "B") role = GadgetRole::b_set;
    else if (role_s == "C") role = GadgetRole::c_set;
    else if (role_s == "da") role = GadgetRole::delta_a;
    else if (role_s == "db") role = GadgetRole::delta_b;
    else if (role_s == "dc") role = GadgetRole::delta_c;
    else if (role_s == "gamma") role = GadgetRole::gamma;
    else throw ParseError("bad gadget role in tag: " + s);
    Id a = static_cast<Id>(std::stoul(rest.substr(c1 + 1, c2 - c1 - 1)));
    Id b = static_cast<Id>(std::stoul(rest.substr(c2 + 1)));
    return Tag::gadget(role, a, b);
  }
  throw ParseError("bad tag: " + s);
}

namespace {

// Finds a cycle among the edges restricted to the given residual nodes.
std::vector<Id> find_cycle(const std::vector<std::vector<std::size_t>>& succ,
                           const std::vector<char>& residual, const std::vector<Element>& elems) {
  std::size_t n = succ.size();
  std::vector<int> state(n, 0);  // 0 unseen, 1 on stack, 2 done
  std::vector<std::size_t> parent(n, n);
  for (std::size_t s = 0; s < n; ++s) {
    if (!residual[s] || state[s] != 0) continue;
    std::vector<std::pair<std::size_t, std::size_t>> stack{{s, 0}};
    state[s] = 1;
    while (!stack.empty()) {
      auto& [v, i] = stack.back();
      if (i < succ[v].size()) {
        std::size_t w = succ[v][i++];
        if (!residual[w]) continue;
        if (state[w] == 0) {
          state[w] = 1;
          parent[w] = v;
          stack.push_back({w, 0});
        } else if (state[w] == 1) {
          std::vector<Id> cycle{elems[w].id};
          for (std::size_t u = v; u != w; u = parent[u]) cycle.push_back(elems[u].id);
          std::reverse(cycle.begin() + 1, cycle.end());
          return cycle;
        }
      } else {
        state[v] = 2;
        stack.pop_back();
      }
    }
  }
  return {};
}

}  // namespace

Poset Poset::close(std::vector<Element> elements, const std::vector<std::pair<Id, Id>>& pairs,
                   std::size_t carrier_cap) {
  if (elements.size() > carrier_cap)
    throw BudgetExceeded("carrier size " + std::to_string(elements.size()) + " exceeds cap " +
                         std::to_string(carrier_cap));
  std::sort(elements.begin(), elements.end(),
            [](const Element& a, const Element& b) { return a.id < b.id; });
  Poset p;
  p.elems_ = std::move(elements);
  for (std::size_t i = 0; i < p.elems_.size(); ++i) {
    if (i > 0 && p.elems_[i].id == p.elems_[i - 1].id)
      throw PreconditionFailed("duplicate element id " + std::to_string(p.elems_[i].id));
    p.idx_[p.elems_[i].id] = i;
  }
  std::size_t n = p.elems_.size();

  std::vector<std::vector<std::size_t>> succ(n);
  std::vector<std::size_t> indeg(n, 0);
  {
    std::set<std::pair<std::size_t, std::size_t>> seen;
    for (auto [x, y] : pairs) {
      std::size_t px = p.pos(x), py = p.pos(y);
      if (px == py)
        throw CycleDetected({x}, "reflexive pair (" + std::to_string(x) + "," + std::to_string(x) + ")");
      if (seen.insert({px, py}).second) {
        succ[px].push_back(py);
        ++indeg[py];
      }
    }
  }

  // Kahn topological order; leftover in-degrees witness a cycle.
  std::vector<std::size_t> topo;
  topo.reserve(n);
  std::priority_queue<std::size_t, std::vector<std::size_t>, std::greater<>> q;
  for (std::size_t i = 0; i < n; ++i)
    if (indeg[i] == 0) q.push(i);
  while (!q.empty()) {
    std::size_t v = q.top();
    q.pop();
    topo.push_back(v);
    for (auto w : succ[v])
      if (--indeg[w] == 0) q.push(w);
  }
  if (topo.size() != n) {
    std::vector<char> residual(n, 0);
    for (std::size_t i = 0; i < n; ++i) residual[i] = indeg[i] > 0;
    throw CycleDetected(find_cycle(succ, residual, p.elems_), "order relation contains a cycle");
  }

  p.below_.assign(n, Bitset(n));
  p.above_.assign(n, Bitset(n));
  for (std::size_t v : topo) {
    for (std::size_t w : succ[v]) {
      p.below_[w] |= p.below_[v];
      p.below_[w].set(v);
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    p.below_[i].for_each([&](std::size_t j) { p.above_[j].set(i); });
  return p;
}

std::vector<Id> Poset::down_set(Id x) const {
  std::vector<Id> out;
  below_[pos(x)].for_each([&](std::size_t q) { out.push_back(elems_[q].id); });
  return out;
}

std::vector<Id> Poset::up_set(Id x) const {
  std::vector<Id> out;
  above_[pos(x)].for_each([&](std::size_t q) { out.push_back(elems_[q].id); });
  return out;
}

std::vector<Id> Poset::minimal_upper_bounds(Id x, Id y) const {
  if (x == y) throw PreconditionFailed("minimal_upper_bounds needs distinct elements");
  if (comparable(x, y)) return {};
  std::size_t px = pos(x), py = pos(y);
  Bitset common = above_[px];
  common &= above_[py];
  std::vector<Id> out;
  common.for_each([&](std::size_t q) {
    if (!below_[q].intersects(common)) out.push_back(elems_[q].id);
  });
  return out;
}

PairMap Poset::umub_map() const {
  PairMap m;
  for (std::size_t i = 0; i < elems_.size(); ++i) {
    for (std::size_t j = i + 1; j < elems_.size(); ++j) {
      Id x = elems_[i].id, y = elems_[j].id;
      if (comparable(x, y)) continue;
      auto mubs = minimal_upper_bounds(x, y);
      if (mubs.size() == 1) m.set(x, y, mubs[0]);
    }
  }
  return m;
}

std::vector<std::pair<Id, Id>> Poset::lt_pairs() const {
  std::vector<std::pair<Id, Id>> out;
  for (std::size_t j = 0; j < elems_.size(); ++j)
    below_[j].for_each([&](std::size_t i) { out.emplace_back(elems_[i].id, elems_[j].id); });
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::pair<Id, Id>> Poset::hasse_edges() const {
  std::vector<std::pair<Id, Id>> out;
  for (std::size_t j = 0; j < elems_.size(); ++j) {
    below_[j].for_each([&](std::size_t i) {
      // covering pair: nothing strictly between i and j
      Bitset between = above_[i];
      between &= below_[j];
      if (between.none()) out.emplace_back(elems_[i].id, elems_[j].id);
    });
  }
  std::sort(out.begin(), out.end());
  return out;
}

Poset Poset::restrict_to(const std::vector<Id>& ids) const {
  std::vector<Element> elems;
  elems.reserve(ids.size());
  for (Id id : ids) elems.push_back(element(id));
  std::vector<std::pair<Id, Id>> pairs;
  for (Id x : ids)
    for (Id y : ids)
      if (x != y && lt(x, y)) pairs.emplace_back(x, y);
  return close(std::move(elems), pairs, std::max(kDefaultCarrierCap, ids.size()));
}

Poset Poset::extend(const std::vector<Element>& new_elements,
                    const std::vector<std::pair<Id, Id>>& new_pairs,
                    std::size_t carrier_cap) const {
  std::vector<Element> elems = elems_;
  for (const auto& e : new_elements) elems.push_back(e);
  std::vector<std::pair<Id, Id>> pairs = lt_pairs();
  for (auto pr : new_pairs) pairs.push_back(pr);
  return close(std::move(elems), pairs, carrier_cap);
}

namespace {

// Hopcroft-Karp style augmenting search (plain Kuhn is enough at our sizes).
bool try_kuhn(std::size_t v, const std::vector<std::vector<std::size_t>>& adj,
              std::vector<std::size_t>& match_right, std::vector<char>& used, std::size_t none) {
  for (std::size_t w : adj[v]) {
    if (used[w]) continue;
    used[w] = 1;
    if (match_right[w] == none || try_kuhn(match_right[w], adj, match_right, used, none)) {
      match_right[w] = v;
      return true;
    }
  }
  return false;
}

}  // namespace

std::vector<Id> max_antichain(const Poset& p, std::size_t cap) {
  std::size_t n = p.size();
  if (n > cap) throw BudgetExceeded("max_antichain carrier exceeds cap");
  if (n == 0) return {};
  constexpr std::size_t none = static_cast<std::size_t>(-1);

  // Bipartite graph of the comparability relation: left copy u, right copy w
  // for each strict pair u < w. A maximum matching yields a minimum chain
  // cover (size n - |M|), which equals the maximum antichain size; the
  // antichain itself comes from the Koenig cover.
  std::vector<std::vector<std::size_t>> adj(n);
  for (std::size_t j = 0; j < n; ++j)
    p.below_row(j).for_each([&](std::size_t i) { adj[i].push_back(j); });

  std::vector<std::size_t> match_right(n, none);
  std::vector<std::size_t> match_left(n, none);
  for (std::size_t v = 0; v < n; ++v) {
    std::vector<char> used(n, 0);
    try_kuhn(v, adj, match_right, used, none);
  }
  for (std::size_t w = 0; w < n; ++w)
    if (match_right[w] != none) match_left[match_right[w]] = w;

  // Koenig: alternating reachability from unmatched left vertices.
  std::vector<char> visited_left(n, 0), visited_right(n, 0);
  std::vector<std::size_t> stack;
  for (std::size_t v = 0; v < n; ++v)
    if (match_left[v] == none) {
      visited_left[v] = 1;
      stack.push_back(v);
    }
  while (!stack.empty()) {
    std::size_t v = stack.back();
    stack.pop_back();
    for (std::size_t w : adj[v]) {
      if (visited_right[w]) continue;
      visited_right[w] = 1;
      std::size_t u = match_right[w];
      if (u != none && !visited_left[u]) {
        visited_left[u] = 1;
        stack.push_back(u);
      }
    }
  }
  // Cover = unvisited left + visited right; independent set = complement.
  std::vector<Id> out;
  for (std::size_t v = 0; v < n; ++v)
    if (visited_left[v] && !visited_right[v]) out.push_back(p.elements()[v].id);
  return out;
}

std::size_t max_antichain_size(const Poset& p, std::size_t cap) {
  return max_antichain(p, cap).size();
}

bool is_end_extension(const Poset& small, const Poset& big) {
  for (const auto& e : small.elements()) {
    if (!big.contains(e.id)) throw NotASubstructure("element " + std::to_string(e.id) + " missing");
    if (!(big.element(e.id) == e))
      throw NotASubstructure("element " + std::to_string(e.id) + " differs between carriers");
  }
  for (const auto& ex : small.elements())
    for (const auto& ey : small.elements()) {
      if (ex.id == ey.id) continue;
      if (small.lt(ex.id, ey.id) != big.lt(ex.id, ey.id))
        throw NotASubstructure("orders disagree on (" + std::to_string(ex.id) + "," +
                               std::to_string(ey.id) + ")");
    }
  for (const auto& ey : small.elements()) {
    for (Id x : big.down_set(ey.id))
      if (!small.contains(x)) return false;
  }
  return true;
}

}  // namespace powb
