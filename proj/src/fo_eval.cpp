#include "powb/fo/eval.hpp"

#include <algorithm>

namespace powb::fo {

namespace {

Id resolve(const Term& t, const Poset& p, const Assignment& env) {
  if (t.kind == Term::Kind::param) {
    if (!p.contains(t.param)) throw UnknownElement(t.param);
    return t.param;
  }
  auto it = env.find(t.name);
  if (it == env.end()) throw UnboundVariable(t.name);
  if (!p.contains(it->second)) throw UnknownElement(it->second);
  return it->second;
}

struct EvalCtx {
  const Poset& p;
  std::map<std::pair<const Formula*, std::string>, bool> memo;

  bool ev(const FormulaPtr& f, Assignment& env) {
    std::string key;
    bool use_memo = f->kind == Formula::Kind::exists || f->kind == Formula::Kind::forall;
    if (use_memo && memo.size() < 2'000'000) {
      for (const auto& v : f->free_vars()) {
        auto it = env.find(v);
        if (it != env.end()) key += std::to_string(it->second) + ",";
      }
      auto it = memo.find({f.get(), key});
      if (it != memo.end()) return it->second;
    }
    bool r = ev_raw(f, env);
    if (use_memo && !key.empty()) memo[{f.get(), key}] = r;
    if (use_memo && key.empty()) memo[{f.get(), key}] = r;
    return r;
  }

  bool ev_raw(const FormulaPtr& f, Assignment& env) {
    switch (f->kind) {
      case Formula::Kind::tru: return true;
      case Formula::Kind::fls: return false;
      case Formula::Kind::le: return p.leq(resolve(f->lhs, p, env), resolve(f->rhs, p, env));
      case Formula::Kind::eq: return resolve(f->lhs, p, env) == resolve(f->rhs, p, env);
      case Formula::Kind::lnot: return !ev(f->children[0], env);
      case Formula::Kind::land:
        for (const auto& c : f->children)
          if (!ev(c, env)) return false;
        return true;
      case Formula::Kind::lor:
        for (const auto& c : f->children)
          if (ev(c, env)) return true;
        return false;
      case Formula::Kind::implies: return !ev(f->children[0], env) || ev(f->children[1], env);
      case Formula::Kind::iff: return ev(f->children[0], env) == ev(f->children[1], env);
      case Formula::Kind::exists:
      case Formula::Kind::forall: {
        bool is_exists = f->kind == Formula::Kind::exists;
        auto saved = env.find(f->var);
        bool had = saved != env.end();
        Id old = had ? saved->second : 0;
        for (const auto& e : p.elements()) {
          env[f->var] = e.id;
          bool r = ev(f->children[0], env);
          if (is_exists && r) {
            if (had) env[f->var] = old; else env.erase(f->var);
            return true;
          }
          if (!is_exists && !r) {
            if (had) env[f->var] = old; else env.erase(f->var);
            return false;
          }
        }
        if (had) env[f->var] = old; else env.erase(f->var);
        return !is_exists;
      }
    }
    return false;
  }
};

}  // namespace

bool evaluate(const FormulaPtr& f, const Poset& p, const Assignment& env) {
  for (const auto& v : f->free_vars())
    if (!env.count(v)) throw UnboundVariable(v);
  Assignment e = env;
  EvalCtx ctx{p, {}};
  return ctx.ev(f, e);
}

// ---------------------------------------------------------------------------
// extension(): bottom-up relations over <=3 unpinned variables.
// ---------------------------------------------------------------------------

namespace {

// Relation over up to three named variables, dense over carrier positions.
struct Rel {
  std::vector<std::string> vars;  // sorted
  Bitset bits;                    // size n^arity; row-major in vars order
};

class Engine {
 public:
  Engine(const Poset& p, const ExtensionOptions& opts) : p_(p), opts_(opts) {
    n_ = p.size();
  }

  Rel eval(const FormulaPtr& f, std::map<std::string, Id>& pins) {
    std::vector<std::pair<std::string, Id>> relevant;
    for (const auto& v : f->free_vars()) {
      auto it = pins.find(v);
      if (it != pins.end()) relevant.emplace_back(v, it->second);
    }
    std::size_t arity = f->free_vars().size() - relevant.size();
    if (arity > 3) throw BudgetExceeded("formula too wide for the relation engine");
    bool memoable = arity <= 2 || relevant.empty();
    MemoKey key{f.get(), relevant};
    if (memoable) {
      auto it = memo_.find(key);
      if (it != memo_.end()) return it->second;
    }
    Rel r = compute(f, pins);
    if (memoable && memo_.size() < opts_.memo_entries) memo_.emplace(std::move(key), r);
    return r;
  }

 private:
  using MemoKey = std::pair<const Formula*, std::vector<std::pair<std::string, Id>>>;

  const Poset& p_;
  ExtensionOptions opts_;
  std::size_t n_;
  std::uint64_t work_ = 0;
  std::map<MemoKey, Rel> memo_;

  void charge(std::uint64_t words) {
    work_ += words;
    if (work_ > opts_.budget) throw BudgetExceeded("extension budget exhausted");
  }

  std::size_t space(std::size_t arity) const {
    std::size_t s = 1;
    for (std::size_t i = 0; i < arity; ++i) s *= std::max<std::size_t>(n_, 1);
    return arity == 0 ? 1 : s;
  }

  Rel make_rel(std::vector<std::string> vars, bool fill) const {
    Rel r;
    r.vars = std::move(vars);
    r.bits = Bitset(space(r.vars.size()));
    if (fill)
      for (std::size_t i = 0; i < r.bits.size(); ++i) r.bits.set(i);
    return r;
  }

  std::vector<std::string> unpinned(const FormulaPtr& f, const std::map<std::string, Id>& pins) const {
    std::vector<std::string> out;
    for (const auto& v : f->free_vars())
      if (!pins.count(v)) out.push_back(v);
    return out;
  }

  // Aligns r onto the variable list target (superset of r.vars).
  Rel broadcast(const Rel& r, const std::vector<std::string>& target) {
    if (r.vars == target) return r;
    Rel out = make_rel(target, false);
    std::size_t k = target.size();
    std::vector<std::size_t> strides(r.vars.size(), 0);
    // position of each r var inside target
    std::vector<std::size_t> srcpos;
    for (const auto& v : r.vars)
      srcpos.push_back(std::find(target.begin(), target.end(), v) - target.begin());
    charge(space(k) / 64 + 1);
    std::vector<std::size_t> idx(k, 0);
    std::size_t total = space(k);
    for (std::size_t lin = 0; lin < total; ++lin) {
      std::size_t rest = lin, coord[3] = {0, 0, 0};
      for (std::size_t d = k; d-- > 0;) {
        coord[d] = rest % n_;
        rest /= n_;
      }
      std::size_t src = 0;
      for (std::size_t d = 0; d < r.vars.size(); ++d) src = src * n_ + coord[srcpos[d]];
      if (r.bits.test(src)) out.bits.set(lin);
    }
    return out;
  }

  Rel slice(const Rel& r, const std::vector<std::pair<std::string, Id>>& fixed) {
    if (fixed.empty()) return r;
    std::vector<std::string> remaining;
    for (const auto& v : r.vars) {
      bool f = false;
      for (const auto& [fv, _] : fixed)
        if (fv == v) f = true;
      if (!f) remaining.push_back(v);
    }
    Rel out = make_rel(remaining, false);
    std::size_t k = r.vars.size();
    charge(space(remaining.size()) / 32 + 1);
    std::size_t total = space(remaining.size());
    for (std::size_t lin = 0; lin < total; ++lin) {
      std::size_t rest = lin, coord_rem[3] = {0, 0, 0};
      for (std::size_t d = remaining.size(); d-- > 0;) {
        coord_rem[d] = rest % n_;
        rest /= n_;
      }
      std::size_t src = 0, ri = 0;
      for (std::size_t d = 0; d < k; ++d) {
        const auto& v = r.vars[d];
        std::size_t c;
        auto it = std::find_if(fixed.begin(), fixed.end(),
                               [&](const auto& pr) { return pr.first == v; });
        if (it != fixed.end()) c = p_.pos(it->second);
        else c = coord_rem[ri++];
        src = src * n_ + c;
      }
      if (r.bits.test(src)) out.bits.set(lin);
    }
    return out;
  }

  Rel atom(const FormulaPtr& f, const std::map<std::string, Id>& pins) {
    bool is_le = f->kind == Formula::Kind::le;
    auto resolve_pin = [&](const Term& t) -> std::pair<bool, Id> {
      if (t.kind == Term::Kind::param) {
        if (!p_.contains(t.param)) throw UnknownElement(t.param);
        return {true, t.param};
      }
      auto it = pins.find(t.name);
      if (it != pins.end()) return {true, it->second};
      return {false, 0};
    };
    auto [lfix, lid] = resolve_pin(f->lhs);
    auto [rfix, rid] = resolve_pin(f->rhs);
    auto test = [&](Id a, Id b) { return is_le ? p_.leq(a, b) : a == b; };

    if (lfix && rfix) {
      Rel r = make_rel({}, false);
      if (test(lid, rid)) r.bits.set(0);
      return r;
    }
    if (lfix || rfix) {
      const std::string& v = lfix ? f->rhs.name : f->lhs.name;
      Rel r = make_rel({v}, false);
      charge(n_ / 64 + 1);
      for (std::size_t i = 0; i < n_; ++i) {
        Id c = p_.id_at(i);
        if (lfix ? test(lid, c) : test(c, rid)) r.bits.set(i);
      }
      return r;
    }
    // two distinct variables, or twice the same
    if (f->lhs.name == f->rhs.name) {
      Rel r = make_rel({f->lhs.name}, false);
      for (std::size_t i = 0; i < n_; ++i) r.bits.set(i);  // x<=x, x=x
      return r;
    }
    std::vector<std::string> vars{f->lhs.name, f->rhs.name};
    bool swapped = vars[0] > vars[1];
    if (swapped) std::swap(vars[0], vars[1]);
    Rel r = make_rel(vars, false);
    charge(n_ * n_ / 64 + 1);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) {
        Id a = p_.id_at(swapped ? j : i);
        Id b = p_.id_at(swapped ? i : j);
        if (test(a, b)) r.bits.set(i * n_ + j);
      }
    return r;
  }

  Rel compute(const FormulaPtr& f, std::map<std::string, Id>& pins) {
    auto vars = unpinned(f, pins);
    switch (f->kind) {
      case Formula::Kind::tru: return make_rel({}, true);
      case Formula::Kind::fls: return make_rel({}, false);
      case Formula::Kind::le:
      case Formula::Kind::eq: return atom(f, pins);
      case Formula::Kind::lnot: {
        Rel r = broadcast(eval(f->children[0], pins), vars);
        charge(r.bits.size() / 64 + 1);
        Rel out = make_rel(vars, true);
        out.bits.and_not(r.bits);
        return out;
      }
      case Formula::Kind::land:
      case Formula::Kind::lor: {
        bool is_and = f->kind == Formula::Kind::land;
        // cheapest children first; empty/full results short-circuit
        std::vector<std::pair<std::size_t, const FormulaPtr*>> order;
        for (const auto& c : f->children)
          order.emplace_back(unpinned(c, pins).size(), &c);
        std::stable_sort(order.begin(), order.end(),
                         [](const auto& a, const auto& b) { return a.first < b.first; });
        Rel acc = make_rel(vars, is_and);
        for (auto& [a, cp] : order) {
          Rel cr = broadcast(eval(*cp, pins), vars);
          charge(acc.bits.size() / 64 + 1);
          if (is_and) {
            acc.bits &= cr.bits;
            if (acc.bits.none()) break;
          } else {
            acc.bits |= cr.bits;
            if (acc.bits.count() == acc.bits.size()) break;
          }
        }
        return acc;
      }
      case Formula::Kind::implies: {
        Rel a = broadcast(eval(f->children[0], pins), vars);
        Rel b = broadcast(eval(f->children[1], pins), vars);
        Rel out = make_rel(vars, true);
        charge(out.bits.size() / 64 + 1);
        out.bits.and_not(a.bits);
        out.bits |= b.bits;
        return out;
      }
      case Formula::Kind::iff: {
        Rel a = broadcast(eval(f->children[0], pins), vars);
        Rel b = broadcast(eval(f->children[1], pins), vars);
        Rel na = make_rel(vars, true), nb = make_rel(vars, true);
        na.bits.and_not(a.bits);
        nb.bits.and_not(b.bits);
        a.bits &= b.bits;
        na.bits &= nb.bits;
        a.bits |= na.bits;
        charge(a.bits.size() / 16 + 1);
        return a;
      }
      case Formula::Kind::exists:
      case Formula::Kind::forall: {
        bool is_exists = f->kind == Formula::Kind::exists;
        const auto& child = f->children[0];
        bool bound_used =
            std::find(child->free_vars().begin(), child->free_vars().end(), f->var) !=
            child->free_vars().end();
        auto saved = pins.find(f->var);
        bool had = saved != pins.end();
        Id old = had ? saved->second : 0;
        if (had) pins.erase(f->var);  // inner binder shadows outer pin

        Rel acc;
        if (!bound_used) {
          if (n_ == 0) {
            acc = make_rel(vars, !is_exists);
          } else {
            acc = broadcast(eval(child, pins), vars);
          }
        } else {
          acc = make_rel(vars, !is_exists);
          std::size_t full = acc.bits.size();
          for (std::size_t i = 0; i < n_; ++i) {
            pins[f->var] = p_.id_at(i);
            Rel sl = broadcast(eval(child, pins), vars);
            charge(full / 64 + 1);
            if (is_exists) {
              acc.bits |= sl.bits;
              if (acc.bits.count() == full) break;
            } else {
              acc.bits &= sl.bits;
              if (acc.bits.none()) break;
            }
          }
          pins.erase(f->var);
        }
        if (had) pins[f->var] = old;
        return acc;
      }
    }
    return make_rel(vars, false);
  }
};

}  // namespace

std::vector<std::vector<Id>> extension(const FormulaPtr& f, const Poset& p,
                                       std::vector<std::string> vars, const Assignment& pinned,
                                       const ExtensionOptions& opts) {
  std::vector<std::string> free;
  for (const auto& v : f->free_vars())
    if (!pinned.count(v)) free.push_back(v);
  if (vars.empty()) vars = free;
  if (vars.size() != free.size())
    throw PreconditionFailed("extension variable list does not match the free variables");
  {
    auto sorted = vars;
    std::sort(sorted.begin(), sorted.end());
    if (sorted != free)
      throw PreconditionFailed("extension variable list does not match the free variables");
  }
  if (p.empty() && !vars.empty()) return {};

  std::vector<std::vector<Id>> out;
  if (vars.size() <= 3) {
    Engine eng(p, opts);
    std::map<std::string, Id> pins(pinned.begin(), pinned.end());
    Rel rel = eng.eval(f, pins);
    std::size_t n = p.size();
    std::size_t k = rel.vars.size();
    rel.bits.for_each([&](std::size_t lin) {
      std::vector<Id> tup(k);
      std::size_t rest = lin;
      for (std::size_t d = k; d-- > 0;) {
        tup[d] = p.id_at(rest % n);
        rest /= n;
      }
      // reorder from rel.vars (sorted) to requested vars
      std::vector<Id> ordered(k);
      for (std::size_t d = 0; d < k; ++d) {
        auto it = std::find(rel.vars.begin(), rel.vars.end(), vars[d]);
        ordered[d] = tup[it - rel.vars.begin()];
      }
      out.push_back(std::move(ordered));
    });
    std::sort(out.begin(), out.end());
    return out;
  }

  // wider formulas: stream the first requested variable
  for (const auto& e : p.elements()) {
    Assignment pinned2 = pinned;
    pinned2[vars[0]] = e.id;
    auto rest = extension(f, p, {vars.begin() + 1, vars.end()}, pinned2, opts);
    for (auto& t : rest) {
      std::vector<Id> tup{e.id};
      tup.insert(tup.end(), t.begin(), t.end());
      out.push_back(std::move(tup));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::set<std::pair<Id, Id>> extension_pairs(const FormulaPtr& f, const Poset& p,
                                            const std::string& v1, const std::string& v2,
                                            const ExtensionOptions& opts) {
  std::set<std::pair<Id, Id>> out;
  for (auto& t : extension(f, p, {v1, v2}, {}, opts)) out.insert({t[0], t[1]});
  return out;
}

}  // namespace powb::fo
