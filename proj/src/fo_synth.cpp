#include "powb/fo/synth.hpp"

#include <algorithm>

namespace powb::fo {

std::map<Id, Id> graph_transform(const std::set<std::pair<Id, Id>>& b, const Poset& p) {
  std::map<Id, std::vector<Id>> rows;
  for (auto [x, y] : b) {
    if (!p.contains(x)) throw UnknownElement(x);
    if (!p.contains(y)) throw UnknownElement(y);
    rows[x].push_back(y);
  }
  std::map<Id, Id> g;
  for (const auto& e : p.elements()) {
    auto it = rows.find(e.id);
    if (it == rows.end()) throw NotAFunctionGraph(e.id);
    const auto& row = it->second;
    std::optional<Id> val;
    for (Id z : row) {
      bool below_all = true;
      for (Id y : row)
        if (!p.leq(z, y)) {
          below_all = false;
          break;
        }
      if (below_all) {
        val = z;
        break;  // a second minimum would equal this one
      }
    }
    if (!val) throw NotAFunctionGraph(e.id);
    g[e.id] = *val;
  }
  return g;
}

std::vector<Id> lower_fringe(const Poset& p, const std::vector<Id>& a) {
  std::set<Id> in(a.begin(), a.end());
  for (Id x : a)
    if (!p.contains(x)) throw UnknownElement(x);
  // minimal elements of A form a maximal antichain in A
  std::vector<Id> antichain;
  for (Id x : a) {
    bool minimal = true;
    for (Id y : a)
      if (y != x && p.lt(y, x)) {
        minimal = false;
        break;
      }
    if (minimal) antichain.push_back(x);
  }
  std::set<Id> fringe(antichain.begin(), antichain.end());
  for (Id b : antichain)
    for (Id x : a)
      if (p.lt(x, b)) fringe.insert(x);
  return {fringe.begin(), fringe.end()};
}

namespace {

using F = Formula;
Term V(const std::string& s) { return Term::v(s); }

// x and y incomparable
FormulaPtr incomp(const Term& a, const Term& b) {
  return F::land({F::lnot(F::le(a, b)), F::lnot(F::le(b, a))});
}

// w is a strict common upper bound of a,b
FormulaPtr ub3(const Term& a, const Term& b, const Term& w) {
  return F::land({F::lt(a, w), F::lt(b, w)});
}

// w is a minimal upper bound: no common upper bound strictly below it
FormulaPtr mub3(const Term& a, const Term& b, const Term& w, const std::string& s) {
  return F::land({ub3(a, b, w),
                  F::forall(s, F::implies(ub3(a, b, V(s)), F::lnot(F::lt(V(s), w))))});
}

// the pair function: w is the unique minimal upper bound of incomparable a,b
FormulaPtr fdef(const Term& a, const Term& b, const Term& w, const std::string& suffix) {
  return F::land({incomp(a, b), mub3(a, b, w, "s" + suffix),
                  F::forall("t" + suffix,
                            F::implies(mub3(a, b, V("t" + suffix), "r" + suffix),
                                       F::eq(V("t" + suffix), w)))});
}

}  // namespace

FormulaPtr build_decoder_formula(Id e) {
  Term E = Term::p(e);

  // fdom(a,b): the pair carries a function value
  auto fdom = [&](const std::string& a, const std::string& b, const std::string& sfx) {
    return F::exists("w" + sfx, fdef(V(a), V(b), V("w" + sfx), sfx));
  };

  // pre(a, b): a is the function value of some pair containing b
  auto pre = [&](const Term& a, const std::string& b, const std::string& sfx) {
    return F::exists("c" + sfx, fdef(V(b), V("c" + sfx), a, sfx));
  };

  // base point: the value of exactly one unordered pair, counted through
  // the two-element set of its pair partners
  auto base_point = [&](const Term& a, const std::string& sfx) {
    std::string b1 = "b1" + sfx, b2 = "b2" + sfx, b0 = "b0" + sfx;
    return F::exists(
        b1, F::land({pre(a, b1, sfx + "p"),
                     F::exists(b2, F::land({F::lnot(F::eq(V(b1), V(b2))), pre(a, b2, sfx + "q"),
                                            F::forall(b0, F::implies(pre(a, b0, sfx + "r"),
                                                                     F::lor({F::eq(V(b0), V(b1)),
                                                                             F::eq(V(b0), V(b2))})))}))}));
  };

  auto in_delta = [&](const Term& w) {
    return F::lor({F::eq(w, V("d1")), F::eq(w, V("d2")), F::eq(w, V("d3"))});
  };

  // gm(v, x): F(v, x) lands in the triangle
  auto gm = [&](const std::string& v, const std::string& x, const std::string& sfx) {
    return F::exists("w" + sfx,
                     F::land({fdef(V(v), V(x), V("w" + sfx), sfx), in_delta(V("w" + sfx))}));
  };

  // exactly k witnesses x with F(v,x) in the triangle
  auto count_exact = [&](const std::string& v, int k, const std::string& sfx) {
    std::vector<std::string> xs;
    for (int i = 1; i <= k; ++i) xs.push_back("x" + std::to_string(i) + sfx);
    std::string x0 = "x0" + sfx;
    std::vector<FormulaPtr> inner;
    for (std::size_t i = 0; i < xs.size(); ++i)
      for (std::size_t j = i + 1; j < xs.size(); ++j)
        inner.push_back(F::lnot(F::eq(V(xs[i]), V(xs[j]))));
    std::vector<FormulaPtr> cover;
    for (const auto& xi : xs) cover.push_back(F::eq(V(x0), V(xi)));
    inner.push_back(F::forall(x0, F::implies(gm(v, x0, sfx + "z"), F::lor(cover))));
    // nest: innermost carries the distinctness and the completeness clause
    FormulaPtr body = F::land(inner);
    for (std::size_t i = xs.size(); i-- > 0;) {
      body = F::exists(xs[i], F::land({gm(v, xs[i], sfx + std::to_string(i)), body}));
    }
    return body;
  };

  // unique base point of the triangle
  std::vector<FormulaPtr> uniq;
  {
    std::vector<std::string> ds{"d1", "d2", "d3"};
    for (std::size_t i = 0; i < 3; ++i) {
      std::vector<FormulaPtr> cs{base_point(V(ds[i]), "u" + std::to_string(i))};
      for (std::size_t j = 0; j < 3; ++j)
        if (j != i) cs.push_back(F::lnot(base_point(V(ds[j]), "u" + std::to_string(i) + std::to_string(j))));
      uniq.push_back(F::land(cs));
    }
  }
  FormulaPtr unique_base = F::lor(uniq);

  // anchored at e: F(e, x) is a base point of the triangle
  FormulaPtr anchored = F::exists(
      "xa", F::exists("wa", F::land({fdef(E, V("xa"), V("wa"), "a"), in_delta(V("wa")),
                                     base_point(V("wa"), "ab")})));

  FormulaPtr body = F::land(
      {unique_base, anchored,
       F::lor({F::land({F::lnot(F::eq(V("u"), V("v"))), count_exact("u", 2, "cu"),
                        count_exact("v", 3, "cv")}),
               F::land({F::eq(V("u"), V("v")), count_exact("u", 5, "cd")})})});

  // triangle scaffold with guards placed at each level for pruning
  FormulaPtr phi = F::exists(
      "d1",
      F::land({F::exists("o1", fdom("d1", "o1", "t1")),
               F::exists("d2",
                         F::land({fdom("d1", "d2", "t2"),
                                  F::exists("d3", F::land({fdom("d1", "d3", "t3"),
                                                           fdom("d2", "d3", "t4"), body}))}))}));
  return phi;
}

FormulaPtr pair_set_formula(const std::set<std::pair<Id, Id>>& s) {
  std::vector<FormulaPtr> disj;
  for (auto [a, b] : s)
    disj.push_back(F::land({F::eq(V("x"), Term::p(a)), F::eq(V("y"), Term::p(b))}));
  if (disj.empty())
    return F::land({F::fls(), F::eq(V("x"), V("x")), F::eq(V("y"), V("y"))});
  return F::lor(disj);
}

namespace {

void check_monotone(const Poset& p, const std::map<Id, Id>& g) {
  for (const auto& e : p.elements())
    if (!g.count(e.id)) throw PreconditionFailed("map not total at " + std::to_string(e.id));
  for (const auto& [x, gx] : g) {
    if (!p.contains(x)) throw UnknownElement(x);
    if (!p.contains(gx)) throw UnknownElement(gx);
  }
  for (const auto& [x, gx] : g)
    for (const auto& [y, gy] : g)
      if (x != y && p.lt(x, y) && !p.leq(gx, gy)) throw NotMonotone(x, y);
}

}  // namespace

DefinitionCertificate synthesize_monotone_definition(const Poset& p, const std::map<Id, Id>& g,
                                                     std::size_t small_threshold) {
  check_monotone(p, g);
  DefinitionCertificate cert;

  // P0: downward closure of the move-set values
  std::set<Id> p0;
  for (const auto& [x, gx] : g)
    if (gx != x) {
      p0.insert(gx);
      for (Id d : p.down_set(gx)) p0.insert(d);
    }

  // level sets over P0 and the fixed part outside it
  std::map<Id, std::vector<Id>> levels;  // j in P0 -> D_j
  std::vector<Id> fixed;                 // D
  for (const auto& [x, gx] : g) {
    if (p0.count(x)) continue;
    if (gx == x) fixed.push_back(x);
    else levels[gx].push_back(x);
  }

  std::set<Id> p1;
  for (Id x : lower_fringe(p, fixed)) p1.insert(x);
  for (const auto& [j, dj] : levels)
    for (Id x : lower_fringe(p, dj)) p1.insert(x);

  cert.p0.assign(p0.begin(), p0.end());
  cert.p1.assign(p1.begin(), p1.end());
  cert.small_ok = p0.size() <= small_threshold && p1.size() <= small_threshold;

  // Claim 1: for alpha outside P0, fixedness is witnessed inside P1.
  cert.claim1_ok = true;
  for (const auto& [x, gx] : g) {
    if (p0.count(x)) continue;
    bool wit = false;
    for (Id b : p1)
      if (g.at(b) == b && p.leq(b, x)) {
        wit = true;
        break;
      }
    if ((gx == x) != wit) cert.claim1_ok = false;
  }

  // Claim 2: for moved alpha outside P0, the upper cone of g(alpha) is
  // recovered from g on the P1 points below alpha.
  cert.claim2_ok = true;
  for (const auto& [x, gx] : g) {
    if (p0.count(x) || gx == x) continue;
    for (const auto& ei : p.elements()) {
      bool lhs = p.leq(gx, ei.id);
      bool rhs = true;
      for (Id ga : p1)
        if (p.leq(ga, x) && !p.leq(g.at(ga), ei.id)) {
          rhs = false;
          break;
        }
      if (lhs != rhs) cert.claim2_ok = false;
    }
  }

  // B(x,y) = "g(x) <= y", assembled from g|P0, the fixed witnesses in P1
  // and the level fringes in P1.
  Term x = V("x"), y = V("y"), z = V("z");
  std::vector<FormulaPtr> by_p0;
  for (Id a : p0)
    by_p0.push_back(F::land({F::eq(x, Term::p(a)), F::le(Term::p(g.at(a)), y)}));
  std::vector<FormulaPtr> not_in_p0;
  for (Id a : p0) not_in_p0.push_back(F::lnot(F::eq(x, Term::p(a))));

  std::vector<FormulaPtr> fix_wit;
  for (Id b : p1)
    if (g.at(b) == b) fix_wit.push_back(F::le(Term::p(b), x));
  FormulaPtr is_fixed = F::lor(fix_wit);

  std::vector<FormulaPtr> moved_bound;
  for (Id ga : p1)
    moved_bound.push_back(
        F::implies(F::le(Term::p(ga), x), F::le(Term::p(g.at(ga)), y)));

  FormulaPtr b_formula = F::lor(
      {F::lor(by_p0),
       F::land({F::land(not_in_p0),
                F::lor({F::land({is_fixed, F::le(x, y)}),
                        F::land({F::lnot(is_fixed), F::land(moved_bound)})})})});

  // Fact: g(x) = z iff z bounds the row from below and lies in it.
  FormulaPtr row = b_formula;  // free x, y
  FormulaPtr graph = F::land(
      {F::forall("y", F::implies(row, F::le(z, V("y")))),
       [&] {
         // substitute y := z by renaming: rebuild row with y replaced
         struct Sub {
           static FormulaPtr rename(const FormulaPtr& f, const std::string& from,
                                    const std::string& to) {
             auto term = [&](Term t) {
               if (t.kind == Term::Kind::var && t.name == from) t.name = to;
               return t;
             };
             switch (f->kind) {
               case F::Kind::tru:
               case F::Kind::fls: return f;
               case F::Kind::le: return F::le(term(f->lhs), term(f->rhs));
               case F::Kind::eq: return F::eq(term(f->lhs), term(f->rhs));
               case F::Kind::lnot: return F::lnot(rename(f->children[0], from, to));
               case F::Kind::land:
               case F::Kind::lor: {
                 std::vector<FormulaPtr> cs;
                 for (const auto& c : f->children) cs.push_back(rename(c, from, to));
                 return f->kind == F::Kind::land ? F::land(std::move(cs))
                                                 : F::lor(std::move(cs));
               }
               case F::Kind::implies:
                 return F::implies(rename(f->children[0], from, to),
                                   rename(f->children[1], from, to));
               case F::Kind::iff:
                 return F::iff(rename(f->children[0], from, to),
                               rename(f->children[1], from, to));
               case F::Kind::exists:
               case F::Kind::forall: {
                 if (f->var == from) return f;  // shadowed
                 auto c = rename(f->children[0], from, to);
                 return f->kind == F::Kind::exists ? F::exists(f->var, c)
                                                   : F::forall(f->var, c);
               }
             }
             return f;
           }
         };
         return Sub::rename(row, "y", "z");
       }()});

  cert.formula = graph;

  std::set<Id> params;
  for (Id a : p0) {
    params.insert(a);
    params.insert(g.at(a));
  }
  for (Id b : p1) {
    params.insert(b);
    params.insert(g.at(b));
  }
  cert.parameters.assign(params.begin(), params.end());

  // verify: extension over (x, z) equals the graph of g
  auto ext = extension_pairs(graph, p, "x", "z");
  std::set<std::pair<Id, Id>> want;
  for (const auto& [a, ga] : g) want.insert({a, ga});
  cert.verified = ext == want;
  if (!cert.verified) {
    for (auto pr : ext)
      if (!want.count(pr)) cert.mismatches.push_back(pr);
    for (auto pr : want)
      if (!ext.count(pr)) cert.mismatches.push_back(pr);
  }
  return cert;
}

}  // namespace powb::fo
