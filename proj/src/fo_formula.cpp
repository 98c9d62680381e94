#include "powb/fo/formula.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "powb/errors.hpp"

namespace powb::fo {

FormulaPtr make_node(Formula f) {
  std::set<std::string> fv;
  auto add_term = [&](const Term& t) {
    if (t.kind == Term::Kind::var) fv.insert(t.name);
  };
  switch (f.kind) {
    case Formula::Kind::tru:
    case Formula::Kind::fls: break;
    case Formula::Kind::le:
    case Formula::Kind::eq:
      add_term(f.lhs);
      add_term(f.rhs);
      break;
    case Formula::Kind::exists:
    case Formula::Kind::forall:
      for (const auto& v : f.children[0]->free_vars())
        if (v != f.var) fv.insert(v);
      break;
    default:
      for (const auto& c : f.children)
        for (const auto& v : c->free_vars()) fv.insert(v);
  }
  f.free_.assign(fv.begin(), fv.end());
  return std::make_shared<const Formula>(std::move(f));
}

FormulaPtr Formula::tru() { return make_node(Formula{Kind::tru, {}, {}, {}, {}, {}}); }
FormulaPtr Formula::fls() { return make_node(Formula{Kind::fls, {}, {}, {}, {}, {}}); }
FormulaPtr Formula::le(Term a, Term b) {
  return make_node(Formula{Kind::le, std::move(a), std::move(b), {}, {}, {}});
}
FormulaPtr Formula::eq(Term a, Term b) {
  return make_node(Formula{Kind::eq, std::move(a), std::move(b), {}, {}, {}});
}
FormulaPtr Formula::lnot(FormulaPtr f) {
  return make_node(Formula{Kind::lnot, {}, {}, {std::move(f)}, {}, {}});
}
FormulaPtr Formula::land(std::vector<FormulaPtr> fs) {
  if (fs.empty()) return tru();
  if (fs.size() == 1) return fs[0];
  return make_node(Formula{Kind::land, {}, {}, std::move(fs), {}, {}});
}
FormulaPtr Formula::lor(std::vector<FormulaPtr> fs) {
  if (fs.empty()) return fls();
  if (fs.size() == 1) return fs[0];
  return make_node(Formula{Kind::lor, {}, {}, std::move(fs), {}, {}});
}
FormulaPtr Formula::implies(FormulaPtr a, FormulaPtr b) {
  return make_node(Formula{Kind::implies, {}, {}, {std::move(a), std::move(b)}, {}, {}});
}
FormulaPtr Formula::iff(FormulaPtr a, FormulaPtr b) {
  return make_node(Formula{Kind::iff, {}, {}, {std::move(a), std::move(b)}, {}, {}});
}
FormulaPtr Formula::exists(std::string v, FormulaPtr f) {
  return make_node(Formula{Kind::exists, {}, {}, {std::move(f)}, std::move(v), {}});
}
FormulaPtr Formula::forall(std::string v, FormulaPtr f) {
  return make_node(Formula{Kind::forall, {}, {}, {std::move(f)}, std::move(v), {}});
}
FormulaPtr Formula::lt(Term a, Term b) {
  return land({le(a, b), lnot(eq(a, b))});
}

std::size_t Formula::node_count() const {
  std::size_t n = 1;
  for (const auto& c : children) n += c->node_count();
  return n;
}

namespace {

struct Lexer {
  const std::string& s;
  std::size_t i = 0;
  std::string next() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    if (i >= s.size()) return {};
    if (s[i] == '(' || s[i] == ')') return std::string(1, s[i++]);
    std::size_t j = i;
    while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j])) && s[j] != '(' &&
           s[j] != ')')
      ++j;
    std::string t = s.substr(i, j - i);
    i = j;
    return t;
  }
};

bool is_number(const std::string& t) {
  if (t.empty()) return false;
  return std::all_of(t.begin(), t.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

Term parse_term(const std::string& t) {
  if (t.empty()) throw ParseError("missing term");
  if (is_number(t)) return Term::p(static_cast<Id>(std::stoul(t)));
  return Term::v(t);
}

FormulaPtr parse_expr(Lexer& lx) {
  std::string t = lx.next();
  if (t.empty()) throw ParseError("unexpected end of formula");
  if (t == "true") return Formula::tru();
  if (t == "false") return Formula::fls();
  if (t != "(") throw ParseError("expected '(' but got '" + t + "'");
  std::string head = lx.next();
  auto expect_close = [&] {
    std::string c = lx.next();
    if (c != ")") throw ParseError("expected ')' after " + head);
  };
  if (head == "true" || head == "false") {
    expect_close();
    return head == "true" ? Formula::tru() : Formula::fls();
  }
  if (head == "le" || head == "eq" || head == "lt") {
    Term a = parse_term(lx.next());
    Term b = parse_term(lx.next());
    expect_close();
    if (head == "le") return Formula::le(a, b);
    if (head == "eq") return Formula::eq(a, b);
    return Formula::lt(a, b);
  }
  if (head == "not") {
    auto f = parse_expr(lx);
    expect_close();
    return Formula::lnot(f);
  }
  if (head == "and" || head == "or") {
    std::vector<FormulaPtr> fs;
    while (true) {
      std::size_t save = lx.i;
      std::string peek = lx.next();
      if (peek == ")") break;
      if (peek.empty()) throw ParseError("unterminated (" + head);
      lx.i = save;
      fs.push_back(parse_expr(lx));
    }
    return head == "and" ? Formula::land(std::move(fs)) : Formula::lor(std::move(fs));
  }
  if (head == "->" || head == "<->") {
    auto a = parse_expr(lx);
    auto b = parse_expr(lx);
    expect_close();
    return head == "->" ? Formula::implies(a, b) : Formula::iff(a, b);
  }
  if (head == "forall" || head == "exists") {
    std::string v = lx.next();
    if (v.empty() || v == "(" || v == ")" || is_number(v))
      throw ParseError("bad quantifier variable");
    auto f = parse_expr(lx);
    expect_close();
    return head == "forall" ? Formula::forall(v, f) : Formula::exists(v, f);
  }
  throw ParseError("unknown form '" + head + "'");
}

std::string term_str(const Term& t) {
  return t.kind == Term::Kind::var ? t.name : std::to_string(t.param);
}

void print(const FormulaPtr& f, std::string& out) {
  switch (f->kind) {
    case Formula::Kind::tru: out += "(true)"; return;
    case Formula::Kind::fls: out += "(false)"; return;
    case Formula::Kind::le:
    case Formula::Kind::eq:
      out += "(";
      out += f->kind == Formula::Kind::le ? "le " : "eq ";
      out += term_str(f->lhs) + " " + term_str(f->rhs) + ")";
      return;
    case Formula::Kind::lnot:
      out += "(not ";
      print(f->children[0], out);
      out += ")";
      return;
    case Formula::Kind::land:
    case Formula::Kind::lor:
      out += f->kind == Formula::Kind::land ? "(and" : "(or";
      for (const auto& c : f->children) {
        out += " ";
        print(c, out);
      }
      out += ")";
      return;
    case Formula::Kind::implies:
    case Formula::Kind::iff:
      out += f->kind == Formula::Kind::implies ? "(-> " : "(<-> ";
      print(f->children[0], out);
      out += " ";
      print(f->children[1], out);
      out += ")";
      return;
    case Formula::Kind::exists:
    case Formula::Kind::forall:
      out += f->kind == Formula::Kind::exists ? "(exists " : "(forall ";
      out += f->var + " ";
      print(f->children[0], out);
      out += ")";
      return;
  }
}

}  // namespace

FormulaPtr parse_formula(const std::string& sexpr) {
  Lexer lx{sexpr};
  auto f = parse_expr(lx);
  std::string rest = lx.next();
  if (!rest.empty()) throw ParseError("trailing input after formula: '" + rest + "'");
  return f;
}

std::string to_sexpr(const FormulaPtr& f) {
  std::string out;
  print(f, out);
  return out;
}

}  // namespace powb::fo
