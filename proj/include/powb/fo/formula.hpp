#ifndef POWB_FO_FORMULA_HPP
#define POWB_FO_FORMULA_HPP

#include <memory>
#include <string>
#include <vector>

#include "powb/ids.hpp"

namespace powb::fo {

// A term is a variable or a parameter (an element constant).
struct Term {
  enum class Kind { var, param };
  Kind kind = Kind::var;
  std::string name;  // var
  Id param = 0;      // param

  static Term v(std::string n) { return Term{Kind::var, std::move(n), 0}; }
  static Term p(Id id) { return Term{Kind::param, {}, id}; }
};

class Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

// First-order formulas over the signature {<=, =} with parameters.
// Immutable; node identity doubles as a cache key in the evaluators.
class Formula {
 public:
  enum class Kind { tru, fls, le, eq, lnot, land, lor, implies, iff, exists, forall };

  Kind kind;
  Term lhs, rhs;                     // atoms
  std::vector<FormulaPtr> children;  // connectives
  std::string var;                   // quantifiers

  const std::vector<std::string>& free_vars() const { return free_; }

  static FormulaPtr tru();
  static FormulaPtr fls();
  static FormulaPtr le(Term a, Term b);
  static FormulaPtr eq(Term a, Term b);
  static FormulaPtr lnot(FormulaPtr f);
  static FormulaPtr land(std::vector<FormulaPtr> fs);  // empty -> true
  static FormulaPtr lor(std::vector<FormulaPtr> fs);   // empty -> false
  static FormulaPtr implies(FormulaPtr a, FormulaPtr b);
  static FormulaPtr iff(FormulaPtr a, FormulaPtr b);
  static FormulaPtr exists(std::string v, FormulaPtr f);
  static FormulaPtr forall(std::string v, FormulaPtr f);

  // strict order: le and not eq
  static FormulaPtr lt(Term a, Term b);

  std::size_t node_count() const;

 private:
  std::vector<std::string> free_;
  friend FormulaPtr make_node(Formula f);
};

FormulaPtr parse_formula(const std::string& sexpr);
std::string to_sexpr(const FormulaPtr& f);

}  // namespace powb::fo

#endif
