#ifndef POWB_FO_EVAL_HPP
#define POWB_FO_EVAL_HPP

#include <map>
#include <string>
#include <vector>

#include "powb/fo/formula.hpp"
#include "powb/poset.hpp"

namespace powb::fo {

using Assignment = std::map<std::string, Id>;

// Tarskian truth under an assignment covering the free variables.
// Straightforward recursion with a small memo on (node, restricted
// assignment); quantifier depth is the cost driver, so deep formulas
// belong to extension() instead.
bool evaluate(const FormulaPtr& f, const Poset& p, const Assignment& env);

struct ExtensionOptions {
  // budget in relation-words processed; the engine throws BudgetExceeded
  std::uint64_t budget = 400'000'000;
  std::size_t memo_entries = 60'000;
};

// All satisfying tuples over the formula's free variables (minus pinned
// ones), listed in the order `vars`; vars empty means the free variables
// in sorted order. Evaluates bottom-up over bit-matrix relations with
// streamed quantifiers, so wide counting blocks stay tractable.
std::vector<std::vector<Id>> extension(const FormulaPtr& f, const Poset& p,
                                       std::vector<std::string> vars = {},
                                       const Assignment& pinned = {},
                                       const ExtensionOptions& opts = {});

// Convenience: extension as a set of pairs for two-variable formulas.
std::set<std::pair<Id, Id>> extension_pairs(const FormulaPtr& f, const Poset& p,
                                            const std::string& v1, const std::string& v2,
                                            const ExtensionOptions& opts = {});

}  // namespace powb::fo

#endif
