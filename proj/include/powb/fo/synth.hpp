#ifndef POWB_FO_SYNTH_HPP
#define POWB_FO_SYNTH_HPP

#include <map>
#include <set>

#include "powb/fo/eval.hpp"
#include "powb/fo/formula.hpp"
#include "powb/poset.hpp"

namespace powb::fo {

// Recovers g from B = {(x,y) : g(x) <= y}: g(x) is the unique z with
// (x,z) in B below every member of x's row. Throws NotAFunctionGraph(x)
// when a row has no such unique element.
std::map<Id, Id> graph_transform(const std::set<std::pair<Id, Id>>& b, const Poset& p);

// A' for a subset A: the downward closure within A of a deterministically
// chosen maximal antichain of A (its minimal elements), so that every
// member of A sits above (non-strictly) some member of A'.
std::vector<Id> lower_fringe(const Poset& p, const std::vector<Id>& a);

// Closed-form decode criterion over {<=, =} with the single parameter e:
// free variables "u", "v"; the pair function is expanded through its
// unique-minimal-upper-bound definition and the fan-in thresholds 2/3/5
// through explicit quantifier blocks.
FormulaPtr build_decoder_formula(Id e);

struct DefinitionCertificate {
  FormulaPtr formula;           // free variables "x" (argument), "z" (value)
  std::vector<Id> parameters;   // parameter ids appearing in the formula
  std::vector<Id> p0, p1;       // the small sets the definition quotes
  bool claim1_ok = false;       // fixedness detectable through p1
  bool claim2_ok = false;       // bounds of moved points detectable through p1
  bool small_ok = false;        // both sets under the requested threshold
  bool verified = false;        // extension equals the graph exactly
  std::vector<std::pair<Id, Id>> mismatches;
};

// Follows the bounded-monotone-map argument: P0 is the downward closure of
// the move-set, P1 the union of the lower fringes of the fixed part and of
// each level set over P0; the emitted formula defines the graph of g from
// the finite data g|P0 and g|P1 and is verified by evaluation.
// Throws NotMonotone on a non-monotone input.
DefinitionCertificate synthesize_monotone_definition(const Poset& p,
                                                     const std::map<Id, Id>& g,
                                                     std::size_t small_threshold);

// Parameterized finite-disjunction definition of an arbitrary pair set;
// free variables "x", "y".
FormulaPtr pair_set_formula(const std::set<std::pair<Id, Id>>& s);

}  // namespace powb::fo

#endif
