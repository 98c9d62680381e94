#ifndef POWB_CODER_HPP
#define POWB_CODER_HPP

#include <map>
#include <set>
#include <vector>

#include "powb/creature.hpp"

namespace powb {

// One relation-coding step: a ground structure and the ordered pairs to
// code into it.
struct StepInput {
  Creature ground;
  std::vector<std::pair<Id, Id>> relation;  // R, ordered pairs over the ground carrier
};

// The apparatus coding one ordered pair: two fan-in sets A (2) and B (3),
// the anchor set C (1), the coded triangle Delta = {a,b,c} and its apex
// gamma. Sizes are fixed; the decoder counts 2/3/5 depend on them.
struct Gadget {
  std::pair<Id, Id> coded_pair;
  std::array<Id, 2> a_set;
  std::array<Id, 3> b_set;
  std::array<Id, 1> c_set;
  Id delta_a, delta_b, delta_c;
  Id gamma;

  std::vector<Id> omega() const;  // all ten members
};

struct GadgetAllocation {
  Id e = 0;                      // this step's anchor point
  std::uint32_t step = 0;        // stage index of the fresh elements
  std::vector<Gadget> gadgets;   // one per pair of R, in sorted pair order
  std::vector<Element> spares;   // untouched fresh pool
  std::vector<Element> fresh;    // every allocated element, ascending id

  // Omega(x): the gadget members plus the coded pair for gadget elements,
  // empty for e and spares.
  std::vector<Id> omega_of(Id x) const;
  const Gadget* gadget_of(Id x) const;

 private:
  friend GadgetAllocation allocate_gadgets(const StepInput&, std::size_t, std::size_t);
  std::map<Id, std::size_t> member_gadget_;  // gadget member -> index into gadgets
};

// Fresh disjoint gadget sets for every pair of R plus the e point and at
// least spare_floor spares; ids continue after the ground's maximum,
// assigned in sorted pair order so allocations are reproducible.
GadgetAllocation allocate_gadgets(const StepInput& input, std::size_t spare_floor = 8,
                                  std::size_t carrier_cap = kDefaultCarrierCap);

// The coded pair function on the enlarged carrier: the ground F on old
// pairs plus, per coded pair (alpha, beta):
//   F(alpha, x) = a for x in A,  F(beta, x) = b for x in B,
//   F(e, x) = c for x in C,      F(x, y) = gamma for pairs of Delta.
// Undefined elsewhere. Throws AllocationMismatch if alloc does not match.
PairMap encode_relation(const StepInput& input, const GadgetAllocation& alloc);

// Everything the build step needs to know about one coding step.
struct StepContext {
  Creature ground;
  std::vector<std::pair<Id, Id>> relation;
  GadgetAllocation alloc;
  PairMap fspec;  // the coded F on the enlarged carrier

  std::vector<Element> enlarged_elements() const;
  bool in_ground(Id id) const { return ground.contains(id); }
};

StepContext make_step_context(const StepInput& input, std::size_t spare_floor = 8,
                              std::size_t carrier_cap = kDefaultCarrierCap);

// Reads the coded relation back out of a creature's F: every triangle with
// a unique base point anchored at e contributes the pairs (alpha, beta)
// with fan-in counts 2 and 3 (or the diagonal (alpha, alpha) at count 5).
std::set<std::pair<Id, Id>> decode_relation(const Creature& c, Id e);

// The decoded relation is stable under separated extensions whose F-pairs
// with old values stay inside the old carrier. Throws PreconditionFailed
// when the extension does not qualify.
bool check_absoluteness(const Creature& c_small, const Creature& c_big, Id e);

}  // namespace powb

#endif
