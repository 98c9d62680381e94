#ifndef POWB_CREATURE_HPP
#define POWB_CREATURE_HPP

#include <string>
#include <vector>

#include "powb/poset.hpp"

namespace powb {

// A structure (M, <, F, H): a finite strict order together with a symmetric
// partial pair function F whose values are meant to be minimal upper bounds
// of incomparable pairs, and a ternary witness relation H disjoint from
// dom(F). The constructor checks only well-formedness (membership of all
// ids); the axioms are checked by validate(), which reports violations as
// data rather than throwing.
class Creature {
 public:
  Creature() = default;
  Creature(Poset order, PairMap f, HSet h);

  const Poset& order() const { return order_; }
  const PairMap& f() const { return f_; }
  const HSet& h() const { return h_; }
  std::size_t size() const { return order_.size(); }
  bool contains(Id id) const { return order_.contains(id); }

  Creature restrict_to(const std::vector<Id>& ids) const;

  friend bool operator==(const Creature&, const Creature&) = default;

 private:
  Poset order_;
  PairMap f_;
  HSet h_;
};

struct Violation {
  std::string axiom;        // short machine id, e.g. "f_incomparable"
  std::vector<Id> witness;  // offending tuple
  std::string detail;
};

// Checks every creature axiom; empty result iff the structure is a creature.
// Also walks the F-closure of each singleton, the finite witness set for
// local finiteness.
std::vector<Violation> validate_creature(const Creature& c);

// F-closure of a set: repeatedly adds values of F-pairs lying inside.
std::vector<Id> f_closure(const PairMap& f, std::vector<Id> base);

// True iff c1's carrier is contained in c2's and order, F and H of c1 are
// exactly the restrictions of c2's to it.
bool creature_leq(const Creature& c1, const Creature& c2);

// 3-sets all of whose unordered pairs are F-defined. A base point is a
// vertex that is the F-value of exactly one unordered pair (of the whole
// structure); an anchor is any b such that F(b,c) is a base point.
struct Triangle {
  std::array<Id, 3> vertices;  // ascending
  std::vector<Id> base_points;
  std::vector<Id> anchors;
};

std::vector<Triangle> find_triangles(const Creature& c);

struct SeparationResult {
  bool ok = true;
  std::vector<Violation> violations;
};

// The three separation clauses for an extension c1 <= c2: no triangle of c2
// straddles the carrier boundary, no triangle outside c1 is anchored inside
// c1, and H-witnesses for pairs inside c1 stay inside c1.
// Requires creature_leq(c1, c2) and end extension; throws PreconditionFailed.
SeparationResult is_separated_extension(const Creature& c1, const Creature& c2);

// The separation clauses alone, assuming c1 <= c2 already holds.
SeparationResult separation_clauses(const Creature& c1, const Creature& c2);

}  // namespace powb

#endif
