#ifndef POWB_AMALGAM_HPP
#define POWB_AMALGAM_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "powb/creature.hpp"

namespace powb {

// Checked input for the amalgamation operators. r is the intersection
// structure; for the marked operator, p and q must be separated end
// extensions of r, the marked points must be fresh on their own sides
// (or the whole input degenerate with p = q = r and x = y), and x and y
// must have the same type over r.
struct AmalgamInput {
  Creature p, q, r;
  std::optional<Id> x, y;
};

// Validates agreement of order, F and H on the intersection; throws
// Disagreement with a witness pair.
AmalgamInput make_oplus_input(const Creature& p, const Creature& q);

// Additionally validates the marked-amalgamation preconditions; throws
// PreconditionFailed(clause).
AmalgamInput make_amalgam_input(const Creature& p, Id x, const Creature& q, Id y);

// {z in r : z < x}. Equal types over the heart compare exactly these sets.
std::vector<Id> type_over(const Creature& c, Id x, const std::vector<Id>& r);

// Union structure with the order closed transitively; F and H are unions.
Creature oplus(const Creature& p, const Creature& q);

// Union structure with the extra relation x < y added before closing.
Creature amal(const Creature& p, Id x, const Creature& q, Id y);

// The three-clause characterization of the amalgamated order:
//   a <* b  iff  p |= a < b,  or q |= a < b,  or p |= a <= x and q |= y <= b.
// Returned as the full set of strict pairs; equals amal's order.
std::vector<std::pair<Id, Id>> star_order(const Creature& p, Id x, const Creature& q, Id y);

struct NineCaseReport {
  // counts[k] = occurrences of row k (1-based rows 1..9 of the
  // transitivity table; rows 7 and 9 must stay at zero).
  std::array<std::uint64_t, 10> counts{};
  struct Bad {
    int row;
    Id a, b, c;
    std::string detail;
  };
  std::vector<Bad> violations;
  bool ok() const { return violations.empty(); }
};

// Replays the transitivity table of the star relation on a concrete input:
// classifies every composable pair of star facts, checks the composed pair
// is again a star fact, and that the two impossible rows never fire.
NineCaseReport check_nine_cases(const Creature& p, Id x, const Creature& q, Id y);

// The common-upper-bound fact: for {a,b} inside p or inside q,
//   amal |= a,b < c  iff  p |= a,b < c, or q |= a,b < c,
//                         or (p |= a,b < x and q |= y <= c).
// Returns the (equal) truth value; throws InternalError if the two sides
// ever disagree, PreconditionFailed if {a,b} straddles.
bool key_fact_common_ub(const Creature& p, Id x, const Creature& q, Id y, Id a, Id b, Id c);

struct DeltaSystem {
  std::vector<std::size_t> indices;  // positions into the input family
  std::vector<Id> heart;
  bool exact = true;  // exhaustive search (false: greedy fallback)
};

// Sub-family of size >= min_size whose pairwise intersections all equal one
// heart. Exhaustive for families of at most 20 sets, greedy above.
// Throws NotFound when no such sub-family exists.
DeltaSystem find_delta_system(const std::vector<std::vector<Id>>& family, std::size_t min_size);

struct SccProbeResult {
  bool found = false;
  std::size_t alpha = 0, beta = 0;
  std::optional<Creature> amalgam;
  struct PairDiag {
    std::size_t alpha, beta;
    std::string reason;  // why this pair was rejected
  };
  std::vector<PairDiag> rejected;
};

// Searches index pairs alpha < beta (lexicographically) for two marked
// substructures of m that amalgamate over their intersection inside m:
// separated end extensions of the intersection, equal marked types, and
// every pair of the amalgamated order already true in m with F and H
// restrictions agreeing. Exhausted probes return found = false.
SccProbeResult scc_probe(const Creature& m,
                         const std::vector<std::pair<Creature, Id>>& marked_subs);

}  // namespace powb

#endif
