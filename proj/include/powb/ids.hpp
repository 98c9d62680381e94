#ifndef POWB_IDS_HPP
#define POWB_IDS_HPP

#include <cstdint>
#include <string>

#include "powb/errors.hpp"

namespace powb {

using Id = std::uint32_t;

// Provenance of an element: where in the construction it was created.
enum class TagKind : std::uint8_t { ground, e_point, gadget, witness, spare };

// Role inside one coding gadget.
enum class GadgetRole : std::uint8_t { a_set, b_set, c_set, delta_a, delta_b, delta_c, gamma };

enum class WitnessKind : std::uint8_t { pair, upper_bound };

struct Tag {
  TagKind kind = TagKind::ground;
  GadgetRole role = GadgetRole::a_set;  // meaningful for kind == gadget
  Id pair_alpha = 0;                    // coded pair, for kind == gadget
  Id pair_beta = 0;
  WitnessKind wkind = WitnessKind::pair;  // meaningful for kind == witness

  static Tag ground() { return Tag{}; }
  static Tag e_point() { return Tag{TagKind::e_point, GadgetRole::a_set, 0, 0, WitnessKind::pair}; }
  static Tag gadget(GadgetRole r, Id alpha, Id beta) {
    return Tag{TagKind::gadget, r, alpha, beta, WitnessKind::pair};
  }
  static Tag witness(WitnessKind w) {
    return Tag{TagKind::witness, GadgetRole::a_set, 0, 0, w};
  }
  static Tag spare() { return Tag{TagKind::spare, GadgetRole::a_set, 0, 0, WitnessKind::pair}; }

  friend bool operator==(const Tag&, const Tag&) = default;
};

std::string tag_to_string(const Tag& t);
Tag tag_from_string(const std::string& s);

// An element of a carrier. id is unique within a carrier; tag and step are
// fixed at creation.
struct Element {
  Id id = 0;
  Tag tag{};
  std::uint32_t step = 0;

  friend bool operator==(const Element&, const Element&) = default;
};

}  // namespace powb

#endif
