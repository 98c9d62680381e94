#ifndef POWB_CONDITIONS_AUDIT_HPP
#define POWB_CONDITIONS_AUDIT_HPP

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "powb/fo/synth.hpp"
#include "powb/poset.hpp"

namespace powb {

// Finite stand-in for "small": strictly below the threshold.
struct AuditConfig {
  std::size_t small_threshold = 0;
  std::size_t search_cap = kDefaultCarrierCap;
};

struct AntichainReport {
  std::size_t max_size = 0;
  std::vector<Id> witness;
  std::size_t threshold = 0;
  bool pass = false;
};

// No large antichains: exact maximum antichain against the threshold.
AntichainReport audit_c1(const Poset& p, const AuditConfig& cfg);

struct MoveSetReport {
  std::vector<Id> move_set;  // the minimal A with g(x) in A u {x}
  std::size_t threshold = 0;
  bool pass = false;
};

// Bounded moves: the set of values g moves onto must be small.
MoveSetReport audit_c2(const Poset& p, const std::map<Id, Id>& g, const AuditConfig& cfg);

struct DownSetReport {
  std::size_t max_size = 0;
  std::optional<Id> witness;  // element with the largest strict down-set
  std::size_t threshold = 0;
  bool pass = false;
};

// Small histories: every strict down-set small.
DownSetReport audit_c3(const Poset& p, const AuditConfig& cfg);

struct DefinabilitySample {
  std::set<std::pair<Id, Id>> subset;
  std::string formula;
  bool verified = false;
};

struct DefinabilityReport {
  std::vector<DefinabilitySample> samples;
  bool pass = false;  // every sampled subset definable and verified
};

// Definable small pair-sets, audited by sampling: each sample gets a
// parameterized defining formula whose extension is checked exactly.
DefinabilityReport audit_c4_sample(const Poset& p,
                                   const std::vector<std::set<std::pair<Id, Id>>>& sample,
                                   const AuditConfig& cfg);

}  // namespace powb

#endif
