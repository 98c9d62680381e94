#ifndef POWB_BUILDER_HPP
#define POWB_BUILDER_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "powb/coder.hpp"
#include "powb/creature.hpp"

namespace powb {

// A condition of the step's forcing notion: a finite creature whose ground
// part restricts the ground creature, carrier inside the enlarged carrier,
// Omega-closed outside the ground, F pinned to the coded F, and separated
// end extension of its ground part. is_condition reports violations of
// each clause as data.
std::vector<Violation> is_condition(const Creature& c, const StepContext& ctx);

struct Requirement {
  enum class Kind { element, pair_witness, extra_ub };
  enum class Status { unmet, met, blocked };

  Kind kind;
  Id x = 0, y = 0, z = 0;  // element: x; pair_witness: x,y; extra_ub: x,y with upper bound z
  int index = 1;           // pair witnesses are scheduled twice per pair
  Status status = Status::unmet;
  std::string note;  // block reason / action summary

  std::string describe() const;
};

// The elements the audit guarantees cover: the ground minus witness-tagged
// elements, the e point and all gadget members.
std::vector<Id> core_auto(const StepContext& ctx);

// Static schedule: one element requirement per element of ground and core
// (e first, ground ascending, then gadget members in allocation order), and
// two pair-witness requirements per incomparable core pair outside the
// coded F, judged on the fully forced skeleton. Upper-bound requirements
// are generated lazily during the build as new upper bounds appear.
std::vector<Requirement> schedule_requirements(const StepContext& ctx,
                                               const std::vector<Id>& core);

// The condition forced by a carrier set: ground order among present ground
// elements, argument-below-value pairs for every coded F pair inside, the
// ground H triples inside, and nothing else.
Creature forced_condition(const StepContext& ctx, const std::vector<Id>& carrier);

struct BuildOptions {
  std::uint64_t seed = 0;
  int depth_budget = 3;
  int pass_budget = 64;
  std::size_t carrier_cap = kDefaultCarrierCap;
};

struct BuildResult {
  Creature mg;
  bool completed = false;
  int passes = 0;
  std::uint64_t seed = 0;
  std::vector<Requirement> requirements;  // final statuses, schedule order then lazy ones
  std::vector<std::string> log;           // one line per action
  std::size_t conditions_validated = 0;   // every one passed is_condition

  std::vector<const Requirement*> unmet() const;
  std::vector<const Requirement*> blocked() const;
};

// Single mutable build in progress; exposes extend_to_meet so the dense-set
// moves can be exercised one at a time.
class ConditionBuilder {
 public:
  ConditionBuilder(const StepContext& ctx, BuildOptions opts);

  const Creature& condition() const { return cond_; }
  const StepContext& ctx() const { return *ctx_; }

  // Applies the move for one requirement to the current condition:
  // elements arrive with their Omega set, F-closure and forced order;
  // pair witnesses pull existing ground witnesses or mint a fresh spare
  // above the F-closed down-closure of the pair; upper-bound requirements
  // put F(x,y) under the offending bound. The result is validated before
  // committing; a violating move is rolled back and the requirement
  // blocked. Throws SparePoolExhausted / DepthExceeded.
  Requirement::Status extend_to_meet(Requirement& req);

  std::size_t conditions_validated() const { return validated_; }
  const std::vector<std::string>& log() const { return log_; }

  bool element_present(Id x) const { return cond_.contains(x); }
  // mubs of a pair in the current condition (empty when comparable)
  std::vector<Id> mubs(Id x, Id y) const;

 private:
  friend BuildResult build_generic(const StepContext&, const std::vector<Id>&,
                                   const BuildOptions&);
  bool commit(Creature next, Requirement& req, const std::string& action);
  void add_elements(Requirement& req, const std::vector<Id>& seeds);
  Id next_spare(WitnessKind kind, Element& out);

  const StepContext* ctx_;
  BuildOptions opts_;
  Creature cond_;
  std::vector<Id> spare_order_;  // seeded consumption order
  std::size_t spare_next_ = 0;
  std::size_t validated_ = 0;
  std::vector<std::string> log_;
};

// Runs the schedule to a fixpoint: the element phase first, then passes
// that rescan lazily generated upper-bound requirements and pair witnesses
// until every audited pair is stably away from a unique minimal upper
// bound. Returns the union creature of the chain with the full log.
BuildResult build_generic(const StepContext& ctx, const std::vector<Id>& core,
                          const BuildOptions& opts = {});

struct ExactnessDiscrepancy {
  Id x = 0, y = 0;
  std::optional<Id> fspec_value;
  std::vector<Id> mubs;
  std::string kind;            // missing_elements | comparable_f_pair | wrong_unique | not_unique | spurious_unique
  std::string classification;  // chain_truncation | hazard_blocked | unexplained
};

struct AuditReport {
  std::vector<ExactnessDiscrepancy> discrepancies;
  bool substructure = false;    // ground <= mg
  bool end_extension = false;   // mg end-extends the ground
  SeparationResult separation;  // separation clauses over the ground
  std::size_t core_pairs_checked = 0;

  bool exact() const { return discrepancies.empty(); }
  bool ok() const { return exact() && substructure && end_extension && separation.ok; }
};

// Compares the unique-minimal-upper-bound map of the built order with the
// coded F over core pairs, both directions, and checks the built creature
// extends the ground separately and end-wise. Discrepancies touching a
// blocked or unmet requirement are classified as artifacts of the finite
// chain, the rest as unexplained.
AuditReport audit_exactness(const Creature& mg, const StepContext& ctx,
                            const std::vector<Id>& core, const BuildResult* build = nullptr);

}  // namespace powb

#endif
