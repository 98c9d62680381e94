#include "powb/conditions_audit.hpp"

namespace powb {

AntichainReport audit_c1(const Poset& p, const AuditConfig& cfg) {
  AntichainReport rep;
  rep.witness = max_antichain(p, cfg.search_cap);
  rep.max_size = rep.witness.size();
  rep.threshold = cfg.small_threshold;
  rep.pass = rep.max_size < cfg.small_threshold;
  return rep;
}

MoveSetReport audit_c2(const Poset& p, const std::map<Id, Id>& g, const AuditConfig& cfg) {
  MoveSetReport rep;
  rep.threshold = cfg.small_threshold;
  std::set<Id> moves;
  for (const auto& e : p.elements()) {
    auto it = g.find(e.id);
    if (it == g.end()) throw PreconditionFailed("map not total at " + std::to_string(e.id));
    if (it->second != e.id) moves.insert(it->second);
  }
  rep.move_set.assign(moves.begin(), moves.end());
  rep.pass = rep.move_set.size() < cfg.small_threshold;
  return rep;
}

DownSetReport audit_c3(const Poset& p, const AuditConfig& cfg) {
  DownSetReport rep;
  rep.threshold = cfg.small_threshold;
  for (const auto& e : p.elements()) {
    std::size_t d = p.below_row(p.pos(e.id)).count();
    if (d > rep.max_size || !rep.witness) {
      rep.max_size = d;
      rep.witness = e.id;
    }
  }
  rep.pass = rep.max_size < cfg.small_threshold;
  return rep;
}

DefinabilityReport audit_c4_sample(const Poset& p,
                                   const std::vector<std::set<std::pair<Id, Id>>>& sample,
                                   const AuditConfig& cfg) {
  DefinabilityReport rep;
  rep.pass = true;
  for (const auto& s : sample) {
    if (s.size() >= cfg.small_threshold)
      throw PreconditionFailed("sampled subset is not small");
    DefinabilitySample out;
    out.subset = s;
    auto phi = fo::pair_set_formula(s);
    out.formula = fo::to_sexpr(phi);
    out.verified = fo::extension_pairs(phi, p, "x", "y") == s;
    rep.pass = rep.pass && out.verified;
    rep.samples.push_back(std::move(out));
  }
  return rep;
}

}  // namespace powb
