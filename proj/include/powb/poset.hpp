#ifndef POWB_POSET_HPP
#define POWB_POSET_HPP

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <unordered_map>
#include <utility>
#include <vector>

#include "powb/bitset.hpp"
#include "powb/errors.hpp"
#include "powb/ids.hpp"

namespace powb {

inline constexpr std::size_t kDefaultCarrierCap = 4096;

// Symmetric partial map on unordered element pairs, keyed canonically with
// first < second. Used both for F of a creature and for the derived map
// of unique minimal upper bounds.
class PairMap {
 public:
  using Key = std::pair<Id, Id>;

  static Key key(Id x, Id y) { return x < y ? Key{x, y} : Key{y, x}; }

  bool contains(Id x, Id y) const { return m_.count(key(x, y)) != 0; }
  std::optional<Id> get(Id x, Id y) const {
    auto it = m_.find(key(x, y));
    if (it == m_.end()) return std::nullopt;
    return it->second;
  }
  void set(Id x, Id y, Id z) {
    if (x == y) throw PreconditionFailed("pair map keys must be distinct");
    m_[key(x, y)] = z;
  }
  void erase(Id x, Id y) { m_.erase(key(x, y)); }

  std::size_t size() const { return m_.size(); }
  bool empty() const { return m_.empty(); }
  const std::map<Key, Id>& entries() const { return m_; }

  friend bool operator==(const PairMap&, const PairMap&) = default;

 private:
  std::map<Key, Id> m_;  // ordered: deterministic iteration
};

// Ternary relation H with the symmetry H(x,y,z)=H(y,x,z) enforced by
// canonical storage (x < y).
class HSet {
 public:
  using Triple = std::array<Id, 3>;

  static Triple key(Id x, Id y, Id z) {
    if (x == y) throw PreconditionFailed("H triples need distinct first two slots");
    return x < y ? Triple{x, y, z} : Triple{y, x, z};
  }

  bool contains(Id x, Id y, Id z) const { return t_.count(key(x, y, z)) != 0; }
  void insert(Id x, Id y, Id z) { t_.insert(key(x, y, z)); }

  std::vector<Id> witnesses(Id x, Id y) const {
    std::vector<Id> out;
    auto lo = t_.lower_bound(Triple{std::min(x, y), std::max(x, y), 0});
    for (auto it = lo; it != t_.end() && (*it)[0] == std::min(x, y) && (*it)[1] == std::max(x, y); ++it)
      out.push_back((*it)[2]);
    return out;
  }

  std::size_t size() const { return t_.size(); }
  bool empty() const { return t_.empty(); }
  const std::set<Triple>& triples() const { return t_; }

  friend bool operator==(const HSet&, const HSet&) = default;

 private:
  std::set<Triple> t_;
};

// Finite strict partial order. The relation is stored transitively closed,
// as per-element predecessor/successor bit rows over carrier positions.
// Values are immutable after construction; extension operations return new
// posets. The constructor always validates: it closes the input pairs and
// rejects cycles, so no ill-formed order can exist.
class Poset {
 public:
  Poset() = default;

  // Builds the smallest transitive irreflexive order containing `pairs`.
  // Throws CycleDetected (with a witness cycle), UnknownElement for pairs
  // outside the carrier, BudgetExceeded past the carrier cap.
  static Poset close(std::vector<Element> elements, const std::vector<std::pair<Id, Id>>& pairs,
                     std::size_t carrier_cap = kDefaultCarrierCap);

  std::size_t size() const { return elems_.size(); }
  bool empty() const { return elems_.empty(); }
  const std::vector<Element>& elements() const { return elems_; }

  bool contains(Id id) const { return idx_.count(id) != 0; }
  const Element& element(Id id) const { return elems_[pos(id)]; }
  std::size_t pos(Id id) const {
    auto it = idx_.find(id);
    if (it == idx_.end()) throw UnknownElement(id);
    return it->second;
  }
  Id id_at(std::size_t p) const { return elems_[p].id; }

  bool lt(Id x, Id y) const { return below_[pos(y)].test(pos(x)); }
  bool leq(Id x, Id y) const { return x == y || lt(x, y); }
  bool comparable(Id x, Id y) const { return x == y || lt(x, y) || lt(y, x); }
  bool incomparable(Id x, Id y) const { return !comparable(x, y); }

  // {y : y < x}, not including x.
  std::vector<Id> down_set(Id x) const;
  std::vector<Id> up_set(Id x) const;

  const Bitset& below_row(std::size_t p) const { return below_[p]; }
  const Bitset& above_row(std::size_t p) const { return above_[p]; }

  // All z with x < z, y < z and no common strict upper bound strictly
  // below z. Comparable pairs give the empty set. Requires x != y.
  std::vector<Id> minimal_upper_bounds(Id x, Id y) const;

  // The partial map sending an incomparable pair to its unique minimal
  // upper bound where that exists.
  PairMap umub_map() const;

  // All strict pairs (x, y) with x < y, sorted by id.
  std::vector<std::pair<Id, Id>> lt_pairs() const;

  // Covering pairs (transitive reduction).
  std::vector<std::pair<Id, Id>> hasse_edges() const;

  // Sub-poset on the given ids (restriction of the order).
  Poset restrict_to(const std::vector<Id>& ids) const;

  // New poset with extra elements and extra pairs; re-closes and
  // re-validates like close().
  Poset extend(const std::vector<Element>& new_elements,
               const std::vector<std::pair<Id, Id>>& new_pairs,
               std::size_t carrier_cap = kDefaultCarrierCap) const;

  friend bool operator==(const Poset& a, const Poset& b) {
    return a.elems_ == b.elems_ && a.below_ == b.below_;
  }

 private:
  std::vector<Element> elems_;  // sorted by id
  std::unordered_map<Id, std::size_t> idx_;
  std::vector<Bitset> below_;  // below_[p] = positions q with elems_[q] < elems_[p]
  std::vector<Bitset> above_;
};

// Exact maximum-size antichain (pairwise incomparable set), computed via a
// minimum chain cover; polynomial, so usable on built structures.
// Throws BudgetExceeded when the carrier exceeds `cap`.
std::vector<Id> max_antichain(const Poset& p, std::size_t cap = kDefaultCarrierCap);
std::size_t max_antichain_size(const Poset& p, std::size_t cap = kDefaultCarrierCap);

// True iff `big` restricted to small's carrier equals `small` and small is
// downward closed in big. Throws NotASubstructure when the carriers nest
// but the orders disagree.
bool is_end_extension(const Poset& small, const Poset& big);

}  // namespace powb

#endif
