#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "kripkelab/poset.hpp"

namespace kripkelab {

/// Handle of a Kripke set in a Universe table.
struct SetId {
  std::uint32_t value = 0;

  friend auto operator<=>(const SetId&, const SetId&) = default;
};

inline std::ostream& operator<<(std::ostream& os, SetId id) {
  return os << '#' << id.value;
}

/// Members at each node, indexed by node; each member list ascending.
using Extent = std::vector<std::vector<SetId>>;

struct KSet {
  SetId id;
  unsigned rank = 0;
  Extent extent;
};

/// Element budget used when neither the caller nor KRIPKELAB_BUDGET sets one.
inline constexpr std::size_t kDefaultBudget = 1'000'000;

/// Reads KRIPKELAB_BUDGET, falling back to kDefaultBudget.
std::size_t default_budget();

/// Canonical table of Kripke sets over a finite poset.
///
/// A Kripke set is a monotone map from nodes to finite sets of earlier
/// Kripke sets. The empty set has rank 1 and every other set has rank one
/// more than its highest-ranked member, so the sets of rank <= r are
/// exactly the monotone maps into sets of rank < r.
///
/// Entries are deduplicated on their extent and never quotiented by forced
/// equality: two sets with different extents keep different ids even if
/// every node forces them equal.
class Universe {
 public:
  Universe(Poset poset, std::size_t budget);

  const Poset& poset() const noexcept { return poset_; }
  std::size_t size() const noexcept { return table_.size(); }
  std::size_t budget() const noexcept { return budget_; }
  unsigned rank_cutoff() const noexcept { return rank_cutoff_; }

  bool contains(SetId id) const noexcept { return id.value < table_.size(); }
  const KSet& at(SetId id) const;
  unsigned rank(SetId id) const { return at(id).rank; }
  const std::vector<SetId>& members(SetId id, NodeId node) const;

  /// Existing id with exactly this extent, if any.
  std::optional<SetId> find(const Extent& extent) const;

  /// Adds an extent, or returns the id already holding it. The rank is
  /// derived from the members. Throws MonotonicityError, ClosureError,
  /// RangeError on a malformed extent and BudgetError when the table is full.
  SetId insert(Extent extent);

  /// Every id in table order.
  std::vector<SetId> ids() const;
  /// Ids produced by exhaustive enumeration (rank <= rank_cutoff()).
  std::vector<SetId> pool() const;

  /// Throws unless every invariant of the table holds (monotone extents,
  /// rank stratification, closure, no duplicate extents).
  void validate() const;

 private:
  void check_extent(const Extent& extent) const;
  SetId append(Extent extent, unsigned rank);

  Poset poset_;
  std::size_t budget_;
  unsigned rank_cutoff_ = 0;
  std::size_t enumerated_ = 0;
  std::vector<KSet> table_;
  std::map<Extent, SetId> index_;

  friend Universe build_universe(const Poset& p, unsigned rank_cutoff,
                                 std::size_t budget);
};

/// Enumerates every monotone extent of rank <= rank_cutoff. Throws
/// BudgetError naming the first rank whose table would exceed the budget.
Universe build_universe(const Poset& p, unsigned rank_cutoff,
                        std::size_t budget = default_budget());

/// Calls `visit` with every monotone extent whose members come from
/// `candidates` (in candidate order at each node). There are
/// |upsets(p)|^|candidates| of them; callers check that against a budget.
void for_each_monotone_extent(const Poset& p, std::span<const SetId> candidates,
                              const std::function<void(const Extent&)>& visit);

/// Number of sets of rank <= rank_cutoff over p, without building them.
/// Saturates at SIZE_MAX.
std::size_t universe_size(const Poset& p, unsigned rank_cutoff);

SetId insert(Universe& u, Extent extent);

/// Extent holding the same members at every node.
Extent constant_extent(const Universe& u, std::vector<SetId> members);

/// Von Neumann numeral with constant extent {0,...,n-1}.
SetId numeral(Universe& u, unsigned n);

/// The step set that is empty strictly outside upset(kappa) and {0} on it.
SetId one_kappa(Universe& u, NodeId kappa);

/// Transition functions of the full model are identities; throws
/// OrderError unless from <= to.
SetId transition(const Universe& u, SetId x, NodeId from, NodeId to);

/// One line per set: `id rank 0:{ids} 1:{ids} ...`.
std::string dump(const Universe& u);

}  // namespace kripkelab
