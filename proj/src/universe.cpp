#include "kripkelab/universe.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <set>
#include <sstream>

#include "kripkelab/errors.hpp"

namespace kripkelab {

namespace {

std::size_t saturating_pow(std::size_t base, std::size_t exp) {
  std::size_t out = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    if (base != 0 && out > std::numeric_limits<std::size_t>::max() / base) {
      return std::numeric_limits<std::size_t>::max();
    }
    out *= base;
  }
  return out;
}

}  // namespace

std::size_t default_budget() {
  if (const char* env = std::getenv("KRIPKELAB_BUDGET")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return kDefaultBudget;
}

Universe::Universe(Poset poset, std::size_t budget)
    : poset_(std::move(poset)), budget_(budget) {}

const KSet& Universe::at(SetId id) const {
  if (!contains(id)) {
    throw RangeError("set id " + std::to_string(id.value) + " not in universe of size " +
                     std::to_string(size()));
  }
  return table_[id.value];
}

const std::vector<SetId>& Universe::members(SetId id, NodeId node) const {
  const KSet& k = at(id);
  if (!poset_.contains(node)) {
    throw RangeError("node " + std::to_string(node.index) + " outside poset");
  }
  return k.extent[node.index];
}

std::optional<SetId> Universe::find(const Extent& extent) const {
  auto it = index_.find(extent);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

void Universe::check_extent(const Extent& extent) const {
  if (extent.size() != poset_.size()) {
    throw RangeError("extent covers " + std::to_string(extent.size()) +
                     " nodes, poset has " + std::to_string(poset_.size()));
  }
  for (const auto& members : extent) {
    for (SetId m : members) {
      if (!contains(m)) {
        throw ClosureError("extent references unknown set id " + std::to_string(m.value));
      }
    }
  }
  for (std::uint32_t a = 0; a < poset_.size(); ++a) {
    for (NodeId b : poset_.upset(NodeId{a})) {
      if (!std::includes(extent[b.index].begin(), extent[b.index].end(),
                         extent[a].begin(), extent[a].end())) {
        throw MonotonicityError("extent shrinks from node " + std::to_string(a) +
                                " to node " + std::to_string(b.index));
      }
    }
  }
}

SetId Universe::append(Extent extent, unsigned rank) {
  const SetId id{static_cast<std::uint32_t>(table_.size())};
  index_.emplace(extent, id);
  table_.push_back(KSet{id, rank, std::move(extent)});
  return id;
}

SetId Universe::insert(Extent extent) {
  for (auto& members : extent) {
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
  }
  check_extent(extent);
  if (auto existing = find(extent)) return *existing;
  if (table_.size() >= budget_) {
    throw BudgetError("universe budget of " + std::to_string(budget_) +
                          " sets exhausted by insertion",
                      0);
  }
  unsigned rank = 0;
  for (const auto& members : extent) {
    for (SetId m : members) rank = std::max(rank, table_[m.value].rank);
  }
  return append(std::move(extent), rank + 1);
}

std::vector<SetId> Universe::ids() const {
  std::vector<SetId> out;
  out.reserve(table_.size());
  for (const auto& k : table_) out.push_back(k.id);
  return out;
}

std::vector<SetId> Universe::pool() const {
  std::vector<SetId> out;
  out.reserve(enumerated_);
  for (std::size_t i = 0; i < enumerated_; ++i) out.push_back(table_[i].id);
  return out;
}

void Universe::validate() const {
  for (const auto& k : table_) {
    check_extent(k.extent);
    unsigned top = 0;
    for (const auto& members : k.extent) {
      for (SetId m : members) {
        if (table_[m.value].rank >= k.rank) {
          throw StructureError("member " + std::to_string(m.value) + " of set " +
                               std::to_string(k.id.value) + " does not have lower rank");
        }
        top = std::max(top, table_[m.value].rank);
      }
    }
    if (k.rank != top + 1) {
      throw StructureError("set " + std::to_string(k.id.value) + " has rank " +
                           std::to_string(k.rank) + ", expected " +
                           std::to_string(top + 1));
    }
    auto it = index_.find(k.extent);
    if (it == index_.end() || it->second != k.id) {
      throw StructureError("dedup index disagrees with table at set " +
                           std::to_string(k.id.value));
    }
  }
  if (index_.size() != table_.size()) {
    throw StructureError("duplicate extents in universe table");
  }
}

std::size_t universe_size(const Poset& p, unsigned rank_cutoff) {
  const std::size_t upsets = p.upsets().size();
  std::size_t size = 0;
  for (unsigned r = 1; r <= rank_cutoff; ++r) {
    size = saturating_pow(upsets, size);
    if (size == std::numeric_limits<std::size_t>::max()) break;
  }
  return size;
}

void for_each_monotone_extent(const Poset& p, std::span<const SetId> candidates,
                              const std::function<void(const Extent&)>& visit) {
  // A monotone map into subsets of the candidates is the same as choosing,
  // for each candidate, the up-set of nodes where it is a member.
  const std::vector<std::uint32_t> upsets = p.upsets();
  const std::size_t radix = upsets.size();
  const std::uint32_t nodes = p.size();
  std::vector<std::size_t> digits(candidates.size(), 0);
  while (true) {
    Extent extent(nodes);
    for (std::size_t s = 0; s < candidates.size(); ++s) {
      const std::uint32_t mask = upsets[digits[s]];
      for (std::uint32_t node = 0; node < nodes; ++node) {
        if (mask >> node & 1u) extent[node].push_back(candidates[s]);
      }
    }
    visit(extent);
    std::size_t s = 0;
    for (; s < candidates.size(); ++s) {
      if (++digits[s] < radix) break;
      digits[s] = 0;
    }
    if (s == candidates.size()) return;
  }
}

Universe build_universe(const Poset& p, unsigned rank_cutoff, std::size_t budget) {
  if (rank_cutoff == 0) throw InvalidSizeError("rank cutoff must be at least 1");
  Universe u(p, budget);
  const std::size_t radix = p.upsets().size();

  for (unsigned r = 1; r <= rank_cutoff; ++r) {
    const std::size_t lower = u.size();
    const std::size_t count = saturating_pow(radix, lower);
    if (count > budget) {
      throw BudgetError("enumerating rank " + std::to_string(r) + " needs " +
                            (count == std::numeric_limits<std::size_t>::max()
                                 ? std::string("more than 2^64")
                                 : std::to_string(count)) +
                            " sets, budget is " + std::to_string(budget),
                        r);
    }
    std::vector<SetId> lower_ids = u.ids();
    std::set<Extent> fresh;
    for_each_monotone_extent(p, lower_ids, [&](const Extent& extent) {
      if (!u.find(extent)) fresh.insert(extent);
    });
    for (const auto& extent : fresh) u.append(extent, r);
    u.rank_cutoff_ = r;
    u.enumerated_ = u.size();
  }
  return u;
}

SetId insert(Universe& u, Extent extent) { return u.insert(std::move(extent)); }

Extent constant_extent(const Universe& u, std::vector<SetId> members) {
  return Extent(u.poset().size(), std::move(members));
}

SetId numeral(Universe& u, unsigned n) {
  std::vector<SetId> below;
  SetId current = u.insert(constant_extent(u, {}));
  for (unsigned k = 0; k < n; ++k) {
    below.push_back(current);
    current = u.insert(constant_extent(u, below));
  }
  return current;
}

SetId one_kappa(Universe& u, NodeId kappa) {
  const NodeSet& above = u.poset().upset(kappa);
  const SetId zero = u.insert(constant_extent(u, {}));
  Extent extent(u.poset().size());
  for (NodeId n : above) extent[n.index] = {zero};
  return u.insert(std::move(extent));
}

SetId transition(const Universe& u, SetId x, NodeId from, NodeId to) {
  u.at(x);
  if (!u.poset().leq(from, to)) {
    throw OrderError("no transition from node " + std::to_string(from.index) +
                     " to node " + std::to_string(to.index));
  }
  return x;
}

std::string dump(const Universe& u) {
  std::ostringstream os;
  for (SetId id : u.ids()) {
    const KSet& k = u.at(id);
    os << id.value << ' ' << k.rank;
    for (std::size_t node = 0; node < k.extent.size(); ++node) {
      os << ' ' << node << ":{";
      for (std::size_t i = 0; i < k.extent[node].size(); ++i) {
        if (i) os << ',';
        os << k.extent[node][i].value;
      }
      os << '}';
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace kripkelab
