#pragma once

#include <compare>
#include <cstdint>
#include <ostream>
#include <vector>

namespace kripkelab {

/// Position of a node inside a Poset.
struct NodeId {
  std::uint32_t index = 0;

  friend auto operator<=>(const NodeId&, const NodeId&) = default;
};

inline std::ostream& operator<<(std::ostream& os, NodeId n) {
  return os << n.index;
}

/// Sorted, duplicate-free list of nodes.
using NodeSet = std::vector<NodeId>;

/// A finite partial order on nodes 0..size-1.
///
/// Every node also carries a label: the node it stood for in the poset it
/// was restricted from. Freshly built posets label each node by itself.
class Poset {
 public:
  /// Builds from an explicit relation: `leq[a][b]` means a <= b.
  /// Throws StructureError unless the relation is a partial order.
  explicit Poset(std::vector<std::vector<bool>> leq);

  std::uint32_t size() const noexcept {
    return static_cast<std::uint32_t>(labels_.size());
  }

  bool leq(NodeId a, NodeId b) const;
  bool contains(NodeId a) const noexcept { return a.index < size(); }
  NodeId label(NodeId a) const;

  /// {b : a <= b}, ascending.
  const NodeSet& upset(NodeId a) const;

  NodeSet all_nodes() const;
  /// Nodes with nothing strictly below them.
  NodeSet minimal_nodes() const;
  /// Nodes with nothing strictly above them.
  NodeSet maximal_nodes() const;

  bool is_downward_closed(const NodeSet& nodes) const;
  bool is_upward_closed(const NodeSet& nodes) const;

  /// Every upward-closed node set, as bitmasks over node indices, ascending.
  /// Requires size() <= 20.
  std::vector<std::uint32_t> upsets() const;

  bool operator==(const Poset& other) const {
    return leq_ == other.leq_ && labels_ == other.labels_;
  }

 private:
  Poset(std::vector<std::vector<bool>> leq, std::vector<NodeId> labels);
  void require(NodeId a) const;

  std::vector<std::vector<bool>> leq_;
  std::vector<NodeId> labels_;
  std::vector<NodeSet> upsets_;

  friend Poset restrict_downclosed(const Poset& p, const NodeSet& keep);
};

/// The linear order 0 < 1 < ... < n-1. Throws InvalidSizeError when n == 0.
Poset make_chain(std::uint32_t n);

/// Same as Poset::upset, with the range check spelled as a free function.
NodeSet upset(const Poset& p, NodeId a);

/// Induced sub-order on a nonempty downward-closed node set. Local node i of
/// the result is labelled by the i-th kept node.
Poset restrict_downclosed(const Poset& p, const NodeSet& keep);

/// Sorts and deduplicates.
NodeSet normalize(NodeSet nodes);

}  // namespace kripkelab
