#include "kripkelab/poset.hpp"

#include <algorithm>
#include <string>

#include "kripkelab/errors.hpp"

namespace kripkelab {

namespace {

std::vector<NodeId> identity_labels(std::size_t n) {
  std::vector<NodeId> labels(n);
  for (std::size_t i = 0; i < n; ++i) labels[i] = NodeId{static_cast<std::uint32_t>(i)};
  return labels;
}

}  // namespace

Poset::Poset(std::vector<std::vector<bool>> leq)
    : Poset(std::move(leq), {}) {}

Poset::Poset(std::vector<std::vector<bool>> leq, std::vector<NodeId> labels)
    : leq_(std::move(leq)), labels_(std::move(labels)) {
  const std::size_t n = leq_.size();
  if (n == 0) throw InvalidSizeError("poset must have at least one node");
  if (labels_.empty()) labels_ = identity_labels(n);
  for (const auto& row : leq_) {
    if (row.size() != n) throw StructureError("order relation is not square");
  }
  for (std::size_t a = 0; a < n; ++a) {
    if (!leq_[a][a]) {
      throw StructureError("order is not reflexive at node " + std::to_string(a));
    }
    for (std::size_t b = 0; b < n; ++b) {
      if (a != b && leq_[a][b] && leq_[b][a]) {
        throw StructureError("order is not antisymmetric at nodes " +
                             std::to_string(a) + "," + std::to_string(b));
      }
      for (std::size_t c = 0; c < n; ++c) {
        if (leq_[a][b] && leq_[b][c] && !leq_[a][c]) {
          throw StructureError("order is not transitive at nodes " +
                               std::to_string(a) + "," + std::to_string(b) +
                               "," + std::to_string(c));
        }
      }
    }
  }
  upsets_.resize(n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (leq_[a][b]) upsets_[a].push_back(NodeId{static_cast<std::uint32_t>(b)});
    }
  }
}

void Poset::require(NodeId a) const {
  if (!contains(a)) {
    throw RangeError("node " + std::to_string(a.index) + " outside poset of size " +
                     std::to_string(size()));
  }
}

bool Poset::leq(NodeId a, NodeId b) const {
  require(a);
  require(b);
  return leq_[a.index][b.index];
}

NodeId Poset::label(NodeId a) const {
  require(a);
  return labels_[a.index];
}

const NodeSet& Poset::upset(NodeId a) const {
  require(a);
  return upsets_[a.index];
}

NodeSet Poset::all_nodes() const { return identity_labels(size()); }

NodeSet Poset::minimal_nodes() const {
  NodeSet out;
  for (std::uint32_t a = 0; a < size(); ++a) {
    bool minimal = true;
    for (std::uint32_t b = 0; b < size() && minimal; ++b) {
      if (a != b && leq_[b][a]) minimal = false;
    }
    if (minimal) out.push_back(NodeId{a});
  }
  return out;
}

NodeSet Poset::maximal_nodes() const {
  NodeSet out;
  for (std::uint32_t a = 0; a < size(); ++a) {
    if (upsets_[a].size() == 1) out.push_back(NodeId{a});
  }
  return out;
}

bool Poset::is_downward_closed(const NodeSet& nodes) const {
  std::vector<bool> in(size(), false);
  for (NodeId n : nodes) {
    require(n);
    in[n.index] = true;
  }
  for (std::uint32_t a = 0; a < size(); ++a) {
    for (std::uint32_t b = 0; b < size(); ++b) {
      if (leq_[a][b] && in[b] && !in[a]) return false;
    }
  }
  return true;
}

bool Poset::is_upward_closed(const NodeSet& nodes) const {
  std::vector<bool> in(size(), false);
  for (NodeId n : nodes) {
    require(n);
    in[n.index] = true;
  }
  for (std::uint32_t a = 0; a < size(); ++a) {
    for (std::uint32_t b = 0; b < size(); ++b) {
      if (leq_[a][b] && in[a] && !in[b]) return false;
    }
  }
  return true;
}

std::vector<std::uint32_t> Poset::upsets() const {
  if (size() > 20) throw InvalidSizeError("up-set enumeration limited to 20 nodes");
  std::vector<std::uint32_t> masks(size(), 0);
  for (std::uint32_t a = 0; a < size(); ++a) {
    for (NodeId b : upsets_[a]) masks[a] |= 1u << b.index;
  }
  std::vector<std::uint32_t> out;
  const std::uint32_t limit = 1u << size();
  for (std::uint32_t s = 0; s < limit; ++s) {
    bool closed = true;
    for (std::uint32_t a = 0; a < size() && closed; ++a) {
      if ((s >> a & 1u) && (s & masks[a]) != masks[a]) closed = false;
    }
    if (closed) out.push_back(s);
  }
  return out;
}

Poset make_chain(std::uint32_t n) {
  if (n == 0) throw InvalidSizeError("chain length must be positive");
  std::vector<std::vector<bool>> leq(n, std::vector<bool>(n, false));
  for (std::uint32_t a = 0; a < n; ++a) {
    for (std::uint32_t b = a; b < n; ++b) leq[a][b] = true;
  }
  return Poset(std::move(leq));
}

NodeSet upset(const Poset& p, NodeId a) { return p.upset(a); }

NodeSet normalize(NodeSet nodes) {
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  return nodes;
}

Poset restrict_downclosed(const Poset& p, const NodeSet& keep) {
  const NodeSet nodes = normalize(keep);
  if (nodes.empty()) {
    throw EmptyRestrictionError("restriction must keep at least one node");
  }
  if (!p.is_downward_closed(nodes)) {
    throw StructureError("kept nodes are not downward-closed");
  }
  std::vector<std::vector<bool>> leq(nodes.size(), std::vector<bool>(nodes.size()));
  std::vector<NodeId> labels;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    labels.push_back(p.label(nodes[i]));
    for (std::size_t j = 0; j < nodes.size(); ++j) {
      leq[i][j] = p.leq(nodes[i], nodes[j]);
    }
  }
  return Poset(std::move(leq), std::move(labels));
}

}  // namespace kripkelab
