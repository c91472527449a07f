#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "kripkelab/formula.hpp"
#include "kripkelab/universe.hpp"

namespace kripkelab {

/// Values of free variables.
using Env = std::map<std::string, SetId>;

enum class Relation : std::uint8_t { mem, eq };

/// One memoized fact: at `node`, `lhs` is (or is not) a member of / equal to `rhs`.
struct CachedFact {
  NodeId node;
  SetId lhs;
  SetId rhs;
  Relation relation;
  bool value;
};

/// Kripke satisfaction over one universe, with a memo for the primitive
/// relations.
///
/// Membership and equality are the usual mutual recursion, terminating by
/// rank descent through extents:
///   node |- f in g   iff  some h in g(node) has node |- f = h
///   node |- f = g    iff  for every later t, every member of f(t) is forced
///                         in g at t and vice versa.
///
/// The memo is not synchronized; use one Evaluator per thread. The universe
/// may grow between calls (entries stay valid since extents never change).
class Evaluator {
 public:
  explicit Evaluator(const Universe& u);

  const Universe& universe() const noexcept { return *universe_; }

  bool mem(NodeId node, SetId f, SetId g);
  bool eq(NodeId node, SetId f, SetId g);

  /// node |= phi with unbounded quantifiers ranging over `pool`.
  bool forces(std::span<const SetId> pool, NodeId node, const Formula& phi,
              const Env& env = {});

  /// Satisfaction in the model cut down to `nodes` (which must be
  /// downward-closed and contain `node`): implications and universal
  /// quantifiers only look at later nodes inside `nodes`; atoms keep their
  /// full-model meaning.
  bool forces_within(const NodeSet& nodes, std::span<const SetId> pool, NodeId node,
                     const Formula& phi, const Env& env = {});

  std::vector<CachedFact> cached_facts() const;

 private:
  struct Binding {
    const std::string* name;
    SetId value;
  };

  void reserve_for(std::size_t n);
  std::uint8_t& cell(NodeId node, SetId f, SetId g) {
    return memo_[(static_cast<std::size_t>(node.index) * capacity_ + f.value) * capacity_ +
                 g.value];
  }
  bool mem_rec(NodeId node, SetId f, SetId g);
  bool eq_rec(NodeId node, SetId f, SetId g);

  bool eval(const Formula& phi, NodeId node);
  SetId resolve(const Term& t) const;
  bool visible(NodeId n) const { return mask_.empty() || mask_[n.index]; }
  bool run(std::span<const SetId> pool, NodeId node, const Formula& phi, const Env& env);

  const Universe* universe_;
  std::size_t capacity_ = 0;
  std::vector<std::uint8_t> memo_;

  std::span<const SetId> pool_;
  std::vector<bool> mask_;
  std::vector<Binding> scope_;
};

bool mem_forced(const Universe& u, NodeId node, SetId f, SetId g);
bool eq_forced(const Universe& u, NodeId node, SetId f, SetId g);
bool forces(const Universe& u, std::span<const SetId> pool, NodeId node, const Formula& phi,
            const Env& env = {});

enum class EmVerdict { eq, neq, undecided };

const char* to_string(EmVerdict v);

/// Whether x = y is forced at `node`, refuted at every later node, or
/// neither (a failure of excluded middle for equality).
EmVerdict decide_em_pair(Evaluator& ev, NodeId node, SetId x, SetId y);
EmVerdict decide_em_pair(const Universe& u, std::span<const SetId> pool, NodeId node, SetId x,
                         SetId y);

}  // namespace kripkelab
