#include "kripkelab/relativize.hpp"

#include "kripkelab/errors.hpp"

namespace kripkelab {

NodeSet pre_psi_nodes(Evaluator& ev, std::span<const SetId> pool, const Formula& psi) {
  if (!is_closed(psi)) throw ArityError("psi must be a sentence");
  const Poset& poset = ev.universe().poset();
  NodeSet out;
  for (NodeId n : poset.all_nodes()) {
    if (!ev.forces(pool, n, psi)) out.push_back(n);
  }
  if (out.empty()) {
    throw EmptyRestrictionError("psi is forced at every node; nothing remains after removal");
  }
  if (!poset.is_downward_closed(out)) {
    throw StructureError("nodes not forcing psi are not downward-closed");
  }
  return out;
}

NodeSet pre_psi_nodes(const Universe& u, std::span<const SetId> pool, const Formula& psi) {
  Evaluator ev(u);
  return pre_psi_nodes(ev, pool, psi);
}

bool forces_restricted(const Universe& u, std::span<const SetId> pool, const NodeSet& nodes,
                       NodeId node, const Formula& phi, const Env& env) {
  return Evaluator(u).forces_within(normalize(nodes), pool, node, phi, env);
}

}  // namespace kripkelab
