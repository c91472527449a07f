#pragma once

#include <span>

#include "kripkelab/formula.hpp"
#include "kripkelab/semantics.hpp"

namespace kripkelab {

/// Nodes that do not force the sentence psi. They form a downward-closed
/// set because forcing is monotone; throws EmptyRestrictionError when psi
/// is already forced at a minimal node (leaving nothing), StructureError if
/// the result is not downward-closed.
NodeSet pre_psi_nodes(const Universe& u, std::span<const SetId> pool, const Formula& psi);
NodeSet pre_psi_nodes(Evaluator& ev, std::span<const SetId> pool, const Formula& psi);

/// Satisfaction in the model with every node outside `nodes` removed.
/// Throws DomainError if `node` is not in `nodes`.
bool forces_restricted(const Universe& u, std::span<const SetId> pool, const NodeSet& nodes,
                       NodeId node, const Formula& phi, const Env& env = {});

}  // namespace kripkelab
