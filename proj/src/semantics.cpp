#include "kripkelab/semantics.hpp"

#include <algorithm>

#include "kripkelab/errors.hpp"

namespace kripkelab {

namespace {

constexpr std::uint8_t kEqKnown = 1;
constexpr std::uint8_t kEqValue = 2;
constexpr std::uint8_t kMemKnown = 4;
constexpr std::uint8_t kMemValue = 8;

}  // namespace

Evaluator::Evaluator(const Universe& u) : universe_(&u) { reserve_for(u.size()); }

void Evaluator::reserve_for(std::size_t n) {
  if (n <= capacity_) return;
  const std::size_t cap = std::max(n, capacity_ * 2);
  const std::size_t nodes = universe_->poset().size();
  std::vector<std::uint8_t> grown(nodes * cap * cap, 0);
  for (std::size_t node = 0; node < nodes; ++node) {
    for (std::size_t f = 0; f < capacity_; ++f) {
      std::copy_n(memo_.begin() + static_cast<std::ptrdiff_t>((node * capacity_ + f) * capacity_),
                  capacity_,
                  grown.begin() + static_cast<std::ptrdiff_t>((node * cap + f) * cap));
    }
  }
  memo_ = std::move(grown);
  capacity_ = cap;
}

bool Evaluator::mem(NodeId node, SetId f, SetId g) {
  universe_->at(f);
  universe_->at(g);
  universe_->poset().upset(node);
  reserve_for(universe_->size());
  return mem_rec(node, f, g);
}

bool Evaluator::eq(NodeId node, SetId f, SetId g) {
  universe_->at(f);
  universe_->at(g);
  universe_->poset().upset(node);
  reserve_for(universe_->size());
  return eq_rec(node, f, g);
}

bool Evaluator::mem_rec(NodeId node, SetId f, SetId g) {
  const std::uint8_t c = cell(node, f, g);
  if (c & kMemKnown) return c & kMemValue;
  bool value = false;
  for (SetId h : universe_->at(g).extent[node.index]) {
    if (eq_rec(node, f, h)) {
      value = true;
      break;
    }
  }
  cell(node, f, g) |= kMemKnown | (value ? kMemValue : 0);
  return value;
}

bool Evaluator::eq_rec(NodeId node, SetId f, SetId g) {
  const std::uint8_t c = cell(node, f, g);
  if (c & kEqKnown) return c & kEqValue;
  bool value = true;
  const KSet& fs = universe_->at(f);
  const KSet& gs = universe_->at(g);
  for (NodeId later : universe_->poset().upset(node)) {
    for (SetId h : fs.extent[later.index]) {
      if (!mem_rec(later, h, g)) {
        value = false;
        break;
      }
    }
    if (!value) break;
    for (SetId h : gs.extent[later.index]) {
      if (!mem_rec(later, h, f)) {
        value = false;
        break;
      }
    }
    if (!value) break;
  }
  const std::uint8_t bits = kEqKnown | (value ? kEqValue : 0);
  cell(node, f, g) |= bits;
  cell(node, g, f) |= bits;
  return value;
}

std::vector<CachedFact> Evaluator::cached_facts() const {
  std::vector<CachedFact> out;
  const std::size_t nodes = universe_->poset().size();
  for (std::size_t node = 0; node < nodes; ++node) {
    for (std::size_t f = 0; f < capacity_; ++f) {
      for (std::size_t g = 0; g < capacity_; ++g) {
        const std::uint8_t c = memo_[(node * capacity_ + f) * capacity_ + g];
        const NodeId n{static_cast<std::uint32_t>(node)};
        const SetId a{static_cast<std::uint32_t>(f)};
        const SetId b{static_cast<std::uint32_t>(g)};
        if (c & kMemKnown) out.push_back({n, a, b, Relation::mem, (c & kMemValue) != 0});
        if (c & kEqKnown) out.push_back({n, a, b, Relation::eq, (c & kEqValue) != 0});
      }
    }
  }
  return out;
}

SetId Evaluator::resolve(const Term& t) const {
  if (!t.is_variable()) {
    if (!universe_->contains(t.id())) {
      throw EvaluationError("parameter #" + std::to_string(t.id().value) +
                            " is not in the universe");
    }
    return t.id();
  }
  for (auto it = scope_.rbegin(); it != scope_.rend(); ++it) {
    if (*it->name == t.name()) return it->value;
  }
  throw EvaluationError("unbound variable '" + t.name() + "'");
}

bool Evaluator::eval(const Formula& phi, NodeId node) {
  const Poset& poset = universe_->poset();
  switch (phi.kind()) {
    case FormulaKind::bottom:
      return false;
    case FormulaKind::mem:
      return mem_rec(node, resolve(phi.lhs()), resolve(phi.rhs()));
    case FormulaKind::eq:
      return eq_rec(node, resolve(phi.lhs()), resolve(phi.rhs()));
    case FormulaKind::conj:
      return eval(phi.left(), node) && eval(phi.right(), node);
    case FormulaKind::disj:
      return eval(phi.left(), node) || eval(phi.right(), node);
    case FormulaKind::imp:
      for (NodeId later : poset.upset(node)) {
        if (!visible(later)) continue;
        if (eval(phi.left(), later) && !eval(phi.right(), later)) return false;
      }
      return true;
    case FormulaKind::forall:
      for (NodeId later : poset.upset(node)) {
        if (!visible(later)) continue;
        for (SetId x : pool_) {
          scope_.push_back({&phi.var(), x});
          const bool ok = eval(phi.body(), later);
          scope_.pop_back();
          if (!ok) return false;
        }
      }
      return true;
    case FormulaKind::exists:
      for (SetId x : pool_) {
        scope_.push_back({&phi.var(), x});
        const bool ok = eval(phi.body(), node);
        scope_.pop_back();
        if (ok) return true;
      }
      return false;
    case FormulaKind::bounded_forall:
    case FormulaKind::bounded_exists: {
      const bool universal = phi.kind() == FormulaKind::bounded_forall;
      const SetId bound = resolve(phi.bound());
      // Witnesses are the members of the bound at the node plus any pool
      // element forced to be a member there.
      // At `at`, true iff the body holds for all witnesses (universal) or
      // for some witness (existential).
      auto witnesses_hold = [&](NodeId at) {
        const std::vector<SetId>& members = universe_->at(bound).extent[at.index];
        auto decides = [&](SetId h) {
          if (!mem_rec(at, h, bound)) return false;
          scope_.push_back({&phi.var(), h});
          const bool ok = eval(phi.body(), at);
          scope_.pop_back();
          return ok != universal;
        };
        for (SetId h : members) {
          if (decides(h)) return !universal;
        }
        for (SetId h : pool_) {
          if (std::binary_search(members.begin(), members.end(), h)) continue;
          if (decides(h)) return !universal;
        }
        return universal;
      };
      if (!universal) return witnesses_hold(node);
      for (NodeId later : poset.upset(node)) {
        if (!visible(later)) continue;
        if (!witnesses_hold(later)) return false;
      }
      return true;
    }
  }
  return false;
}

bool Evaluator::run(std::span<const SetId> pool, NodeId node, const Formula& phi,
                    const Env& env) {
  universe_->poset().upset(node);
  reserve_for(universe_->size());
  for (SetId x : pool) universe_->at(x);
  pool_ = pool;
  scope_.clear();
  for (const auto& [name, value] : env) {
    if (!universe_->contains(value)) {
      throw EvaluationError("variable '" + name + "' bound to unknown set id " +
                            std::to_string(value.value));
    }
    scope_.push_back({&name, value});
  }
  const bool out = eval(phi, node);
  scope_.clear();
  return out;
}

bool Evaluator::forces(std::span<const SetId> pool, NodeId node, const Formula& phi,
                       const Env& env) {
  mask_.clear();
  return run(pool, node, phi, env);
}

bool Evaluator::forces_within(const NodeSet& nodes, std::span<const SetId> pool, NodeId node,
                              const Formula& phi, const Env& env) {
  const Poset& poset = universe_->poset();
  if (!poset.is_downward_closed(nodes)) {
    throw StructureError("restricted node set is not downward-closed");
  }
  if (!std::binary_search(nodes.begin(), nodes.end(), node)) {
    throw DomainError("node " + std::to_string(node.index) + " is not in the restricted model");
  }
  mask_.assign(poset.size(), false);
  for (NodeId n : nodes) mask_[n.index] = true;
  try {
    const bool out = run(pool, node, phi, env);
    mask_.clear();
    return out;
  } catch (...) {
    mask_.clear();
    throw;
  }
}

bool mem_forced(const Universe& u, NodeId node, SetId f, SetId g) {
  return Evaluator(u).mem(node, f, g);
}

bool eq_forced(const Universe& u, NodeId node, SetId f, SetId g) {
  return Evaluator(u).eq(node, f, g);
}

bool forces(const Universe& u, std::span<const SetId> pool, NodeId node, const Formula& phi,
            const Env& env) {
  return Evaluator(u).forces(pool, node, phi, env);
}

const char* to_string(EmVerdict v) {
  switch (v) {
    case EmVerdict::eq: return "eq";
    case EmVerdict::neq: return "neq";
    case EmVerdict::undecided: return "undecided";
  }
  return "?";
}

EmVerdict decide_em_pair(Evaluator& ev, NodeId node, SetId x, SetId y) {
  if (ev.eq(node, x, y)) return EmVerdict::eq;
  for (NodeId later : ev.universe().poset().upset(node)) {
    if (ev.eq(later, x, y)) return EmVerdict::undecided;
  }
  return EmVerdict::neq;
}

EmVerdict decide_em_pair(const Universe& u, std::span<const SetId> pool, NodeId node, SetId x,
                         SetId y) {
  for (SetId p : pool) u.at(p);
  Evaluator ev(u);
  return decide_em_pair(ev, node, x, y);
}

}  // namespace kripkelab
