#include "kripkelab/axiomlab.hpp"

#include <algorithm>
#include <limits>
#include <set>

#include "kripkelab/errors.hpp"

namespace kripkelab {

namespace shapes {

namespace {

Term var(const char* name) { return Term::variable(name); }

}  // namespace

Formula subset(const Term& z, const Term& x) {
  return Formula::bounded_forall("_w", z, Formula::mem(var("_w"), x));
}

Formula ordered_pair(const Term& z, const Term& x, const Term& y) {
  // {x}
  Formula singleton = Formula::conj(
      Formula::mem(x, var("_s")),
      Formula::bounded_forall("_w", var("_s"), Formula::eq(var("_w"), x)));
  // {x, y}
  Formula doubleton = Formula::conj(
      Formula::conj(Formula::mem(x, var("_t")), Formula::mem(y, var("_t"))),
      Formula::bounded_forall(
          "_w", var("_t"),
          Formula::disj(Formula::eq(var("_w"), x), Formula::eq(var("_w"), y))));
  Formula only_these = Formula::bounded_forall(
      "_w", z,
      Formula::disj(Formula::eq(var("_w"), var("_s")), Formula::eq(var("_w"), var("_t"))));
  return Formula::bounded_exists(
      "_s", z,
      Formula::bounded_exists(
          "_t", z,
          Formula::conj(Formula::conj(std::move(singleton), std::move(doubleton)),
                        std::move(only_these))));
}

Formula relation(const Term& r, const Term& a, const Term& b) {
  return Formula::bounded_forall(
      "_z", r,
      Formula::bounded_exists(
          "_x", a,
          Formula::bounded_exists("_y", b, ordered_pair(var("_z"), var("_x"), var("_y")))));
}

Formula total(const Term& r, const Term& a, const Term& b) {
  return Formula::bounded_forall(
      "_x", a,
      Formula::bounded_exists(
          "_y", b,
          Formula::bounded_exists("_z", r, ordered_pair(var("_z"), var("_x"), var("_y")))));
}

Formula total_relation(const Term& r, const Term& a, const Term& b) {
  return Formula::conj(relation(r, a, b), total(r, a, b));
}

Formula single_valued(const Term& r, const Term& a, const Term& b) {
  Formula premise = Formula::conj(ordered_pair(var("_z"), var("_x"), var("_y")),
                                  ordered_pair(var("_q"), var("_x"), var("_v")));
  Formula body = Formula::imp(std::move(premise), Formula::eq(var("_y"), var("_v")));
  return Formula::bounded_forall(
      "_z", r,
      Formula::bounded_forall(
          "_q", r,
          Formula::bounded_forall(
              "_x", a,
              Formula::bounded_forall(
                  "_y", b, Formula::bounded_forall("_v", b, std::move(body))))));
}

Formula total_function(const Term& r, const Term& a, const Term& b) {
  return Formula::conj(total_relation(r, a, b), single_valued(r, a, b));
}

}  // namespace shapes

namespace {

void require_free_within(const Formula& phi, const Env& env,
                         std::initializer_list<std::string> allowed) {
  for (const auto& name : free_variables(phi)) {
    if (env.count(name)) continue;
    if (std::find(allowed.begin(), allowed.end(), name) != allowed.end()) continue;
    throw ArityError("formula has unexpected free variable '" + name + "'");
  }
}

bool is_constant(const Universe& u, SetId s) {
  const Extent& e = u.at(s).extent;
  return std::all_of(e.begin(), e.end(), [&](const auto& m) { return m == e.front(); });
}

Witness witness_at(NodeId node, std::vector<SetId> ids, const Formula& sentence,
                   std::string note = {}) {
  return Witness{node, std::move(ids), render(sentence), std::move(note)};
}

std::size_t budgeted_count(const Universe& u, std::size_t candidates) {
  const std::size_t radix = u.poset().upsets().size();
  std::size_t count = 1;
  for (std::size_t i = 0; i < candidates; ++i) {
    if (count > u.budget() / radix) {
      throw BudgetError("relation enumeration over " + std::to_string(candidates) +
                            " pairs exceeds the budget of " + std::to_string(u.budget()),
                        u.rank_cutoff());
    }
    count *= radix;
  }
  return count;
}

/// Longest chain of nodes starting at `node`.
std::size_t height_above(const Poset& p, NodeId node) {
  std::size_t best = 1;
  for (NodeId later : p.upset(node)) {
    if (later != node) best = std::max(best, 1 + height_above(p, later));
  }
  return best;
}

}  // namespace

Formula close_over(const Formula& phi, const Env& env) {
  Formula out = phi;
  for (const auto& [name, id] : env) out = substitute(out, name, id);
  return out;
}

SetId build_pair(Universe& u, SetId a, SetId b) {
  u.at(a);
  u.at(b);
  return u.insert(constant_extent(u, {a, b}));
}

SetId kuratowski(Universe& u, SetId a, SetId b) {
  const SetId single = build_pair(u, a, a);
  const SetId both = build_pair(u, a, b);
  return build_pair(u, single, both);
}

SetId build_union(Universe& u, SetId a) {
  Extent extent(u.poset().size());
  for (std::size_t node = 0; node < extent.size(); ++node) {
    std::set<SetId> members;
    for (SetId f : u.at(a).extent[node]) {
      const auto& inner = u.at(f).extent[node];
      members.insert(inner.begin(), inner.end());
    }
    extent[node].assign(members.begin(), members.end());
  }
  return u.insert(std::move(extent));
}

SetId build_sep(Universe& u, std::span<const SetId> pool, SetId a, const Formula& phi,
                const std::string& var, const Env& env) {
  require_free_within(phi, env, {var});
  Evaluator ev(u);
  Extent extent(u.poset().size());
  Env local = env;
  for (std::uint32_t node = 0; node < u.poset().size(); ++node) {
    for (SetId x : u.at(a).extent[node]) {
      local[var] = x;
      if (ev.forces(pool, NodeId{node}, phi, local)) extent[node].push_back(x);
    }
  }
  return u.insert(std::move(extent));
}

CheckReport check_separation(const Universe& u, std::span<const SetId> pool, SetId a,
                             SetId sep, const Formula& phi, const std::string& var,
                             const Env& env) {
  require_free_within(phi, env, {var});
  CheckReport report;
  report.name = "separation";
  report.parameters = parameters_of(u, {pool.begin(), pool.end()});
  const Term x = Term::variable(var);
  const Formula claim =
      Formula::iff(Formula::mem(x, Term::parameter(sep)),
                   Formula::conj(Formula::mem(x, Term::parameter(a)), phi));
  Evaluator ev(u);
  Env local = env;
  std::size_t checked = 0;
  for (NodeId node : u.poset().all_nodes()) {
    for (SetId element : pool) {
      local[var] = element;
      ++checked;
      if (!ev.forces(pool, node, claim, local)) {
        report.status = Status::fail;
        report.witness = witness_at(node, {a, sep, element}, close_over(claim, local),
                                    "membership in the separation set disagrees");
        report.detail = "failed after " + std::to_string(checked) + " instances";
        return report;
      }
    }
  }
  report.detail = std::to_string(checked) + " instances";
  return report;
}

CheckReport check_sep_axiom(Universe& u, std::span<const SetId> pool, SetId a,
                            const Formula& phi, const std::string& var, const Env& env) {
  const SetId sep = build_sep(u, pool, a, phi, var, env);
  CheckReport report = check_separation(u, pool, a, sep, phi, var, env);
  report.detail += "; separation set #" + std::to_string(sep.value);
  return report;
}

std::vector<SetId> product_pairs(Universe& u, SetId a, SetId b) {
  if (!is_constant(u, a) || !is_constant(u, b)) {
    throw StructureError("relation enumeration needs sets with constant extents");
  }
  std::vector<SetId> out;
  for (SetId x : u.at(a).extent.front()) {
    for (SetId y : u.at(b).extent.front()) out.push_back(kuratowski(u, x, y));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace {

/// Inserts every monotone relation over the product pairs and returns those
/// forced total at every node (all_nodes) or at some node.
std::vector<SetId> enumerate_relations(Universe& u, SetId a, SetId b, bool all_nodes) {
  const std::vector<SetId> pairs = product_pairs(u, a, b);
  budgeted_count(u, pairs.size());
  std::vector<Extent> extents;
  for_each_monotone_extent(u.poset(), pairs, [&](const Extent& e) { extents.push_back(e); });
  std::vector<SetId> ids;
  for (auto& e : extents) ids.push_back(u.insert(std::move(e)));

  Evaluator ev(u);
  const std::vector<SetId> no_pool;
  std::vector<SetId> out;
  for (SetId r : ids) {
    const Formula claim = shapes::total(Term::parameter(r), Term::parameter(a), Term::parameter(b));
    std::size_t total_at = 0;
    for (NodeId node : u.poset().all_nodes()) {
      if (ev.forces(no_pool, node, claim)) ++total_at;
    }
    if (all_nodes ? total_at == u.poset().size() : total_at > 0) out.push_back(r);
  }
  return out;
}

}  // namespace

std::vector<SetId> enumerate_total_relations(Universe& u, SetId a, SetId b) {
  return enumerate_relations(u, a, b, true);
}

std::vector<SetId> enumerate_eventually_total_relations(Universe& u, SetId a, SetId b) {
  return enumerate_relations(u, a, b, false);
}

std::vector<SetId> constant_total_relations(Universe& u, SetId a, SetId b) {
  const std::vector<SetId> pairs = product_pairs(u, a, b);
  if (pairs.size() >= 32 || (std::size_t{1} << pairs.size()) > u.budget()) {
    throw BudgetError("too many candidate graphs over " + std::to_string(pairs.size()) +
                          " pairs",
                      u.rank_cutoff());
  }
  const NodeId bottom = u.poset().minimal_nodes().front();
  std::vector<SetId> out;
  Evaluator ev(u);
  const std::vector<SetId> no_pool;
  for (std::uint32_t mask = 0; mask < (1u << pairs.size()); ++mask) {
    std::vector<SetId> members;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      if (mask >> i & 1u) members.push_back(pairs[i]);
    }
    const SetId r = u.insert(constant_extent(u, std::move(members)));
    const Formula claim =
        shapes::total(Term::parameter(r), Term::parameter(a), Term::parameter(b));
    if (ev.forces(no_pool, bottom, claim)) out.push_back(r);
  }
  return out;
}

SetId build_subcoll(Universe& u, SetId a, SetId b) {
  const std::vector<SetId> relations = enumerate_eventually_total_relations(u, a, b);
  Evaluator ev(u);
  const std::vector<SetId> no_pool;
  Extent extent(u.poset().size());
  for (SetId r : relations) {
    const Formula claim =
        shapes::total_relation(Term::parameter(r), Term::parameter(a), Term::parameter(b));
    for (NodeId node : u.poset().all_nodes()) {
      if (ev.forces(no_pool, node, claim)) extent[node.index].push_back(r);
    }
  }
  return u.insert(std::move(extent));
}

CheckReport check_fullness(Universe& u, SetId a, SetId b, SetId subcoll) {
  const std::vector<SetId> relations = enumerate_eventually_total_relations(u, a, b);
  CheckReport report;
  report.name = "fullness";
  report.parameters = parameters_of(u, {});
  Evaluator ev(u);
  const std::vector<SetId> no_pool;
  const Term ta = Term::parameter(a), tb = Term::parameter(b);
  std::size_t checked = 0;
  for (SetId r : relations) {
    const Term tr = Term::parameter(r);
    const Formula is_total = shapes::total_relation(tr, ta, tb);
    // exists z in subcoll . z is a total subrelation of r
    const Formula thinned = Formula::bounded_exists(
        "z", Term::parameter(subcoll),
        Formula::conj(shapes::subset(Term::variable("z"), tr),
                      shapes::total(Term::variable("z"), ta, tb)));
    for (NodeId node : u.poset().all_nodes()) {
      if (!ev.forces(no_pool, node, is_total)) continue;
      ++checked;
      if (!ev.forces(no_pool, node, thinned)) {
        report.status = Status::fail;
        report.witness = witness_at(node, {r, subcoll}, thinned,
                                    "total relation without a total subrelation in the collection");
        report.detail = "failed after " + std::to_string(checked) + " relation/node cells";
        return report;
      }
    }
  }
  report.detail = std::to_string(relations.size()) + " relations, " +
                  std::to_string(checked) + " relation/node cells";
  if (checked == 0) report.status = Status::vacuous;
  return report;
}

StrCollResult build_strcoll(Universe& u, std::span<const SetId> pool, SetId a,
                            const Formula& phi, const std::string& xvar,
                            const std::string& yvar, const Env& env) {
  require_free_within(phi, env, {xvar, yvar});
  StrCollResult result;
  CheckReport& report = result.report;
  report.name = "strong-collection";
  report.parameters = parameters_of(u, {pool.begin(), pool.end()});

  Evaluator ev(u);
  const Formula premise = Formula::bounded_forall(
      xvar, Term::parameter(a), Formula::exists(yvar, phi));
  for (NodeId node : u.poset().minimal_nodes()) {
    if (!ev.forces(pool, node, premise, env)) {
      report.status = Status::vacuous;
      report.witness = witness_at(node, {a}, close_over(premise, env),
                                  "premise not witnessed inside the pool");
      report.detail = "precondition failed";
      return result;
    }
  }

  const std::uint32_t nodes = u.poset().size();
  Extent extent(nodes);
  Env local = env;
  // related[node] lists (x, y) with node |= phi(x, y), x a member of a there.
  std::vector<std::vector<std::pair<SetId, SetId>>> related(nodes);
  for (std::uint32_t node = 0; node < nodes; ++node) {
    for (SetId y : pool) {
      local[yvar] = y;
      bool hit = false;
      for (SetId x : u.at(a).extent[node]) {
        local[xvar] = x;
        if (ev.forces(pool, NodeId{node}, phi, local)) {
          related[node].push_back({x, y});
          hit = true;
        }
      }
      if (hit) extent[node].push_back(y);
    }
  }
  const SetId coll = u.insert(std::move(extent));
  result.set = coll;

  for (std::uint32_t node = 0; node < nodes; ++node) {
    const auto& members = u.at(coll).extent[node];
    for (SetId x : u.at(a).extent[node]) {
      const bool covered = std::any_of(related[node].begin(), related[node].end(),
                                       [&](const auto& p) { return p.first == x; });
      if (!covered) {
        local[xvar] = x;
        report.status = Status::fail;
        report.witness = witness_at(
            NodeId{node}, {a, coll, x},
            close_over(Formula::bounded_exists(yvar, Term::parameter(coll), phi), local),
            "member of a without a related element in the collection");
        return result;
      }
    }
    for (SetId y : members) {
      const bool covered = std::any_of(related[node].begin(), related[node].end(),
                                       [&](const auto& p) { return p.second == y; });
      if (!covered) {
        local[yvar] = y;
        report.status = Status::fail;
        report.witness = witness_at(
            NodeId{node}, {a, coll, y},
            close_over(Formula::bounded_exists(xvar, Term::parameter(a), phi), local),
            "collection element unrelated to every member of a");
        return result;
      }
    }
  }
  report.detail = "collection set #" + std::to_string(coll.value);
  return result;
}

SubsetCount count_distinct_subsets_of_one(Universe& u, NodeId node) {
  const SetId zero = numeral(u, 0);
  const SetId one = numeral(u, 1);
  std::vector<SetId> candidates{zero};
  for (NodeId k : u.poset().all_nodes()) candidates.push_back(one_kappa(u, k));

  Evaluator ev(u);
  const std::vector<SetId> no_pool;
  SubsetCount out;
  for (SetId c : candidates) {
    if (!ev.forces(no_pool, node, shapes::subset(Term::parameter(c), Term::parameter(one)))) {
      continue;
    }
    const bool seen = std::any_of(out.ids.begin(), out.ids.end(),
                                  [&](SetId rep) { return ev.eq(node, rep, c); });
    if (!seen) out.ids.push_back(c);
  }
  out.count = out.ids.size();
  return out;
}

CheckReport check_extensionality(const Universe& u, std::span<const SetId> pool) {
  CheckReport report;
  report.name = "extensionality";
  report.parameters = parameters_of(u, {pool.begin(), pool.end()});
  const Term f = Term::variable("f"), g = Term::variable("g"), z = Term::variable("z");
  const Formula same_members = Formula::forall(
      "z", Formula::iff(Formula::mem(z, f), Formula::mem(z, g)));
  const Formula equal = Formula::eq(f, g);
  Evaluator ev(u);
  std::size_t checked = 0;
  for (NodeId node : u.poset().all_nodes()) {
    for (SetId x : pool) {
      for (SetId y : pool) {
        ++checked;
        const Env env{{"f", x}, {"g", y}};
        const bool lhs = ev.eq(node, x, y);
        const bool rhs = ev.forces(pool, node, same_members, env);
        if (lhs != rhs) {
          report.status = Status::fail;
          report.witness = witness_at(node, {x, y},
                                      close_over(Formula::iff(equal, same_members), env),
                                      lhs ? "equal sets with different members"
                                          : "same members but not equal");
          report.detail = "failed after " + std::to_string(checked) + " pairs";
          return report;
        }
      }
    }
  }
  report.detail = std::to_string(checked) + " node/pair cells";
  return report;
}

CheckReport find_em_counterexample(const Universe& u, std::span<const SetId> pool,
                                   NodeId node) {
  CheckReport report;
  report.name = "excluded-middle";
  report.parameters = parameters_of(u, {pool.begin(), pool.end()});
  Evaluator ev(u);
  const Term x = Term::variable("x"), y = Term::variable("y");
  const Formula em = Formula::disj(Formula::eq(x, y), Formula::neg(Formula::eq(x, y)));
  const Formula not_em = Formula::neg(em);
  for (std::size_t i = 0; i < pool.size(); ++i) {
    for (std::size_t j = i + 1; j < pool.size(); ++j) {
      if (decide_em_pair(ev, node, pool[i], pool[j]) != EmVerdict::undecided) continue;
      const Env env{{"x", pool[i]}, {"y", pool[j]}};
      const bool em_forced = ev.forces(pool, node, em, env);
      const bool not_em_forced = ev.forces(pool, node, not_em, env);
      if (em_forced || not_em_forced) {
        report.status = Status::fail;
        report.witness = witness_at(node, {pool[i], pool[j]}, close_over(em, env),
                                    "undecided pair whose excluded-middle instance is decided");
        return report;
      }
      report.witness = witness_at(node, {pool[i], pool[j]}, close_over(em, env),
                                  "neither x = y nor its negation is forced");
      report.detail = "undecided pair found";
      return report;
    }
  }
  if (height_above(u.poset(), node) >= 3) {
    report.status = Status::fail;
    report.detail = "no undecided pair in the pool";
  } else {
    report.status = Status::vacuous;
    report.detail = "no undecided pair; at most two nodes above, so none is required";
  }
  return report;
}

}  // namespace kripkelab
