#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "kripkelab/formula.hpp"
#include "kripkelab/report.hpp"
#include "kripkelab/semantics.hpp"
#include "kripkelab/universe.hpp"

namespace kripkelab {

/// Delta_0 formulas describing set-theoretic shapes. Quantified variables
/// start with an underscore so they cannot capture caller variables.
namespace shapes {

/// forall w in z . w in x
Formula subset(const Term& z, const Term& x);
/// z is the Kuratowski pair {{x},{x,y}}.
Formula ordered_pair(const Term& z, const Term& x, const Term& y);
/// Every member of r is a pair from a x b.
Formula relation(const Term& r, const Term& a, const Term& b);
/// forall x in a . exists y in b . <x,y> in r
Formula total(const Term& r, const Term& a, const Term& b);
Formula total_relation(const Term& r, const Term& a, const Term& b);
/// Pairs of r agreeing on the first coordinate agree on the second.
Formula single_valued(const Term& r, const Term& a, const Term& b);
Formula total_function(const Term& r, const Term& a, const Term& b);

inline Term param(SetId id) { return Term::parameter(id); }

}  // namespace shapes

/// Substitutes every binding of env, turning phi into a sentence when env
/// covers its free variables.
Formula close_over(const Formula& phi, const Env& env);

/// Constant extent {a, b}.
SetId build_pair(Universe& u, SetId a, SetId b);
/// {{a}, {a, b}}
SetId kuratowski(Universe& u, SetId a, SetId b);
/// Extent at each node is the union of the members' extents there.
SetId build_union(Universe& u, SetId a);

/// Extent at each node: members x of a there with node |= phi[var := x].
/// Throws ArityError if phi has free variables other than `var` that env
/// does not bind.
SetId build_sep(Universe& u, std::span<const SetId> pool, SetId a, const Formula& phi,
                const std::string& var = "x", const Env& env = {});

/// Checks, at every node and for every x in pool,
///   x in sep <-> (x in a & phi(x)).
CheckReport check_separation(const Universe& u, std::span<const SetId> pool, SetId a,
                             SetId sep, const Formula& phi, const std::string& var = "x",
                             const Env& env = {});
/// Builds the separation set and checks it.
CheckReport check_sep_axiom(Universe& u, std::span<const SetId> pool, SetId a,
                            const Formula& phi, const std::string& var = "x",
                            const Env& env = {});

/// Kuratowski pairs <x, y> for x in a, y in b. Both sets must have constant
/// extents.
std::vector<SetId> product_pairs(Universe& u, SetId a, SetId b);

/// Monotone relations built from product_pairs that are forced total at
/// every node.
std::vector<SetId> enumerate_total_relations(Universe& u, SetId a, SetId b);
/// Monotone relations built from product_pairs forced total at some node.
std::vector<SetId> enumerate_eventually_total_relations(Universe& u, SetId a, SetId b);
/// Total relations with constant extent (plain total graphs a -> b).
std::vector<SetId> constant_total_relations(Universe& u, SetId a, SetId b);

/// Extent at each node: the enumerated relations forced total there.
SetId build_subcoll(Universe& u, SetId a, SetId b);

/// Every relation forced total at a node has, at that node, a forced total
/// subrelation inside subcoll.
CheckReport check_fullness(Universe& u, SetId a, SetId b, SetId subcoll);

struct StrCollResult {
  std::optional<SetId> set;
  CheckReport report;
};

/// Collects, at each node, every pool element y that is phi-related to some
/// member x of a there. The report covers the premise and both bounding
/// conditions; an unmet premise yields a vacuous report and no set.
StrCollResult build_strcoll(Universe& u, std::span<const SetId> pool, SetId a,
                            const Formula& phi, const std::string& xvar = "x",
                            const std::string& yvar = "y", const Env& env = {});

struct SubsetCount {
  std::size_t count = 0;
  std::vector<SetId> ids;
};

/// Among the empty set and the step sets one_kappa(k), those forced to be
/// subsets of 1 at `node`, counted up to forced equality at `node`.
SubsetCount count_distinct_subsets_of_one(Universe& u, NodeId node);

/// f = g  iff  forall z (z in f <-> z in g), for all f, g in pool at every node.
CheckReport check_extensionality(const Universe& u, std::span<const SetId> pool);

/// Searches pool for a pair with x = y neither forced nor refuted at `node`.
CheckReport find_em_counterexample(const Universe& u, std::span<const SetId> pool,
                                   NodeId node);

}  // namespace kripkelab
