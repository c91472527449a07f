#include "kripkelab/suites.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>

#include "json.hpp"

#include "kripkelab/axiomlab.hpp"
#include "kripkelab/corpus.hpp"
#include "kripkelab/forcing.hpp"
#include "kripkelab/formula.hpp"
#include "kripkelab/relativize.hpp"
#include "kripkelab/semantics.hpp"

namespace kripkelab {

namespace {

using Checks = std::vector<CheckReport>;

Term param(SetId id) { return Term::parameter(id); }

std::string id_text(SetId id) { return "#" + std::to_string(id.value); }

std::string numbered(const std::string& prefix, std::size_t k) {
  std::string digits = std::to_string(k);
  if (digits.size() < 2) digits.insert(0, 2 - digits.size(), '0');
  return prefix + digits;
}

CheckReport make_check(std::string name, const Universe& u, std::span<const SetId> pool) {
  CheckReport r;
  r.name = std::move(name);
  r.parameters = parameters_of(u, {pool.begin(), pool.end()});
  return r;
}

void fail_with(CheckReport& r, NodeId node, std::vector<SetId> ids, const Formula& sentence,
               std::string note = {}) {
  r.status = Status::fail;
  r.witness = Witness{node, std::move(ids), render(sentence), std::move(note)};
}

// Re-evaluates a failure witness: its sentence must not be forced at its node.
bool witness_replays(const Universe& u, std::span<const SetId> pool, const CheckReport& r) {
  if (r.status != Status::fail || !r.witness || !r.witness->node) return false;
  return !forces(u, pool, *r.witness->node, parse(r.witness->formula, u));
}

NodeId top_node(const Poset& p) { return p.maximal_nodes().front(); }
NodeId bottom_node(const Poset& p) { return p.minimal_nodes().front(); }

// ---------------------------------------------------------------- equality

Checks equality_suite(Universe& u) {
  const std::vector<SetId> pool = u.pool();
  const std::size_t n = pool.size();
  Evaluator ev(u);
  const auto nodes = u.poset().all_nodes();

  // Forcing one of these universally closed clauses at a node amounts to
  // the instance implication holding locally at every later node, so each
  // node is checked locally.
  std::vector<std::vector<std::uint8_t>> eqm(nodes.size()), memm(nodes.size());
  for (NodeId node : nodes) {
    auto& e = eqm[node.index];
    auto& m = memm[node.index];
    e.assign(n * n, 0);
    m.assign(n * n, 0);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        e[i * n + j] = ev.eq(node, pool[i], pool[j]);
        m[i * n + j] = ev.mem(node, pool[i], pool[j]);
      }
    }
  }

  const Term x = Term::variable("x"), y = Term::variable("y"), z = Term::variable("z");
  const auto instance = [](const Formula& f, std::vector<std::pair<const char*, SetId>> b) {
    Env env;
    for (auto& [name, id] : b) env[name] = id;
    return close_over(f, env);
  };

  CheckReport refl = make_check("equality/1-reflexivity", u, pool);
  CheckReport symm = make_check("equality/2-symmetry", u, pool);
  CheckReport trans = make_check("equality/3-transitivity", u, pool);
  CheckReport left = make_check("equality/4-member-substitution", u, pool);
  CheckReport right = make_check("equality/5-set-substitution", u, pool);
  const Formula f_refl = Formula::eq(x, x);
  const Formula f_symm = Formula::imp(Formula::eq(x, y), Formula::eq(y, x));
  const Formula f_trans =
      Formula::imp(Formula::conj(Formula::eq(x, y), Formula::eq(y, z)), Formula::eq(x, z));
  const Formula f_left =
      Formula::imp(Formula::conj(Formula::eq(x, y), Formula::mem(x, z)), Formula::mem(y, z));
  const Formula f_right =
      Formula::imp(Formula::conj(Formula::eq(x, y), Formula::mem(z, x)), Formula::mem(z, y));

  for (NodeId node : nodes) {
    const auto& e = eqm[node.index];
    const auto& m = memm[node.index];
    for (std::size_t i = 0; i < n; ++i) {
      if (!e[i * n + i] && refl.status == Status::pass) {
        fail_with(refl, node, {pool[i]}, instance(f_refl, {{"x", pool[i]}}));
      }
      for (std::size_t j = 0; j < n; ++j) {
        if (!e[i * n + j]) continue;
        if (!e[j * n + i] && symm.status == Status::pass) {
          fail_with(symm, node, {pool[i], pool[j]},
                    instance(f_symm, {{"x", pool[i]}, {"y", pool[j]}}));
        }
        for (std::size_t k = 0; k < n; ++k) {
          const auto bind = [&] {
            return std::vector<std::pair<const char*, SetId>>{
                {"x", pool[i]}, {"y", pool[j]}, {"z", pool[k]}};
          };
          if (e[j * n + k] && !e[i * n + k] && trans.status == Status::pass) {
            fail_with(trans, node, {pool[i], pool[j], pool[k]}, instance(f_trans, bind()));
          }
          if (m[i * n + k] && !m[j * n + k] && left.status == Status::pass) {
            fail_with(left, node, {pool[i], pool[j], pool[k]}, instance(f_left, bind()));
          }
          if (m[k * n + i] && !m[k * n + j] && right.status == Status::pass) {
            fail_with(right, node, {pool[i], pool[j], pool[k]}, instance(f_right, bind()));
          }
        }
      }
    }
  }
  const std::string scope = std::to_string(nodes.size()) + " nodes, " + std::to_string(n) +
                            " sets";
  refl.detail = scope + ", " + std::to_string(n) + " instances per node";
  symm.detail = scope + ", " + std::to_string(n * n) + " instances per node";
  for (CheckReport* r : {&trans, &left, &right}) {
    r->detail = scope + ", " + std::to_string(n * n * n) + " instances per node";
  }
  return {refl, symm, trans, left, right};
}

// ---------------------------------------------------------- extensionality

Checks extensionality_suite(Universe& u) {
  const std::vector<SetId> pool = u.pool();
  CheckReport r = check_extensionality(u, pool);
  r.name = "extensionality/biconditional";
  return {r};
}

// -------------------------------------------------------------- separation

Checks separation_suite(Universe& u) {
  const std::vector<SetId> pool = u.pool();
  const Poset& p = u.poset();
  const SetId zero = numeral(u, 0);
  const SetId one = numeral(u, 1);
  const SetId two = numeral(u, 2);
  const SetId step = one_kappa(u, top_node(p));

  std::vector<SetId> domains{two, step};
  if (pool.back() != two && pool.back() != step) domains.push_back(pool.back());

  const std::string z = id_text(zero), o = id_text(one);
  const std::vector<std::string> formulas = {
      z + " in x",
      "x = x",
      "false",
      "~(" + z + " in x)",
      "exists y in x . y = y",
      "forall y in x . false",
      "x = " + z + " | " + z + " in x",
      "forall y in x . y in " + o,
      "~~(" + z + " in x)",
      z + " in x -> x = " + o,
      "exists y in x . exists w in y . w = w",
      "forall y in x . forall w in y . false",
      "~(x = " + o + ") & ~(x = " + z + ")",
  };

  Checks out;
  for (std::size_t k = 0; k < formulas.size(); ++k) {
    const Formula phi = parse(formulas[k], u);
    CheckReport agg = make_check(numbered("separation/phi-", k + 1), u, pool);
    for (SetId a : domains) {
      CheckReport r = check_sep_axiom(u, pool, a, phi);
      if (r.status == Status::fail) {
        agg.status = Status::fail;
        agg.witness = r.witness;
        break;
      }
    }
    agg.detail = "phi(x) = " + render(phi) + "; a in {";
    for (std::size_t i = 0; i < domains.size(); ++i) {
      agg.detail += (i ? ", " : "") + id_text(domains[i]);
    }
    agg.detail += "}";
    out.push_back(std::move(agg));
  }

  // Negative controls: a wrong separation set must be caught with a witness
  // that replays.
  struct Control {
    std::string formula;
    SetId wrong;
    const char* what;
  };
  const std::vector<Control> controls = {
      {z + " in x", zero, "empty set offered for {x in 2 | 0 in x}"},
      {"false", two, "2 offered for {x in 2 | false}"},
  };
  for (std::size_t k = 0; k < controls.size(); ++k) {
    const Formula phi = parse(controls[k].formula, u);
    CheckReport caught = check_separation(u, pool, two, controls[k].wrong, phi);
    CheckReport r =
        make_check("separation/negative-control-" + std::to_string(k + 1), u, pool);
    r.detail = controls[k].what;
    if (caught.status != Status::fail) {
      r.status = Status::fail;
      r.detail += "; wrong set was accepted";
    } else if (!witness_replays(u, pool, caught)) {
      r.status = Status::fail;
      r.detail += "; witness does not replay";
    } else {
      r.detail += "; rejected at node " + std::to_string(caught.witness->node->index) +
                  " by " + caught.witness->formula;
    }
    out.push_back(std::move(r));
  }
  return out;
}

// ---------------------------------------------------------------- fullness

Checks fullness_suite(Universe& u) {
  Checks out;
  const std::vector<SetId> no_pool;
  SetId two = numeral(u, 2);
  for (unsigned n : {1u, 2u}) {
    const SetId a = numeral(u, n);
    const SetId subcoll = build_subcoll(u, a, a);
    CheckReport r = check_fullness(u, a, a, subcoll);
    r.name = "fullness/a=b=" + std::to_string(n);
    const std::size_t total = enumerate_total_relations(u, a, a).size();
    const std::size_t eventual = enumerate_eventually_total_relations(u, a, a).size();
    r.detail = std::to_string(total) + " relations total at every node, " +
               std::to_string(eventual) + " total at some node" +
               (r.detail.empty() ? "" : "; " + r.detail);
    out.push_back(std::move(r));
  }
  CheckReport control = check_fullness(u, two, two, numeral(u, 0));
  CheckReport r = make_check("fullness/negative-control", u, no_pool);
  r.detail = "empty collection offered for a=b=2";
  if (control.status != Status::fail) {
    r.status = Status::fail;
    r.detail += "; it was accepted";
  } else if (!witness_replays(u, no_pool, control)) {
    r.status = Status::fail;
    r.detail += "; witness does not replay";
  }
  out.push_back(std::move(r));
  return out;
}

// ----------------------------------------------------------------- strcoll

Checks strcoll_suite(Universe& u) {
  const std::vector<SetId> pool = u.pool();
  const SetId a = numeral(u, 2);
  const std::vector<std::string> formulas = {
      "x = y",
      "x in y",
      "forall w in x . w in y",
      "x in y | y = x",
      "exists w in y . w = x",
  };
  Checks out;
  for (std::size_t k = 0; k < formulas.size(); ++k) {
    StrCollResult res = build_strcoll(u, pool, a, parse(formulas[k], u));
    CheckReport r = std::move(res.report);
    r.name = numbered("strcoll/phi-", k + 1);
    r.detail = "phi(x,y) = " + formulas[k] + ", a = " + id_text(a) +
               (r.detail.empty() ? "" : "; " + r.detail);
    out.push_back(std::move(r));
  }
  StrCollResult unmet = build_strcoll(u, pool, a, Formula::bottom());
  CheckReport r = make_check("strcoll/precondition-control", u, pool);
  r.detail = "phi = false has no collection premise";
  if (unmet.report.status != Status::vacuous || unmet.set) {
    r.status = Status::fail;
    r.detail += "; premise was not reported as unmet";
  }
  out.push_back(std::move(r));
  return out;
}

// -------------------------------------------------------------- star-lemma

Checks star_lemma_suite(Universe& u, std::uint64_t seed) {
  std::vector<SetId> pool;
  for (SetId id : u.pool()) {
    if (u.rank(id) <= 2) pool.push_back(id);
  }
  const Poset& p = u.poset();
  const SetId zero = numeral(u, 0);
  std::vector<NodeId> mus;
  for (NodeId n : p.all_nodes()) {
    if (!p.leq(n, bottom_node(p))) mus.push_back(n);
  }
  for (NodeId mu : mus) one_kappa(u, mu);
  for (SetId id : u.ids()) {
    if (u.rank(id) <= 2 && std::find(pool.begin(), pool.end(), id) == pool.end()) {
      pool.push_back(id);
    }
  }

  CheckReport transfer = make_check("star-lemma/transfer", u, pool);
  CheckReport absorb = make_check("star-lemma/absorption", u, pool);
  if (mus.empty()) {
    transfer.status = absorb.status = Status::vacuous;
    transfer.detail = absorb.detail = "no node above the bottom";
    return {absorb, transfer};
  }

  CorpusOptions opts;
  opts.parameters = pool;
  const std::vector<Formula> corpus = generate_corpus(seed, 200, opts);
  Evaluator ev(u);
  std::size_t transfer_cases = 0, absorb_cases = 0;
  for (NodeId mu : mus) {
    const Formula psi = Formula::mem(param(zero), param(one_kappa(u, mu)));
    const NodeSet pre = pre_psi_nodes(ev, pool, psi);
    for (const Formula& phi : corpus) {
      const Formula star = star_transform(phi, psi);
      for (SetId pv : pool) {
        for (SetId qv : pool) {
          const Env env{{"p", pv}, {"q", qv}};
          for (NodeId node : p.all_nodes()) {
            const bool inside = std::find(pre.begin(), pre.end(), node) != pre.end();
            const bool starred = ev.forces(pool, node, star, env);
            if (inside) {
              ++transfer_cases;
              const bool restricted = ev.forces_within(pre, pool, node, phi, env);
              if (starred != restricted && transfer.status == Status::pass) {
                transfer.status = Status::fail;
                transfer.witness = Witness{
                    node, {pv, qv}, render(close_over(starred ? phi : star, env)),
                    std::string(starred ? "phi* forced but phi not forced in the restriction"
                                        : "phi forced in the restriction but phi* not forced") +
                        "; psi = " + render(psi)};
              }
            } else {
              ++absorb_cases;
              if (!starred && absorb.status == Status::pass) {
                fail_with(absorb, node, {pv, qv}, close_over(star, env),
                          "psi = " + render(psi));
              }
            }
          }
        }
      }
    }
  }
  transfer.detail = std::to_string(corpus.size()) + " formulas, " +
                    std::to_string(mus.size()) + " choices of psi, " +
                    std::to_string(transfer_cases) + " cases at nodes not forcing psi";
  absorb.detail = std::to_string(absorb_cases) + " cases at nodes forcing psi";
  return {absorb, transfer};
}

// --------------------------------------------------------- powerset-growth

Checks powerset_growth_suite(Universe& u) {
  const Poset& p = u.poset();
  const std::vector<SetId> no_pool;
  const auto describe = [&](const SubsetCount& c) {
    std::string s = std::to_string(c.count) + " distinct subsets of 1:";
    for (SetId id : c.ids) s += " " + id_text(id);
    return s;
  };

  CheckReport bottom = make_check("powerset-growth/bottom", u, no_pool);
  const SubsetCount at_bottom = count_distinct_subsets_of_one(u, bottom_node(p));
  const std::size_t expected = p.size() + 1;
  bottom.detail = describe(at_bottom) + " (expected " + std::to_string(expected) + ")";
  if (at_bottom.count != expected) {
    bottom.status = Status::fail;
    bottom.witness = Witness{bottom_node(p), at_bottom.ids, {}, "count mismatch"};
  }

  CheckReport top = make_check("powerset-growth/top", u, no_pool);
  const SubsetCount at_top = count_distinct_subsets_of_one(u, top_node(p));
  top.detail = describe(at_top) + " (expected 2)";
  if (at_top.count != 2) {
    top.status = Status::fail;
    top.witness = Witness{top_node(p), at_top.ids, {}, "count mismatch"};
  }

  // The step sets are pairwise neither forced equal nor forced distinct at
  // the bottom.
  CheckReport undecided = make_check("powerset-growth/step-sets-undecided", u, no_pool);
  std::vector<SetId> steps;
  for (NodeId k : p.all_nodes()) steps.push_back(one_kappa(u, k));
  Evaluator ev(u);
  std::size_t pairs = 0;
  const NodeId b = bottom_node(p);
  for (std::size_t i = 0; i < steps.size(); ++i) {
    for (std::size_t j = i + 1; j < steps.size(); ++j) {
      ++pairs;
      const EmVerdict v = decide_em_pair(ev, b, steps[i], steps[j]);
      if (v != EmVerdict::undecided && undecided.status == Status::pass) {
        undecided.status = Status::fail;
        const Formula eq = Formula::eq(param(steps[i]), param(steps[j]));
        undecided.witness = Witness{b, {steps[i], steps[j]},
                                    render(v == EmVerdict::eq ? Formula::neg(eq) : eq),
                                    std::string("pair is decided: ") + to_string(v)};
      }
    }
  }
  if (pairs == 0) {
    undecided.status = Status::vacuous;
    undecided.detail = "only one step set";
  } else {
    undecided.detail = std::to_string(pairs) + " pairs of step sets";
  }
  return {bottom, undecided, top};
}

// ---------------------------------------------------------------------- em

Checks em_suite(Universe& u) {
  const std::vector<SetId> pool = u.pool();
  const Poset& p = u.poset();
  CheckReport bottom = find_em_counterexample(u, pool, bottom_node(p));
  bottom.name = "em/bottom-witness";

  CheckReport top = make_check("em/top-classical", u, pool);
  Evaluator ev(u);
  std::size_t pairs = 0;
  for (NodeId t : p.maximal_nodes()) {
    for (std::size_t i = 0; i < pool.size(); ++i) {
      for (std::size_t j = i + 1; j < pool.size(); ++j) {
        ++pairs;
        if (decide_em_pair(ev, t, pool[i], pool[j]) == EmVerdict::undecided &&
            top.status == Status::pass) {
          const Formula eq = Formula::eq(param(pool[i]), param(pool[j]));
          fail_with(top, t, {pool[i], pool[j]}, Formula::disj(eq, Formula::neg(eq)),
                    "undecided at a maximal node");
        }
      }
    }
  }
  top.detail = std::to_string(pairs) + " pairs at maximal nodes";
  return {bottom, top};
}

// --------------------------------------------------------- forcing-density

Checks forcing_density_suite(Universe& u, std::uint32_t grid, std::uint64_t seed) {
  const Poset& p = u.poset();
  const NodeId lambda = top_node(p);
  const SetId a = numeral(u, grid);
  const std::vector<SetId> candidates = constant_total_relations(u, a, a);
  const std::vector<SetId> no_pool;

  const GenericSample sample = sample_generic(seed, grid);
  CheckReport bitotal = make_check("forcing-density/sample-bitotal", u, no_pool);
  bitotal.detail = "grid " + std::to_string(grid) + ", seed " + std::to_string(seed);
  if (!is_bitotal(sample)) {
    bitotal.status = Status::fail;
    bitotal.witness = Witness{std::nullopt, {}, {}, dump(sample)};
  }

  const std::size_t max_size = grid <= 2 ? static_cast<std::size_t>(grid) * grid : 4;
  CheckReport kill = check_no_total_subrelation(u, sample, lambda, candidates, max_size);
  kill.name = "forcing-density/kill-subrelation";

  const SetId g = build_generic_term(u, sample, lambda);
  CheckReport total = make_check("forcing-density/generic-total", u, no_pool);
  std::size_t nodes = 0;
  for (NodeId n : p.all_nodes()) {
    ++nodes;
    const Formula f = shapes::total_relation(param(g), param(a), param(a));
    if (!forces(u, no_pool, n, f) && total.status == Status::pass) {
      fail_with(total, n, {g, a}, f);
    }
  }
  total.detail = "G = " + id_text(g) + " on " + std::to_string(nodes) + " nodes";

  // A sample preassigned to contain a known total relation must report it.
  CheckReport control = make_check("forcing-density/containment-control", u, no_pool);
  if (candidates.empty()) {
    control.status = Status::vacuous;
  } else {
    const SetId target = candidates.front();
    std::vector<Requirement> reqs;
    for (GridPair c : decode_relation(u, target, bottom_node(p), grid)) {
      reqs.push_back(requirement::Preassign{c, true});
    }
    const GenericSample rigged = sample_generic(seed, grid, reqs);
    const auto found = sample_subrelations(u, rigged, lambda, candidates);
    control.detail = "candidate " + id_text(target) + " preassigned";
    if (std::find(found.begin(), found.end(), target) == found.end()) {
      control.status = Status::fail;
      control.detail += "; not reported as contained";
    }
  }
  return {control, bitotal, total, kill};
}

// ---------------------------------------------------------------- rigidity

Checks rigidity_suite(Universe& u) {
  const std::vector<SetId> no_pool;
  const SetId a = numeral(u, 2);
  const std::vector<SetId> relations = enumerate_eventually_total_relations(u, a, a);
  CheckReport r = make_check("rigidity/functions", u, no_pool);
  std::size_t function_count = 0, pairs = 0, nested = 0;
  Evaluator ev(u);
  for (NodeId node : u.poset().all_nodes()) {
    std::vector<SetId> functions;
    for (SetId f : relations) {
      if (ev.forces(no_pool, node, shapes::total_function(param(f), param(a), param(a)))) {
        functions.push_back(f);
      }
    }
    function_count += functions.size();
    for (SetId f : functions) {
      for (SetId g : functions) {
        ++pairs;
        CheckReport one = check_function_rigidity(u, a, a, f, g, node);
        if (one.status == Status::fail && r.status == Status::pass) {
          r.status = Status::fail;
          r.witness = one.witness;
        }
        if (ev.forces(no_pool, node, shapes::subset(param(f), param(g)))) ++nested;
      }
    }
  }
  r.detail = std::to_string(relations.size()) + " relations, " +
             std::to_string(function_count) + " (node, function) cases, " +
             std::to_string(pairs) + " pairs, " + std::to_string(nested) + " forced inclusions";
  if (function_count == 0) r.status = Status::vacuous;
  return {r};
}

using SuiteFn = std::function<Checks(Universe&, const SuiteConfig&)>;

const std::vector<std::pair<std::string, SuiteFn>>& registry() {
  static const std::vector<std::pair<std::string, SuiteFn>> r = {
      {"equality", [](Universe& u, const SuiteConfig&) { return equality_suite(u); }},
      {"extensionality",
       [](Universe& u, const SuiteConfig&) { return extensionality_suite(u); }},
      {"separation", [](Universe& u, const SuiteConfig&) { return separation_suite(u); }},
      {"fullness", [](Universe& u, const SuiteConfig&) { return fullness_suite(u); }},
      {"strcoll", [](Universe& u, const SuiteConfig&) { return strcoll_suite(u); }},
      {"star-lemma",
       [](Universe& u, const SuiteConfig& c) { return star_lemma_suite(u, c.seed); }},
      {"powerset-growth",
       [](Universe& u, const SuiteConfig&) { return powerset_growth_suite(u); }},
      {"em", [](Universe& u, const SuiteConfig&) { return em_suite(u); }},
      {"forcing-density",
       [](Universe& u, const SuiteConfig& c) {
         return forcing_density_suite(u, c.grid, c.seed);
       }},
      {"rigidity", [](Universe& u, const SuiteConfig&) { return rigidity_suite(u); }},
  };
  return r;
}

nlohmann::ordered_json ids_json(const std::vector<SetId>& ids) {
  auto arr = nlohmann::ordered_json::array();
  for (SetId id : ids) arr.push_back(id.value);
  return arr;
}

}  // namespace

std::size_t SuiteReport::count(Status s) const {
  return static_cast<std::size_t>(std::count_if(
      checks.begin(), checks.end(), [s](const CheckReport& c) { return c.status == s; }));
}

int SuiteReport::exit_code() const { return count(Status::fail) == 0 ? 0 : 1; }

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& [name, fn] : registry()) v.push_back(name);
    v.push_back("all");
    return v;
  }();
  return names;
}

SuiteReport run_suite(const SuiteConfig& cfg) {
  const auto& names = suite_names();
  if (std::find(names.begin(), names.end(), cfg.suite) == names.end()) {
    throw UnknownSuiteError("unknown suite '" + cfg.suite + "'");
  }
  if (cfg.chain == 0) throw InvalidSizeError("chain length must be at least 1");
  if (cfg.rank == 0) throw InvalidSizeError("rank cutoff must be at least 1");
  if (cfg.grid == 0) throw InvalidSizeError("grid size must be at least 1");

  const Universe base = build_universe(make_chain(cfg.chain), cfg.rank, cfg.budget);
  SuiteReport report;
  report.config = cfg;
  report.pool = base.pool();
  for (const auto& [name, fn] : registry()) {
    if (cfg.suite != "all" && cfg.suite != name) continue;
    Universe u = base;
    for (CheckReport& c : fn(u, cfg)) report.checks.push_back(std::move(c));
  }
  std::stable_sort(report.checks.begin(), report.checks.end(),
                   [](const CheckReport& a, const CheckReport& b) { return a.name < b.name; });
  return report;
}

std::string to_json(const SuiteReport& report) {
  using json = nlohmann::ordered_json;
  json out;
  out["suite"] = report.config.suite;
  out["params"] = {{"chain", report.config.chain},
                   {"rank", report.config.rank},
                   {"grid", report.config.grid},
                   {"seed", report.config.seed},
                   {"budget", report.config.budget},
                   {"pool", ids_json(report.pool)}};
  json checks = json::array();
  for (const CheckReport& c : report.checks) {
    json j;
    j["name"] = c.name;
    j["status"] = to_string(c.status);
    if (c.witness) {
      json w;
      if (c.witness->node) w["node"] = c.witness->node->index;
      w["ids"] = ids_json(c.witness->ids);
      if (!c.witness->formula.empty()) w["formula"] = c.witness->formula;
      if (!c.witness->note.empty()) w["note"] = c.witness->note;
      j["witness"] = std::move(w);
    }
    if (!c.detail.empty()) j["detail"] = c.detail;
    if (!c.parameters.pool.empty() && c.parameters.pool != report.pool) {
      j["pool"] = ids_json(c.parameters.pool);
    }
    checks.push_back(std::move(j));
  }
  out["checks"] = std::move(checks);
  out["summary"] = {{"pass", report.count(Status::pass)},
                    {"fail", report.count(Status::fail)},
                    {"vacuous", report.count(Status::vacuous)}};
  return out.dump(2) + "\n";
}

std::string to_text(const SuiteReport& report) {
  std::ostringstream os;
  const SuiteConfig& c = report.config;
  os << "suite " << c.suite << "  chain " << c.chain << "  rank " << c.rank << "  grid "
     << c.grid << "  seed " << c.seed << "  pool " << report.pool.size() << " sets\n";
  for (const CheckReport& r : report.checks) {
    std::string status = to_string(r.status);
    std::transform(status.begin(), status.end(), status.begin(),
                   [](unsigned char ch) { return static_cast<char>(std::toupper(ch)); });
    os << status << "  " << r.name;
    if (!r.detail.empty()) os << "  (" << r.detail << ")";
    os << "\n";
    if (r.witness) {
      os << "      witness";
      if (r.witness->node) os << " at node " << r.witness->node->index;
      if (!r.witness->ids.empty()) {
        os << " ids";
        for (SetId id : r.witness->ids) os << " " << id;
      }
      if (!r.witness->formula.empty()) os << ": " << r.witness->formula;
      if (!r.witness->note.empty()) os << "  [" << r.witness->note << "]";
      os << "\n";
    }
  }
  os << "summary: " << report.count(Status::pass) << " pass, " << report.count(Status::fail)
     << " fail, " << report.count(Status::vacuous) << " vacuous\n";
  return os.str();
}

}  // namespace kripkelab
