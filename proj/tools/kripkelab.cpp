#include <algorithm>
#include <cctype>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "kripkelab/axiomlab.hpp"
#include "kripkelab/errors.hpp"
#include "kripkelab/forcing.hpp"
#include "kripkelab/formula.hpp"
#include "kripkelab/semantics.hpp"
#include "kripkelab/suites.hpp"
#include "kripkelab/universe.hpp"

using namespace kripkelab;

namespace {

constexpr int kUsageError = 2;
constexpr int kBudgetExit = 3;

// Builder expressions for --bind:
//   numeral(n) one_kappa(k) pair(e,e) kuratowski(e,e) union(e) id(n)
class BuilderParser {
 public:
  BuilderParser(Universe& u, std::string text) : u_(u), text_(std::move(text)) {}

  SetId parse() {
    SetId id = expr();
    skip_space();
    if (pos_ != text_.size()) fail("trailing input");
    return id;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("builder '" + text_ + "': " + what, pos_);
  }
  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  void expect(char c) {
    skip_space();
    if (pos_ >= text_.size() || text_[pos_] != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }
  unsigned number() {
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a number");
    return static_cast<unsigned>(std::stoul(text_.substr(start, pos_ - start)));
  }
  SetId expr() {
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      ++pos_;
    }
    const std::string name = text_.substr(start, pos_ - start);
    if (name.empty()) fail("expected a builder name");
    expect('(');
    SetId out{};
    if (name == "numeral") {
      out = numeral(u_, number());
    } else if (name == "one_kappa") {
      const unsigned k = number();
      if (k >= u_.poset().size()) fail("node out of range");
      out = one_kappa(u_, NodeId{k});
    } else if (name == "id") {
      const unsigned v = number();
      if (!u_.contains(SetId{v})) fail("no set with this id");
      out = SetId{v};
    } else if (name == "pair" || name == "kuratowski") {
      const SetId a = expr();
      expect(',');
      const SetId b = expr();
      out = name == "pair" ? build_pair(u_, a, b) : kuratowski(u_, a, b);
    } else if (name == "union") {
      out = build_union(u_, expr());
    } else {
      pos_ = start;
      fail("unknown builder '" + name + "'");
    }
    expect(')');
    return out;
  }

  Universe& u_;
  std::string text_;
  std::size_t pos_ = 0;
};

void collect_subformulas(const Formula& f, std::vector<Formula>& out) {
  out.push_back(f);
  switch (f.kind()) {
    case FormulaKind::conj:
    case FormulaKind::disj:
    case FormulaKind::imp:
      collect_subformulas(f.left(), out);
      collect_subformulas(f.right(), out);
      break;
    case FormulaKind::forall:
    case FormulaKind::exists:
    case FormulaKind::bounded_forall:
    case FormulaKind::bounded_exists:
      collect_subformulas(f.body(), out);
      break;
    default:
      break;
  }
}

struct EvalOptions {
  unsigned node = 0;
  std::string formula;
  std::vector<std::string> binds;
  bool trace = false;
};

int run_eval(const SuiteConfig& cfg, const EvalOptions& opts) {
  Universe u = build_universe(make_chain(cfg.chain), cfg.rank, cfg.budget);
  if (opts.node >= u.poset().size()) {
    throw RangeError("node " + std::to_string(opts.node) + " is not on a chain of length " +
                     std::to_string(cfg.chain));
  }
  Env env;
  for (const std::string& b : opts.binds) {
    const auto eq = b.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw ParseError("binding '" + b + "' is not of the form var=builder(...)", 0);
    }
    env[b.substr(0, eq)] = BuilderParser(u, b.substr(eq + 1)).parse();
  }
  const Formula phi = parse(opts.formula, u);
  std::vector<SetId> pool = u.pool();
  for (const auto& [name, id] : env) {
    if (std::find(pool.begin(), pool.end(), id) == pool.end()) pool.push_back(id);
  }
  Evaluator ev(u);
  const bool result = ev.forces(pool, NodeId{opts.node}, phi, env);
  for (const auto& [name, id] : env) std::cout << name << " = " << id << "\n";
  std::cout << "node " << opts.node << ": " << render(phi) << "\n"
            << (result ? "forced" : "not forced") << "\n";
  if (opts.trace) {
    std::vector<Formula> subs;
    collect_subformulas(phi, subs);
    std::cout << "trace (per node, subformulas whose free variables are bound):\n";
    for (const Formula& s : subs) {
      bool closed = true;
      for (const std::string& v : free_variables(s)) closed = closed && env.count(v) != 0;
      if (!closed) continue;
      std::cout << " ";
      for (NodeId n : u.poset().all_nodes()) {
        std::cout << " " << n.index << ":" << (ev.forces(pool, n, s, env) ? "1" : "0");
      }
      std::cout << "  " << render(s) << "\n";
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite Kripke-model laboratory for intuitionistic set theory"};
  app.require_subcommand(0, 1);

  SuiteConfig cfg;
  std::string format = "text";
  bool dump_universe = false;
  app.add_option("--chain", cfg.chain, "Length of the chain of nodes")->capture_default_str();
  app.add_option("--rank", cfg.rank, "Rank cutoff of the enumerated universe")
      ->capture_default_str();
  app.add_option("--grid", cfg.grid, "Size K of the K x K forcing grid")->capture_default_str();
  app.add_option("--seed", cfg.seed, "Seed for generated samples and corpora")
      ->capture_default_str();
  app.add_option("--suite", cfg.suite, "Suite to run")
      ->check(CLI::IsMember(suite_names()))
      ->capture_default_str();
  app.add_option("--format", format, "Report format")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
  app.add_option("--budget", cfg.budget,
                 "Largest universe table allowed (default from KRIPKELAB_BUDGET)")
      ->capture_default_str();
  app.add_flag("--dump", dump_universe, "Print the enumerated universe and exit");

  EvalOptions eval_opts;
  CLI::App* eval = app.add_subcommand("eval", "Evaluate one formula at one node");
  eval->fallthrough();
  eval->add_option("--node", eval_opts.node, "Node index")->capture_default_str();
  eval->add_option("--formula", eval_opts.formula, "Formula text")->required();
  eval->add_option("--bind", eval_opts.binds, "var=builder(...), repeatable");
  eval->add_flag("--trace", eval_opts.trace, "Show subformula truth at every node");

  CLI::App* sample = app.add_subcommand("sample", "Print a generic sample of the grid");
  sample->fallthrough();

  std::string condition_text, relation_text;
  CLI::App* kill = app.add_subcommand(
      "kill", "Extend a condition so that no total sample contains a relation");
  kill->fallthrough();
  kill->add_option("--condition", condition_text, "Assignments like (0,1)=1,(1,1)=0");
  kill->add_option("--relation", relation_text, "Cells like (0,0),(1,1)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsageError;
  }

  try {
    if (*eval) return run_eval(cfg, eval_opts);
    if (*sample) {
      std::cout << dump(sample_generic(cfg.seed, cfg.grid));
      return 0;
    }
    if (*kill) {
      const Condition p = parse_condition(condition_text, cfg.grid);
      std::cout << render(density_kill_subrelation(p, parse_pairs(relation_text))) << "\n";
      return 0;
    }
    if (dump_universe) {
      std::cout << dump(build_universe(make_chain(cfg.chain), cfg.rank, cfg.budget));
      return 0;
    }
    const SuiteReport report = run_suite(cfg);
    std::cout << (format == "json" ? to_json(report) : to_text(report));
    return report.exit_code();
  } catch (const BudgetError& e) {
    std::cerr << "budget exceeded: " << e.what() << " (raise --budget or KRIPKELAB_BUDGET)\n";
    return kBudgetExit;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsageError;
  }
}
