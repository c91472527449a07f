#include "kripkelab/corpus.hpp"

#include <random>

#include "kripkelab/errors.hpp"

namespace kripkelab {

namespace {

class Generator {
 public:
  Generator(std::uint64_t seed, const CorpusOptions& options) : rng_(seed), options_(options) {}

  Formula formula(unsigned depth, std::vector<std::string>& scope) {
    if (depth == 0 || pick(5) == 0) return atom(scope);
    const std::size_t kinds = options_.unbounded_quantifiers ? 8 : 6;
    switch (pick(kinds)) {
      case 0: return Formula::conj(formula(depth - 1, scope), formula(depth - 1, scope));
      case 1: return Formula::disj(formula(depth - 1, scope), formula(depth - 1, scope));
      case 2: return Formula::imp(formula(depth - 1, scope), formula(depth - 1, scope));
      case 3: return Formula::neg(formula(depth - 1, scope));
      case 4:
      case 5: {
        Term bound = term(scope);
        return quantified(pick(2) == 0 ? FormulaKind::bounded_forall
                                       : FormulaKind::bounded_exists,
                          std::move(bound), depth, scope);
      }
      case 6: return quantified(FormulaKind::forall, {}, depth, scope);
      default: return quantified(FormulaKind::exists, {}, depth, scope);
    }
  }

 private:
  std::size_t pick(std::size_t n) { return static_cast<std::size_t>(rng_() % n); }

  Formula quantified(FormulaKind kind, Term bound, unsigned depth,
                     std::vector<std::string>& scope) {
    static const char* const names[] = {"x", "y", "z"};
    std::string var = names[pick(3)];
    scope.push_back(var);
    Formula body = formula(depth - 1, scope);
    scope.pop_back();
    switch (kind) {
      case FormulaKind::forall: return Formula::forall(std::move(var), std::move(body));
      case FormulaKind::exists: return Formula::exists(std::move(var), std::move(body));
      case FormulaKind::bounded_forall:
        return Formula::bounded_forall(std::move(var), std::move(bound), std::move(body));
      default:
        return Formula::bounded_exists(std::move(var), std::move(bound), std::move(body));
    }
  }

  Term term(const std::vector<std::string>& scope) {
    const std::size_t vars = scope.size() + options_.free_variables.size();
    const std::size_t total = vars + options_.parameters.size();
    if (total == 0) throw InvalidSizeError("corpus needs at least one variable or parameter");
    const std::size_t i = pick(total);
    if (i < scope.size()) return Term::variable(scope[i]);
    if (i < vars) return Term::variable(options_.free_variables[i - scope.size()]);
    return Term::parameter(options_.parameters[i - vars]);
  }

  Formula atom(const std::vector<std::string>& scope) {
    switch (pick(7)) {
      case 0: return Formula::bottom();
      case 1:
      case 2:
      case 3: {
        Term l = term(scope);
        return Formula::mem(std::move(l), term(scope));
      }
      default: {
        Term l = term(scope);
        return Formula::eq(std::move(l), term(scope));
      }
    }
  }

  std::mt19937_64 rng_;
  const CorpusOptions& options_;
};

}  // namespace

std::vector<Formula> generate_corpus(std::uint64_t seed, std::size_t count,
                                     const CorpusOptions& options) {
  std::vector<Formula> out;
  const std::string p = options.free_variables.empty() ? "" : options.free_variables.front();
  const std::string q = options.free_variables.size() > 1 ? options.free_variables[1] : p;
  if (!p.empty()) {
    std::vector<std::string> fixed = {
        "false",
        p + " = " + q + " | ~(" + p + " = " + q + ")",
        "~~(" + p + " = " + q + ") -> " + p + " = " + q,
        "(" + p + " in " + q + " -> " + q + " in " + p + ") | (" + q + " in " + p + " -> " + p +
            " in " + q + ")",
        "forall x in " + q + " . x in " + p + " | ~(x in " + p + ")",
        "exists x in " + p + " . ~(x = " + q + ")",
        "~" + p + " in " + q + " & ~~" + q + " in " + p,
    };
    if (options.unbounded_quantifiers) {
      fixed.push_back("forall x . x in " + p + " -> x in " + q);
      fixed.push_back("exists x . x = " + p + " & ~(x = " + q + ")");
      fixed.push_back("forall x . forall y . x = y | ~(x = y)");
    }
    for (const auto& text : fixed) {
      if (out.size() < count) out.push_back(parse(text));
    }
  }
  Generator gen(seed, options);
  while (out.size() < count) {
    std::vector<std::string> scope;
    out.push_back(gen.formula(options.max_depth, scope));
  }
  return out;
}

}  // namespace kripkelab
