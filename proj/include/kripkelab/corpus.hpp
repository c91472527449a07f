#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "kripkelab/formula.hpp"

namespace kripkelab {

struct CorpusOptions {
  /// Maximum nesting of connectives and quantifiers above an atom.
  unsigned max_depth = 4;
  /// Parameters atoms and bounds may mention.
  std::vector<SetId> parameters;
  /// Variables left free; the caller binds them when evaluating.
  std::vector<std::string> free_variables{"p", "q"};
  bool unbounded_quantifiers = true;
};

/// Deterministic pseudo-random formulas. The corpus opens with a fixed set
/// that covers every connective and quantifier kind, then fills up to
/// `count` with generated ones.
std::vector<Formula> generate_corpus(std::uint64_t seed, std::size_t count,
                                     const CorpusOptions& options);

}  // namespace kripkelab
