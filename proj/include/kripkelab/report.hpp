#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kripkelab/poset.hpp"
#include "kripkelab/universe.hpp"

namespace kripkelab {

/// `vacuous` marks a check whose premise never applies at this scale; it is
/// neither a pass nor a fail.
enum class Status { pass, fail, vacuous };

const char* to_string(Status s);

/// Evidence for a check outcome. For a failed check, `formula` is a
/// sentence that should have been forced at `node` but is not, so the
/// failure can be replayed through `forces`.
struct Witness {
  std::optional<NodeId> node;
  std::vector<SetId> ids;
  std::string formula;
  std::string note;
};

struct CheckParameters {
  std::uint32_t chain = 0;
  unsigned rank_cutoff = 0;
  std::vector<SetId> pool;
};

struct CheckReport {
  std::string name;
  CheckParameters parameters;
  Status status = Status::pass;
  std::optional<Witness> witness;
  /// Free-form summary (counts, observations).
  std::string detail;
};

CheckParameters parameters_of(const Universe& u, const std::vector<SetId>& pool);

}  // namespace kripkelab
