#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "kripkelab/errors.hpp"
#include "kripkelab/report.hpp"

namespace kripkelab {

class UnknownSuiteError : public Error {
 public:
  using Error::Error;
};

struct SuiteConfig {
  std::uint32_t chain = 3;
  unsigned rank = 2;
  std::uint32_t grid = 2;
  std::uint64_t seed = 0;
  std::string suite = "all";
  std::size_t budget = default_budget();
};

struct SuiteReport {
  SuiteConfig config;
  /// Ids of the base universe (every set up to the rank cutoff).
  std::vector<SetId> pool;
  /// Sorted by name.
  std::vector<CheckReport> checks;

  std::size_t count(Status s) const;
  /// 0 when no check failed, 1 otherwise.
  int exit_code() const;
};

/// Every suite name accepted by run_suite, "all" last.
const std::vector<std::string>& suite_names();

/// Throws UnknownSuiteError, InvalidSizeError for a zero chain/rank/grid, and
/// BudgetError when the configured universe does not fit.
SuiteReport run_suite(const SuiteConfig& cfg);

/// {suite, params, checks:[{name,status,witness?,detail?,pool?}], summary:{pass,fail,vacuous}}
/// A check lists its own pool only when it differs from params.pool.
std::string to_json(const SuiteReport& report);
std::string to_text(const SuiteReport& report);

}  // namespace kripkelab
