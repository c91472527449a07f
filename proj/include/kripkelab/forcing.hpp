#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "kripkelab/report.hpp"
#include "kripkelab/universe.hpp"

namespace kripkelab {

/// A cell (row, col) of the finite K x K grid standing in for N x N.
struct GridPair {
  std::uint32_t row = 0;
  std::uint32_t col = 0;

  friend auto operator<=>(const GridPair&, const GridPair&) = default;
};

/// Sorted set of grid cells.
using PairSet = std::vector<GridPair>;

/// Finite partial function from grid cells to {0,1}. A condition extends
/// another when it contains it as a function.
class Condition {
 public:
  explicit Condition(std::uint32_t grid) : grid_(grid) {}

  std::uint32_t grid() const noexcept { return grid_; }
  std::size_t size() const noexcept { return bits_.size(); }
  const std::map<GridPair, bool>& assignments() const noexcept { return bits_; }
  std::optional<bool> get(GridPair cell) const;
  bool assigns(GridPair cell) const { return bits_.count(cell) != 0; }

  bool operator==(const Condition&) const = default;

 private:
  std::uint32_t grid_;
  std::map<GridPair, bool> bits_;

  friend Condition extend(const Condition& p, GridPair cell, bool bit);
};

/// p plus cell -> bit. Re-assigning the same bit is a no-op; a different bit
/// throws IncompatibleError, a cell off the grid RangeError.
Condition extend(const Condition& p, GridPair cell, bool bit);

/// q contains p as a function.
bool extends(const Condition& q, const Condition& p);
bool compatible(const Condition& p, const Condition& q);
/// Least upper bound of two compatible conditions; throws IncompatibleError.
Condition join(const Condition& p, const Condition& q);

/// Every condition on the grid with at most `max_size` assignments, in a
/// fixed order.
std::vector<Condition> conditions_up_to(std::uint32_t grid, std::size_t max_size);

/// Extends p by a 0 on the least cell of R that p leaves unassigned, so no
/// total relation extending the result contains R. Throws NoRoomError when
/// p already assigns every cell of R.
Condition density_kill_subrelation(const Condition& p, const PairSet& relation);

/// Extends p so that row m (or column n) holds a 1, using the least cell not
/// already assigned 0. Returns p unchanged when it already has a 1 there.
/// Throws GridTooSmallError when the whole row is assigned 0.
Condition density_totality(const Condition& p, std::uint32_t row);
Condition density_totality_column(const Condition& p, std::uint32_t col);

/// Parses `(m,n)=b` items separated by commas.
Condition parse_condition(const std::string& text, std::uint32_t grid);
std::string render(const Condition& p);
/// Parses `(m,n)` items separated by commas.
PairSet parse_pairs(const std::string& text);

namespace requirement {
struct RowTotal {
  std::uint32_t row;
};
struct ColumnTotal {
  std::uint32_t col;
};
struct KillSubrelation {
  PairSet relation;
};
/// Not a dense set; fixes one cell, used to build specific samples.
struct Preassign {
  GridPair cell;
  bool bit;
};
}  // namespace requirement

using Requirement = std::variant<requirement::RowTotal, requirement::ColumnTotal,
                                 requirement::KillSubrelation, requirement::Preassign>;

std::string describe(const Requirement& r);

/// A total K x K bit map: the finite stand-in for a generic relation.
struct GenericSample {
  std::uint32_t grid = 0;
  std::vector<std::uint8_t> bits;
  std::uint64_t seed = 0;
  std::vector<std::string> requirements_met;

  bool bit(std::uint32_t row, std::uint32_t col) const { return bits[row * grid + col] != 0; }
  PairSet relation() const;
  bool operator==(const GenericSample&) const = default;
};

/// Every row and every column holds a 1.
bool is_bitotal(const GenericSample& s);

/// Meets the listed requirements in order, then row and column totality for
/// every index, then fills the remaining cells from a seeded mt19937_64.
/// Throws SaturationError if the requirements cannot all be met on the grid.
GenericSample sample_generic(std::uint64_t seed, std::uint32_t grid,
                             const std::vector<Requirement>& requirements = {});

/// `K` on the first line, then K lines of K bits.
std::string dump(const GenericSample& s);

/// Kuratowski pairs of numerals <m, n> for every cell of the grid, row-major.
std::vector<SetId> grid_pair_ids(Universe& u, std::uint32_t grid);

/// Kripke term for the generic relation: the sample's pairs strictly below
/// `lambda`, every grid pair from `lambda` on.
SetId build_generic_term(Universe& u, const GenericSample& sample, NodeId lambda);

/// Reads the grid cells of a relation's extent at `node`. Throws
/// StructureError if a member is not a numeral pair on the grid.
PairSet decode_relation(Universe& u, SetId relation, NodeId node, std::uint32_t grid);

/// For every candidate total relation R on the grid: from each condition in
/// conditions_up_to(grid, max_condition_size) that leaves a cell of R open,
/// density_kill_subrelation must return an extension that rules out R as a
/// subrelation of every total sample extending it. The detail lists which
/// candidates the concrete sample happens to contain (forced at a node
/// below lambda).
CheckReport check_no_total_subrelation(Universe& u, const GenericSample& sample, NodeId lambda,
                                       const std::vector<SetId>& candidates,
                                       std::size_t max_condition_size);

/// Ids among `candidates` whose pairs the sample's relation contains, read
/// through forcing at the bottom node with G built for `lambda`.
std::vector<SetId> sample_subrelations(Universe& u, const GenericSample& sample, NodeId lambda,
                                       const std::vector<SetId>& candidates);

/// If f and g are forced total functions a -> b at `node` and f is forced a
/// subset of g, then f = g is forced. Vacuous when either is not a function.
CheckReport check_function_rigidity(Universe& u, SetId a, SetId b, SetId f, SetId g,
                                    NodeId node);

}  // namespace kripkelab
