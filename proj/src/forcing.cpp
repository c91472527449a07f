#include "kripkelab/forcing.hpp"

#include <algorithm>
#include <cctype>
#include <random>
#include <sstream>

#include "kripkelab/axiomlab.hpp"
#include "kripkelab/errors.hpp"
#include "kripkelab/semantics.hpp"

namespace kripkelab {

namespace {

std::string cell_text(GridPair c) {
  return "(" + std::to_string(c.row) + "," + std::to_string(c.col) + ")";
}

void require_on_grid(GridPair c, std::uint32_t grid) {
  if (c.row >= grid || c.col >= grid) {
    throw RangeError("cell " + cell_text(c) + " is off the " + std::to_string(grid) + "x" +
                     std::to_string(grid) + " grid");
  }
}

// Cursor over condition/pair literals such as "(0,1)=1, (1,0)=0".
class LiteralReader {
 public:
  explicit LiteralReader(const std::string& text) : text_(text) {}

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool done() {
    skip_space();
    return pos_ >= text_.size();
  }
  bool peek(char c) {
    skip_space();
    return pos_ < text_.size() && text_[pos_] == c;
  }
  void expect(char c) {
    if (!peek(c)) throw ParseError(std::string("expected '") + c + "'", pos_);
    ++pos_;
  }
  std::uint32_t number() {
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_ || pos_ - start > 9) throw ParseError("expected a number", start);
    return static_cast<std::uint32_t>(std::stoul(text_.substr(start, pos_ - start)));
  }
  GridPair cell() {
    expect('(');
    GridPair c;
    c.row = number();
    expect(',');
    c.col = number();
    expect(')');
    return c;
  }
  std::size_t position() const { return pos_; }

 private:
  const std::string& text_;
  std::size_t pos_ = 0;
};

/// Every completion of q to a full grid map keeps some cell of R at 0.
bool kills_by_enumeration(const Condition& q, const PairSet& relation) {
  const std::uint32_t k = q.grid();
  std::vector<GridPair> open;
  for (std::uint32_t m = 0; m < k; ++m) {
    for (std::uint32_t n = 0; n < k; ++n) {
      if (!q.assigns({m, n})) open.push_back({m, n});
    }
  }
  for (std::uint64_t fill = 0; fill < (std::uint64_t{1} << open.size()); ++fill) {
    auto value = [&](GridPair c) {
      if (auto b = q.get(c)) return *b;
      const auto it = std::lower_bound(open.begin(), open.end(), c);
      return (fill >> (it - open.begin()) & 1u) != 0;
    };
    const bool contained =
        std::all_of(relation.begin(), relation.end(), [&](GridPair c) { return value(c); });
    if (contained) return false;
  }
  return true;
}

bool kills_directly(const Condition& q, const PairSet& relation) {
  return std::any_of(relation.begin(), relation.end(), [&](GridPair c) {
    const auto b = q.get(c);
    return b && !*b;
  });
}

}  // namespace

std::optional<bool> Condition::get(GridPair cell) const {
  const auto it = bits_.find(cell);
  if (it == bits_.end()) return std::nullopt;
  return it->second;
}

Condition extend(const Condition& p, GridPair cell, bool bit) {
  require_on_grid(cell, p.grid());
  if (const auto existing = p.get(cell)) {
    if (*existing != bit) {
      throw IncompatibleError("cell " + cell_text(cell) + " already assigned " +
                              (*existing ? "1" : "0"));
    }
    return p;
  }
  Condition q = p;
  q.bits_.emplace(cell, bit);
  return q;
}

bool extends(const Condition& q, const Condition& p) {
  return std::all_of(p.assignments().begin(), p.assignments().end(), [&](const auto& kv) {
    const auto b = q.get(kv.first);
    return b && *b == kv.second;
  });
}

bool compatible(const Condition& p, const Condition& q) {
  return std::all_of(p.assignments().begin(), p.assignments().end(), [&](const auto& kv) {
    const auto b = q.get(kv.first);
    return !b || *b == kv.second;
  });
}

Condition join(const Condition& p, const Condition& q) {
  if (p.grid() != q.grid()) throw IncompatibleError("conditions on different grids");
  Condition out = p;
  for (const auto& [cell, bit] : q.assignments()) out = extend(out, cell, bit);
  return out;
}

std::vector<Condition> conditions_up_to(std::uint32_t grid, std::size_t max_size) {
  std::vector<GridPair> cells;
  for (std::uint32_t m = 0; m < grid; ++m) {
    for (std::uint32_t n = 0; n < grid; ++n) cells.push_back({m, n});
  }
  std::vector<Condition> out;
  // Depth-first over cells: leave open, assign 0, assign 1.
  auto walk = [&](auto&& self, std::size_t index, const Condition& current) -> void {
    if (index == cells.size()) {
      out.push_back(current);
      return;
    }
    self(self, index + 1, current);
    if (current.size() < max_size) {
      self(self, index + 1, extend(current, cells[index], false));
      self(self, index + 1, extend(current, cells[index], true));
    }
  };
  walk(walk, 0, Condition(grid));
  return out;
}

Condition density_kill_subrelation(const Condition& p, const PairSet& relation) {
  PairSet sorted = relation;
  std::sort(sorted.begin(), sorted.end());
  for (GridPair c : sorted) {
    require_on_grid(c, p.grid());
    if (!p.assigns(c)) return extend(p, c, false);
  }
  throw NoRoomError("condition already decides every pair of the relation");
}

Condition density_totality(const Condition& p, std::uint32_t row) {
  for (std::uint32_t n = 0; n < p.grid(); ++n) {
    const auto b = p.get({row, n});
    if (b && *b) return p;
  }
  for (std::uint32_t n = 0; n < p.grid(); ++n) {
    if (!p.assigns({row, n})) return extend(p, {row, n}, true);
  }
  throw GridTooSmallError("row " + std::to_string(row) + " is assigned 0 across the whole " +
                          std::to_string(p.grid()) + "-wide grid");
}

Condition density_totality_column(const Condition& p, std::uint32_t col) {
  for (std::uint32_t m = 0; m < p.grid(); ++m) {
    const auto b = p.get({m, col});
    if (b && *b) return p;
  }
  for (std::uint32_t m = 0; m < p.grid(); ++m) {
    if (!p.assigns({m, col})) return extend(p, {m, col}, true);
  }
  throw GridTooSmallError("column " + std::to_string(col) +
                          " is assigned 0 across the whole " + std::to_string(p.grid()) +
                          "-high grid");
}

Condition parse_condition(const std::string& text, std::uint32_t grid) {
  LiteralReader in(text);
  Condition p(grid);
  while (!in.done()) {
    const std::size_t at = in.position();
    const GridPair c = in.cell();
    in.expect('=');
    const std::uint32_t bit = in.number();
    if (bit > 1) throw ParseError("bit must be 0 or 1", at);
    p = extend(p, c, bit == 1);
    if (!in.done()) in.expect(',');
  }
  return p;
}

std::string render(const Condition& p) {
  std::string out;
  for (const auto& [cell, bit] : p.assignments()) {
    if (!out.empty()) out += ',';
    out += cell_text(cell) + "=" + (bit ? "1" : "0");
  }
  return out;
}

PairSet parse_pairs(const std::string& text) {
  LiteralReader in(text);
  PairSet out;
  while (!in.done()) {
    out.push_back(in.cell());
    if (!in.done()) in.expect(',');
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::string describe(const Requirement& r) {
  struct {
    std::string operator()(const requirement::RowTotal& x) const {
      return "row-total " + std::to_string(x.row);
    }
    std::string operator()(const requirement::ColumnTotal& x) const {
      return "column-total " + std::to_string(x.col);
    }
    std::string operator()(const requirement::KillSubrelation& x) const {
      std::string s = "kill";
      for (GridPair c : x.relation) s += " " + cell_text(c);
      return s;
    }
    std::string operator()(const requirement::Preassign& x) const {
      return "preassign " + cell_text(x.cell) + "=" + (x.bit ? "1" : "0");
    }
  } visitor;
  return std::visit(visitor, r);
}

PairSet GenericSample::relation() const {
  PairSet out;
  for (std::uint32_t m = 0; m < grid; ++m) {
    for (std::uint32_t n = 0; n < grid; ++n) {
      if (bit(m, n)) out.push_back({m, n});
    }
  }
  return out;
}

bool is_bitotal(const GenericSample& s) {
  for (std::uint32_t i = 0; i < s.grid; ++i) {
    bool row = false, col = false;
    for (std::uint32_t j = 0; j < s.grid; ++j) {
      row = row || s.bit(i, j);
      col = col || s.bit(j, i);
    }
    if (!row || !col) return false;
  }
  return true;
}

GenericSample sample_generic(std::uint64_t seed, std::uint32_t grid,
                             const std::vector<Requirement>& requirements) {
  if (grid == 0) throw InvalidSizeError("grid must be at least 1");
  std::vector<Requirement> all = requirements;
  for (std::uint32_t i = 0; i < grid; ++i) all.push_back(requirement::RowTotal{i});
  for (std::uint32_t i = 0; i < grid; ++i) all.push_back(requirement::ColumnTotal{i});

  Condition p(grid);
  GenericSample s;
  s.grid = grid;
  s.seed = seed;
  for (const Requirement& r : all) {
    try {
      if (auto* row = std::get_if<requirement::RowTotal>(&r)) {
        p = density_totality(p, row->row);
      } else if (auto* col = std::get_if<requirement::ColumnTotal>(&r)) {
        p = density_totality_column(p, col->col);
      } else if (auto* kill = std::get_if<requirement::KillSubrelation>(&r)) {
        if (!kills_directly(p, kill->relation)) p = density_kill_subrelation(p, kill->relation);
      } else {
        const auto& fix = std::get<requirement::Preassign>(r);
        p = extend(p, fix.cell, fix.bit);
      }
    } catch (const Error& e) {
      throw SaturationError("cannot meet requirement '" + describe(r) + "': " + e.what());
    }
    s.requirements_met.push_back(describe(r));
  }

  // One draw per cell keeps the fill stable when the requirements change.
  std::mt19937_64 rng(seed);
  s.bits.assign(static_cast<std::size_t>(grid) * grid, 0);
  for (std::uint32_t m = 0; m < grid; ++m) {
    for (std::uint32_t n = 0; n < grid; ++n) {
      const std::uint64_t draw = rng();
      const auto fixed = p.get({m, n});
      s.bits[m * grid + n] = fixed ? (*fixed ? 1 : 0) : static_cast<std::uint8_t>(draw >> 63);
    }
  }
  return s;
}

std::string dump(const GenericSample& s) {
  std::ostringstream os;
  os << s.grid << '\n';
  for (std::uint32_t m = 0; m < s.grid; ++m) {
    for (std::uint32_t n = 0; n < s.grid; ++n) os << (s.bit(m, n) ? '1' : '0');
    os << '\n';
  }
  return os.str();
}

std::vector<SetId> grid_pair_ids(Universe& u, std::uint32_t grid) {
  std::vector<SetId> numerals;
  for (std::uint32_t i = 0; i < grid; ++i) numerals.push_back(numeral(u, i));
  std::vector<SetId> out;
  for (std::uint32_t m = 0; m < grid; ++m) {
    for (std::uint32_t n = 0; n < grid; ++n) out.push_back(kuratowski(u, numerals[m], numerals[n]));
  }
  return out;
}

SetId build_generic_term(Universe& u, const GenericSample& sample, NodeId lambda) {
  const std::vector<SetId> cells = grid_pair_ids(u, sample.grid);
  std::vector<SetId> generic, full(cells.begin(), cells.end());
  for (std::uint32_t m = 0; m < sample.grid; ++m) {
    for (std::uint32_t n = 0; n < sample.grid; ++n) {
      if (sample.bit(m, n)) generic.push_back(cells[m * sample.grid + n]);
    }
  }
  Extent extent(u.poset().size());
  for (NodeId node : u.poset().all_nodes()) {
    extent[node.index] = u.poset().leq(lambda, node) ? full : generic;
  }
  return u.insert(std::move(extent));
}

PairSet decode_relation(Universe& u, SetId relation, NodeId node, std::uint32_t grid) {
  const std::vector<SetId> cells = grid_pair_ids(u, grid);
  PairSet out;
  for (SetId member : u.members(relation, node)) {
    const auto it = std::find(cells.begin(), cells.end(), member);
    if (it == cells.end()) {
      throw StructureError("set #" + std::to_string(member.value) +
                           " is not a numeral pair on the grid");
    }
    const auto index = static_cast<std::uint32_t>(it - cells.begin());
    out.push_back({index / grid, index % grid});
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<SetId> sample_subrelations(Universe& u, const GenericSample& sample, NodeId lambda,
                                       const std::vector<SetId>& candidates) {
  const SetId g = build_generic_term(u, sample, lambda);
  const NodeId bottom = u.poset().minimal_nodes().front();
  Evaluator ev(u);
  const std::vector<SetId> no_pool;
  std::vector<SetId> out;
  for (SetId r : candidates) {
    if (ev.forces(no_pool, bottom, shapes::subset(Term::parameter(r), Term::parameter(g)))) {
      out.push_back(r);
    }
  }
  return out;
}

CheckReport check_no_total_subrelation(Universe& u, const GenericSample& sample, NodeId lambda,
                                       const std::vector<SetId>& candidates,
                                       std::size_t max_condition_size) {
  CheckReport report;
  report.name = "forcing-density";
  report.parameters = parameters_of(u, {});
  const std::uint32_t k = sample.grid;
  const std::vector<Condition> family = conditions_up_to(k, max_condition_size);
  const bool exhaustive = k * k <= 16;
  std::size_t kills = 0;
  for (SetId r : candidates) {
    const PairSet cells = decode_relation(u, r, lambda, k);
    for (const Condition& p : family) {
      const bool eligible =
          std::any_of(cells.begin(), cells.end(), [&](GridPair c) { return !p.assigns(c); });
      if (!eligible) continue;
      const Condition q = density_kill_subrelation(p, cells);
      const bool verified = extends(q, p) && (exhaustive ? kills_by_enumeration(q, cells)
                                                         : kills_directly(q, cells));
      if (!verified) {
        report.status = Status::fail;
        report.witness = Witness{lambda, {r}, {},
                                 "condition " + render(p) + " extended to " + render(q) +
                                     " does not rule out the relation"};
        return report;
      }
      ++kills;
    }
  }
  const std::vector<SetId> contained = sample_subrelations(u, sample, lambda, candidates);
  std::ostringstream detail;
  detail << candidates.size() << " candidates, " << family.size() << " conditions, " << kills
         << " verified kills" << (exhaustive ? " (all completions checked)" : "")
         << "; sample contains " << contained.size() << " candidate(s)";
  if (!contained.empty()) {
    detail << ":";
    for (SetId id : contained) detail << " #" << id.value;
  }
  report.detail = detail.str();
  if (kills == 0) report.status = Status::vacuous;
  return report;
}

CheckReport check_function_rigidity(Universe& u, SetId a, SetId b, SetId f, SetId g,
                                    NodeId node) {
  CheckReport report;
  report.name = "rigidity";
  report.parameters = parameters_of(u, {});
  Evaluator ev(u);
  const std::vector<SetId> no_pool;
  const Term ta = Term::parameter(a), tb = Term::parameter(b);
  const Term tf = Term::parameter(f), tg = Term::parameter(g);
  if (!ev.forces(no_pool, node, shapes::total_function(tf, ta, tb)) ||
      !ev.forces(no_pool, node, shapes::total_function(tg, ta, tb))) {
    report.status = Status::vacuous;
    report.detail = "not applicable: not both forced total functions";
    return report;
  }
  const Formula claim = Formula::imp(shapes::subset(tf, tg), Formula::eq(tf, tg));
  if (!ev.forces(no_pool, node, claim)) {
    report.status = Status::fail;
    report.witness = Witness{node, {f, g}, render(claim),
                             "a function forced inside another is not forced equal to it"};
  }
  return report;
}

}  // namespace kripkelab
