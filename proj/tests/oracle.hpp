#pragma once

// Brute-force reference implementations used to derive expected values.
// They share no algorithm with the library: enumeration filters every map
// node -> subset instead of walking up-sets, and the primitive relations and
// forcing are plain recursion with no memo.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "kripkelab/formula.hpp"
#include "kripkelab/poset.hpp"
#include "kripkelab/universe.hpp"

namespace oracle {

using kripkelab::Formula;
using kripkelab::FormulaKind;
using kripkelab::NodeId;
using kripkelab::SetId;
using kripkelab::Universe;

/// Sets of a chain model: extent[s][node] is a bitmask over earlier sets.
struct ChainModel {
  std::uint32_t nodes = 0;
  std::vector<std::vector<std::uint64_t>> extent;
  std::vector<unsigned> rank;
};

/// Every monotone map from an n-chain into subsets of the sets built so
/// far, stage by stage, by filtering all 2^(sets * nodes) maps.
inline ChainModel enumerate_chain(std::uint32_t n, unsigned cutoff) {
  ChainModel m;
  m.nodes = n;
  for (unsigned stage = 1; stage <= cutoff; ++stage) {
    const std::size_t known = m.extent.size();
    const std::size_t bits = known * n;
    std::vector<std::vector<std::uint64_t>> fresh;
    for (std::uint64_t code = 0; code < (std::uint64_t{1} << bits); ++code) {
      std::vector<std::uint64_t> ext(n);
      for (std::uint32_t node = 0; node < n; ++node) {
        ext[node] = (code >> (node * known)) & ((std::uint64_t{1} << known) - 1);
      }
      bool monotone = true;
      for (std::uint32_t node = 0; node + 1 < n; ++node) {
        if ((ext[node] & ~ext[node + 1]) != 0) monotone = false;
      }
      if (!monotone) continue;
      bool seen = false;
      for (const auto& old : m.extent) seen = seen || old == ext;
      if (!seen) fresh.push_back(ext);
    }
    for (auto& ext : fresh) {
      m.extent.push_back(std::move(ext));
      m.rank.push_back(stage);
    }
  }
  return m;
}

/// Library id of every oracle set (looked up by extent), or an empty vector
/// if some oracle set is missing from the universe.
inline std::vector<SetId> map_into(const ChainModel& m, const Universe& u) {
  std::vector<SetId> ids;
  for (const auto& ext : m.extent) {
    kripkelab::Extent e(m.nodes);
    for (std::uint32_t node = 0; node < m.nodes; ++node) {
      for (std::size_t i = 0; i < ids.size() && i < 64; ++i) {
        if ((ext[node] >> i) & 1) e[node].push_back(ids[i]);
      }
      std::sort(e[node].begin(), e[node].end());
    }
    const auto found = u.find(e);
    if (!found) return {};
    ids.push_back(*found);
  }
  return ids;
}

// Plain recursion on the defining clauses, reading extents from u.
inline bool eq(const Universe& u, NodeId s, SetId f, SetId g);

inline bool mem(const Universe& u, NodeId s, SetId f, SetId g) {
  for (SetId h : u.members(g, s)) {
    if (eq(u, s, f, h)) return true;
  }
  return false;
}

inline bool eq(const Universe& u, NodeId s, SetId f, SetId g) {
  const auto& p = u.poset();
  for (std::uint32_t t = 0; t < p.size(); ++t) {
    const NodeId tau{t};
    if (!p.leq(s, tau)) continue;
    for (SetId h : u.members(f, tau)) {
      if (!mem(u, tau, h, g)) return false;
    }
    for (SetId h : u.members(g, tau)) {
      if (!mem(u, tau, h, f)) return false;
    }
  }
  return true;
}

/// Kripke satisfaction by direct recursion. `alive` (if nonempty) marks the
/// nodes kept in a restricted model; implication and universal quantifiers
/// only look at kept nodes.
inline bool forces(const Universe& u, const std::vector<SetId>& pool, NodeId s, const Formula& f,
                   std::map<std::string, SetId> env, const std::vector<bool>& alive = {}) {
  const auto& p = u.poset();
  const auto later = [&](std::function<bool(NodeId)> pred) {
    for (std::uint32_t t = 0; t < p.size(); ++t) {
      const NodeId tau{t};
      if (!p.leq(s, tau) || (!alive.empty() && !alive[t])) continue;
      if (!pred(tau)) return false;
    }
    return true;
  };
  const auto value = [&](const kripkelab::Term& t) {
    return t.is_variable() ? env.at(t.name()) : t.id();
  };
  const auto rec = [&](NodeId n, const Formula& g, const std::map<std::string, SetId>& e) {
    return forces(u, pool, n, g, e, alive);
  };
  switch (f.kind()) {
    case FormulaKind::bottom: return false;
    case FormulaKind::mem: return mem(u, s, value(f.lhs()), value(f.rhs()));
    case FormulaKind::eq: return eq(u, s, value(f.lhs()), value(f.rhs()));
    case FormulaKind::conj: return rec(s, f.left(), env) && rec(s, f.right(), env);
    case FormulaKind::disj: return rec(s, f.left(), env) || rec(s, f.right(), env);
    case FormulaKind::imp:
      return later([&](NodeId t) { return !rec(t, f.left(), env) || rec(t, f.right(), env); });
    case FormulaKind::forall:
      return later([&](NodeId t) {
        for (SetId x : pool) {
          auto e = env;
          e[f.var()] = x;
          if (!rec(t, f.body(), e)) return false;
        }
        return true;
      });
    case FormulaKind::exists:
      for (SetId x : pool) {
        auto e = env;
        e[f.var()] = x;
        if (rec(s, f.body(), e)) return true;
      }
      return false;
    case FormulaKind::bounded_forall:
    case FormulaKind::bounded_exists: {
      const SetId bound = value(f.bound());
      const auto candidates = [&](NodeId t) {
        std::set<SetId> c(pool.begin(), pool.end());
        for (SetId h : u.members(bound, t)) c.insert(h);
        return c;
      };
      if (f.kind() == FormulaKind::bounded_forall) {
        return later([&](NodeId t) {
          for (SetId x : candidates(t)) {
            if (!mem(u, t, x, bound)) continue;
            auto e = env;
            e[f.var()] = x;
            if (!rec(t, f.body(), e)) return false;
          }
          return true;
        });
      }
      for (SetId x : candidates(s)) {
        if (!mem(u, s, x, bound)) continue;
        auto e = env;
        e[f.var()] = x;
        if (rec(s, f.body(), e)) return true;
      }
      return false;
    }
  }
  return false;
}

/// Relations on {0..n-1} (bitmask over n*n cells, row-major) with a 1 in
/// every row.
inline std::vector<std::uint32_t> total_graphs(unsigned n) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t g = 0; g < (1u << (n * n)); ++g) {
    bool total = true;
    for (unsigned r = 0; r < n; ++r) total = total && ((g >> (r * n)) & ((1u << n) - 1)) != 0;
    if (total) out.push_back(g);
  }
  return out;
}

/// Non-decreasing sequences G_0 <= ... <= G_{len-1} of graphs on {0..n-1},
/// counted when `pred` accepts the sequence.
inline std::size_t count_graph_chains(unsigned n, unsigned len,
                                      const std::function<bool(const std::vector<std::uint32_t>&)>& pred) {
  const std::uint32_t cells = 1u << (n * n);
  std::vector<std::uint32_t> seq(len, 0);
  std::size_t count = 0;
  std::function<void(unsigned)> go = [&](unsigned i) {
    if (i == len) {
      if (pred(seq)) ++count;
      return;
    }
    for (std::uint32_t g = 0; g < cells; ++g) {
      if (i > 0 && (seq[i - 1] & ~g) != 0) continue;
      seq[i] = g;
      go(i + 1);
    }
  };
  go(0);
  return count;
}

inline bool graph_total(std::uint32_t g, unsigned n) {
  for (unsigned r = 0; r < n; ++r) {
    if (((g >> (r * n)) & ((1u << n) - 1)) == 0) return false;
  }
  return true;
}

/// True when every K x K bitmap that extends the assignments (cell -> bit,
/// cell = row * K + col) and has a 1 in every row and column misses some
/// cell of `relation`.
inline bool kills(unsigned k, const std::map<unsigned, bool>& assigned,
                  const std::vector<unsigned>& relation) {
  const unsigned cells = k * k;
  for (std::uint32_t g = 0; g < (1u << cells); ++g) {
    bool extends = true;
    for (auto [cell, bit] : assigned) extends = extends && (((g >> cell) & 1) == bit);
    if (!extends) continue;
    bool bitotal = true;
    for (unsigned r = 0; r < k; ++r) {
      bool row = false, col = false;
      for (unsigned c = 0; c < k; ++c) {
        row = row || ((g >> (r * k + c)) & 1);
        col = col || ((g >> (c * k + r)) & 1);
      }
      bitotal = bitotal && row && col;
    }
    if (!bitotal) continue;
    bool contains = true;
    for (unsigned cell : relation) contains = contains && ((g >> cell) & 1);
    if (contains) return false;
  }
  return true;
}

}  // namespace oracle
