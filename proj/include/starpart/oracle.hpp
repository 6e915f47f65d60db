#pragma once

// Exponential exact decision/construction for star partition on arbitrary
// graphs. Ground truth for the polynomial class solvers; budget-capped so
// test suites stay time-bounded and report honestly when the cap bites.

#include <cstdint>
#include <vector>

#include "starpart/graph.hpp"

namespace starpart {

enum class OracleStatus { yes, no, budget_exceeded };

struct OracleResult {
  OracleStatus status = OracleStatus::no;
  StarPartition partition;  // filled iff status == yes
  std::int64_t expansions = 0;
};

inline constexpr std::int64_t oracle_default_budget = 10'000'000;

namespace detail {

struct OracleSearch {
  const Graph& g;
  int s;
  std::int64_t budget;
  std::int64_t expansions = 0;
  std::vector<bool> covered;
  std::vector<int> uncovered_degree;  // neighbors still uncovered, per vertex
  std::vector<StarBlock> blocks;
  bool out_of_budget = false;

  OracleSearch(const Graph& gr, int st, std::int64_t bud)
      : g(gr), s(st), budget(bud),
        covered(static_cast<size_t>(gr.n()), false),
        uncovered_degree(static_cast<size_t>(gr.n()), 0) {
    for (Vertex v = 0; v < g.n(); ++v)
      uncovered_degree[static_cast<size_t>(v)] = g.degree(v);
  }

  void cover(const std::vector<Vertex>& vs) {
    for (Vertex v : vs) {
      covered[static_cast<size_t>(v)] = true;
      for (Vertex w : g.neighbors(v)) --uncovered_degree[static_cast<size_t>(w)];
    }
  }

  void uncover(const std::vector<Vertex>& vs) {
    for (Vertex v : vs) {
      covered[static_cast<size_t>(v)] = false;
      for (Vertex w : g.neighbors(v)) ++uncovered_degree[static_cast<size_t>(w)];
    }
  }

  // Enumerates k-subsets of `pool` in lexicographic order, invoking fn on
  // each; fn returns true to stop (solution found below).
  template <typename Fn>
  bool for_each_subset(const std::vector<Vertex>& pool, int k, Fn&& fn) {
    std::vector<Vertex> chosen;
    chosen.reserve(static_cast<size_t>(k));
    auto rec = [&](auto&& self, size_t from) -> bool {
      if (static_cast<int>(chosen.size()) == k) return fn(chosen);
      if (pool.size() - from < static_cast<size_t>(k) - chosen.size())
        return false;
      for (size_t i = from; i < pool.size(); ++i) {
        chosen.push_back(pool[i]);
        if (self(self, i + 1)) return true;
        chosen.pop_back();
      }
      return false;
    };
    return rec(rec, 0);
  }

  bool solve(int remaining) {
    if (remaining == 0) return true;
    if (++expansions > budget) {
      out_of_budget = true;
      return false;
    }
    // Smallest uncovered vertex is the most constrained prefix; any uncovered
    // vertex without uncovered neighbors kills the branch (it can neither
    // center a star nor lean on one).
    Vertex v = -1;
    for (Vertex u = 0; u < g.n(); ++u) {
      if (covered[static_cast<size_t>(u)]) continue;
      if (uncovered_degree[static_cast<size_t>(u)] == 0) return false;
      if (v < 0) v = u;
    }

    std::vector<Vertex> pool;
    for (Vertex w : g.neighbors(v))
      if (!covered[static_cast<size_t>(w)]) pool.push_back(w);

    // Branch 1: v is the center, leaves are an s-subset of its pool.
    if (static_cast<int>(pool.size()) >= s) {
      bool done = for_each_subset(pool, s, [&](const std::vector<Vertex>& leaves) {
        std::vector<Vertex> block = leaves;
        block.push_back(v);
        cover(block);
        blocks.push_back({v, leaves});
        if (solve(remaining - 1)) return true;
        blocks.pop_back();
        uncover(block);
        return false;
      });
      if (done) return true;
      if (out_of_budget) return false;
    }

    // Branch 2: v is a leaf of center c, with s-1 further leaves among c's
    // other uncovered neighbors.
    for (Vertex c : pool) {
      std::vector<Vertex> others;
      for (Vertex w : g.neighbors(c))
        if (w != v && !covered[static_cast<size_t>(w)]) others.push_back(w);
      if (static_cast<int>(others.size()) < s - 1) continue;
      bool done = for_each_subset(others, s - 1, [&](const std::vector<Vertex>& rest) {
        std::vector<Vertex> leaves;
        leaves.push_back(v);
        leaves.insert(leaves.end(), rest.begin(), rest.end());
        std::vector<Vertex> block = leaves;
        block.push_back(c);
        cover(block);
        blocks.push_back({c, leaves});
        if (solve(remaining - 1)) return true;
        blocks.pop_back();
        uncover(block);
        return false;
      });
      if (done) return true;
      if (out_of_budget) return false;
    }
    return false;
  }
};

}  // namespace detail

inline OracleResult oracle_partition(const Graph& g, int s,
                                     std::int64_t budget = oracle_default_budget) {
  OracleResult res;
  if (s < 1) throw std::invalid_argument("s must be positive");
  Feasibility f = feasibility_precheck(g, s);
  if (!f.feasible) {
    res.status = OracleStatus::no;
    return res;
  }
  detail::OracleSearch search(g, s, budget);
  bool found = search.solve(g.n() / (s + 1));
  res.expansions = search.expansions;
  if (found) {
    res.status = OracleStatus::yes;
    res.partition.s = s;
    res.partition.blocks = search.blocks;
  } else if (search.out_of_budget) {
    res.status = OracleStatus::budget_exceeded;
  } else {
    res.status = OracleStatus::no;
  }
  return res;
}

// Independent second method for cross-checking the oracle itself: enumerate
// all ways to split V into (s+1)-subsets (smallest uncovered vertex first,
// companions from all uncovered vertices, not only neighbors) and test each
// block for a star. Exponential in a worse way; intended for n <= 9.
inline bool naive_partition_exists(const Graph& g, int s) {
  if (g.n() % (s + 1) != 0) return false;
  std::vector<bool> covered(static_cast<size_t>(g.n()), false);

  auto rec = [&](auto&& self, int remaining) -> bool {
    if (remaining == 0) return true;
    Vertex v = 0;
    while (covered[static_cast<size_t>(v)]) ++v;
    covered[static_cast<size_t>(v)] = true;
    std::vector<Vertex> pool;
    for (Vertex u = v + 1; u < g.n(); ++u)
      if (!covered[static_cast<size_t>(u)]) pool.push_back(u);
    std::vector<Vertex> chosen;
    auto pick = [&](auto&& pickself, size_t from) -> bool {
      if (static_cast<int>(chosen.size()) == s) {
        std::vector<Vertex> block = chosen;
        block.push_back(v);
        if (!contains_star(g, block, s)) return false;
        for (Vertex u : chosen) covered[static_cast<size_t>(u)] = true;
        bool ok = self(self, remaining - 1);
        if (!ok)
          for (Vertex u : chosen) covered[static_cast<size_t>(u)] = false;
        return ok;
      }
      for (size_t i = from; i < pool.size(); ++i) {
        chosen.push_back(pool[i]);
        if (pickself(pickself, i + 1)) return true;
        chosen.pop_back();
      }
      return false;
    };
    bool ok = pick(pick, 0);
    if (!ok) covered[static_cast<size_t>(v)] = false;
    return ok;
  };
  return rec(rec, g.n() / (s + 1));
}

}  // namespace starpart
