#pragma once

// Undirected simple graph plus the star-partition certificate that every
// solver in this library emits and the verifier consumes.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace starpart {

using Vertex = int;

class Graph {
public:
  // Adjacency matrix is only materialized up to this many vertices; beyond
  // that, edge queries fall back to binary search in sorted neighbor lists.
  static constexpr int matrix_limit = 10000;

  Graph() = default;
  explicit Graph(int n) : n_(n), adj_(static_cast<size_t>(n)) {
    if (n < 0) throw std::invalid_argument("negative vertex count");
  }

  int n() const { return n_; }
  int m() const { return static_cast<int>(edges_.size()); }

  void add_edge(Vertex u, Vertex v) {
    if (u == v) throw std::invalid_argument("self-loop");
    if (u < 0 || v < 0 || u >= n_ || v >= n_)
      throw std::invalid_argument("edge endpoint out of range");
    if (u > v) std::swap(u, v);
    edges_.emplace_back(u, v);
    finalized_ = false;
  }

  // Sorts neighbor lists, rejects duplicate edges, and builds the adjacency
  // matrix for small graphs. Must be called before queries.
  void finalize() {
    std::sort(edges_.begin(), edges_.end());
    if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end())
      throw std::invalid_argument("duplicate edge");
    for (auto& list : adj_) list.clear();
    for (auto [u, v] : edges_) {
      adj_[static_cast<size_t>(u)].push_back(v);
      adj_[static_cast<size_t>(v)].push_back(u);
    }
    for (auto& list : adj_) std::sort(list.begin(), list.end());
    if (n_ <= matrix_limit) {
      matrix_.assign(static_cast<size_t>(n_) * static_cast<size_t>(n_), false);
      for (auto [u, v] : edges_) {
        matrix_[static_cast<size_t>(u) * n_ + v] = true;
        matrix_[static_cast<size_t>(v) * n_ + u] = true;
      }
    } else {
      matrix_.clear();
    }
    finalized_ = true;
  }

  bool adjacent(Vertex u, Vertex v) const {
    if (u == v) return false;
    if (!matrix_.empty()) return matrix_[static_cast<size_t>(u) * n_ + v];
    const auto& list = adj_[static_cast<size_t>(u)];
    return std::binary_search(list.begin(), list.end(), v);
  }

  const std::vector<Vertex>& neighbors(Vertex u) const {
    return adj_[static_cast<size_t>(u)];
  }

  int degree(Vertex u) const {
    return static_cast<int>(adj_[static_cast<size_t>(u)].size());
  }

  const std::vector<std::pair<Vertex, Vertex>>& edges() const { return edges_; }
  bool finalized() const { return finalized_; }

private:
  int n_ = 0;
  std::vector<std::pair<Vertex, Vertex>> edges_;
  std::vector<std::vector<Vertex>> adj_;
  std::vector<bool> matrix_;
  bool finalized_ = false;
};

// One block of a star partition: a designated center plus s leaves. The
// center is a hint; the verifier treats a block as a vertex set and retries
// other members as center before rejecting it.
struct StarBlock {
  Vertex center = -1;
  std::vector<Vertex> leaves;
};

struct StarPartition {
  int s = 0;
  std::vector<StarBlock> blocks;
};

struct VerifyReport {
  bool valid = false;
  std::string reason;  // empty when valid; names the first defect otherwise
};

// Smallest-id vertex of `subset` with at least s neighbors inside `subset`,
// or nothing. For |subset| = s+1 this is "adjacent to all others".
inline std::optional<Vertex> contains_star(const Graph& g,
                                           const std::vector<Vertex>& subset,
                                           int s) {
  std::vector<Vertex> sorted = subset;
  std::sort(sorted.begin(), sorted.end());
  for (Vertex v : sorted) {
    int inside = 0;
    for (Vertex u : sorted)
      if (u != v && g.adjacent(v, u)) ++inside;
    if (inside >= s) return v;
  }
  return std::nullopt;
}

namespace detail {

inline std::string join_ids(const std::vector<Vertex>& vs) {
  std::string out;
  for (size_t i = 0; i < vs.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(vs[i]);
  }
  return out;
}

}  // namespace detail

// Valid iff the blocks are pairwise disjoint, cover V exactly, each has s+1
// vertices, and each contains an s-star. Reports the first defect found.
inline VerifyReport verify_partition(const Graph& g, int s,
                                     const StarPartition& p) {
  if (p.s != s) return {false, "partition star size does not match s"};
  if (s < 1) return {false, "s must be positive"};
  std::vector<int> seen(static_cast<size_t>(g.n()), 0);
  for (size_t i = 0; i < p.blocks.size(); ++i) {
    const StarBlock& b = p.blocks[i];
    std::vector<Vertex> members = b.leaves;
    members.push_back(b.center);
    if (static_cast<int>(members.size()) != s + 1)
      return {false, "block " + std::to_string(i) + " has " +
                         std::to_string(members.size()) + " vertices, expected " +
                         std::to_string(s + 1)};
    for (Vertex v : members) {
      if (v < 0 || v >= g.n())
        return {false, "block " + std::to_string(i) + " names vertex " +
                           std::to_string(v) + " outside the graph"};
      if (seen[static_cast<size_t>(v)]++)
        return {false, "vertex " + std::to_string(v) + " appears in two blocks"};
    }
    if (!contains_star(g, members, s))
      return {false, "block " + std::to_string(i) + " {" +
                         detail::join_ids(members) + "} contains no " +
                         std::to_string(s) + "-star"};
  }
  for (Vertex v = 0; v < g.n(); ++v)
    if (!seen[static_cast<size_t>(v)])
      return {false, "vertex " + std::to_string(v) + " is not covered"};
  return {true, ""};
}

inline std::vector<std::vector<Vertex>> connected_components(const Graph& g) {
  std::vector<std::vector<Vertex>> comps;
  std::vector<bool> visited(static_cast<size_t>(g.n()), false);
  std::vector<Vertex> stack;
  for (Vertex start = 0; start < g.n(); ++start) {
    if (visited[static_cast<size_t>(start)]) continue;
    comps.emplace_back();
    stack.push_back(start);
    visited[static_cast<size_t>(start)] = true;
    while (!stack.empty()) {
      Vertex v = stack.back();
      stack.pop_back();
      comps.back().push_back(v);
      for (Vertex w : g.neighbors(v)) {
        if (!visited[static_cast<size_t>(w)]) {
          visited[static_cast<size_t>(w)] = true;
          stack.push_back(w);
        }
      }
    }
    std::sort(comps.back().begin(), comps.back().end());
  }
  return comps;
}

struct Feasibility {
  bool feasible = false;
  std::string reason;  // set when infeasible
  std::vector<std::vector<Vertex>> components;
};

// Stars cannot cross connected components, so the problem decomposes: every
// component's size must be divisible by s+1.
inline Feasibility feasibility_precheck(const Graph& g, int s) {
  Feasibility f;
  f.components = connected_components(g);
  for (const auto& comp : f.components) {
    if (comp.size() % static_cast<size_t>(s + 1) != 0) {
      f.feasible = false;
      f.reason = "component size " + std::to_string(comp.size()) +
                 " not divisible by " + std::to_string(s + 1);
      return f;
    }
  }
  f.feasible = true;
  return f;
}

// Subgraph induced on `vertices` (which must be sorted ascending); vertex i
// of the result corresponds to vertices[i].
inline Graph induced_subgraph(const Graph& g, const std::vector<Vertex>& vertices) {
  Graph sub(static_cast<int>(vertices.size()));
  std::vector<int> index(static_cast<size_t>(g.n()), -1);
  for (size_t i = 0; i < vertices.size(); ++i)
    index[static_cast<size_t>(vertices[i])] = static_cast<int>(i);
  for (auto [u, v] : g.edges()) {
    int iu = index[static_cast<size_t>(u)];
    int iv = index[static_cast<size_t>(v)];
    if (iu >= 0 && iv >= 0) sub.add_edge(iu, iv);
  }
  sub.finalize();
  return sub;
}

// ---------------------------------------------------------------------------
// Bipartite graphs and maximum matching (Hopcroft-Karp).

class BipartiteGraph {
public:
  BipartiteGraph() = default;
  BipartiteGraph(int nl, int nr)
      : nl_(nl), nr_(nr), adj_l_(static_cast<size_t>(nl)),
        adj_r_(static_cast<size_t>(nr)) {
    if (nl < 0 || nr < 0) throw std::invalid_argument("negative side size");
  }

  int nl() const { return nl_; }
  int nr() const { return nr_; }
  int m() const { return static_cast<int>(edges_.size()); }

  void add_edge(Vertex u, Vertex w) {
    if (u < 0 || u >= nl_ || w < 0 || w >= nr_)
      throw std::invalid_argument("bipartite edge endpoint out of range");
    edges_.emplace_back(u, w);
    finalized_ = false;
  }

  void finalize() {
    std::sort(edges_.begin(), edges_.end());
    if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end())
      throw std::invalid_argument("duplicate bipartite edge");
    for (auto& list : adj_l_) list.clear();
    for (auto& list : adj_r_) list.clear();
    for (auto [u, w] : edges_) {
      adj_l_[static_cast<size_t>(u)].push_back(w);
      adj_r_[static_cast<size_t>(w)].push_back(u);
    }
    finalized_ = true;
  }

  bool adjacent(Vertex u, Vertex w) const {
    const auto& list = adj_l_[static_cast<size_t>(u)];
    return std::binary_search(list.begin(), list.end(), w);
  }

  const std::vector<Vertex>& left_neighbors(Vertex u) const {
    return adj_l_[static_cast<size_t>(u)];
  }
  const std::vector<Vertex>& right_neighbors(Vertex w) const {
    return adj_r_[static_cast<size_t>(w)];
  }
  const std::vector<std::pair<Vertex, Vertex>>& edges() const { return edges_; }

private:
  int nl_ = 0, nr_ = 0;
  std::vector<std::pair<Vertex, Vertex>> edges_;
  std::vector<std::vector<Vertex>> adj_l_, adj_r_;
  bool finalized_ = false;
};

struct MatchingResult {
  std::vector<int> match_l;  // per left vertex: matched right vertex or -1
  std::vector<int> match_r;  // per right vertex: matched left vertex or -1
  int size = 0;
  bool is_perfect = false;  // every vertex on both sides matched
};

inline MatchingResult max_bipartite_matching(const BipartiteGraph& b) {
  const int nl = b.nl(), nr = b.nr();
  const int inf = 1 << 30;
  MatchingResult res;
  res.match_l.assign(static_cast<size_t>(nl), -1);
  res.match_r.assign(static_cast<size_t>(nr), -1);
  std::vector<int> dist(static_cast<size_t>(nl), inf);
  std::vector<int> queue;
  queue.reserve(static_cast<size_t>(nl));

  auto bfs = [&]() {
    queue.clear();
    for (int u = 0; u < nl; ++u) {
      if (res.match_l[static_cast<size_t>(u)] < 0) {
        dist[static_cast<size_t>(u)] = 0;
        queue.push_back(u);
      } else {
        dist[static_cast<size_t>(u)] = inf;
      }
    }
    bool found = false;
    for (size_t head = 0; head < queue.size(); ++head) {
      int u = queue[head];
      for (int w : b.left_neighbors(u)) {
        int u2 = res.match_r[static_cast<size_t>(w)];
        if (u2 < 0) {
          found = true;
        } else if (dist[static_cast<size_t>(u2)] == inf) {
          dist[static_cast<size_t>(u2)] = dist[static_cast<size_t>(u)] + 1;
          queue.push_back(u2);
        }
      }
    }
    return found;
  };

  std::vector<int> it(static_cast<size_t>(nl));
  auto dfs = [&](auto&& self, int u) -> bool {
    for (int& i = it[static_cast<size_t>(u)];
         i < static_cast<int>(b.left_neighbors(u).size()); ++i) {
      int w = b.left_neighbors(u)[static_cast<size_t>(i)];
      int u2 = res.match_r[static_cast<size_t>(w)];
      if (u2 < 0 || (dist[static_cast<size_t>(u2)] ==
                         dist[static_cast<size_t>(u)] + 1 &&
                     self(self, u2))) {
        res.match_l[static_cast<size_t>(u)] = w;
        res.match_r[static_cast<size_t>(w)] = u;
        return true;
      }
    }
    dist[static_cast<size_t>(u)] = inf;
    return false;
  };

  while (bfs()) {
    std::fill(it.begin(), it.end(), 0);
    for (int u = 0; u < nl; ++u)
      if (res.match_l[static_cast<size_t>(u)] < 0 && dfs(dfs, u)) ++res.size;
  }
  res.is_perfect = (res.size == nl && res.size == nr);
  return res;
}

// One-graph view of a bipartite graph: left vertices keep their ids, right
// vertex w becomes nl + w. Partitions of bipartite instances use this
// numbering, so verification runs against the combined graph.
inline Graph combined_graph(const BipartiteGraph& b) {
  Graph g(b.nl() + b.nr());
  for (const auto& [u, w] : b.edges()) g.add_edge(u, b.nl() + w);
  g.finalize();
  return g;
}

}  // namespace starpart
