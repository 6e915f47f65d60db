#pragma once

// Hardness-reduction constructions, structural checks, and deterministic
// random instance builders used by the test corpus and the CLI generator.

#include <algorithm>
#include <array>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "starpart/graph.hpp"
#include "starpart/interval.hpp"
#include "starpart/io.hpp"
#include "starpart/split.hpp"

namespace starpart {

// ------------------------------------------------ deterministic RNG

// mt19937_64 with hand-rolled draws so generated corpora are byte-identical
// across standard libraries (std::uniform_int_distribution is not portable).
class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // uniform in [lo, hi] via rejection-free modulo; bias is irrelevant for
  // test-corpus purposes and determinism is what matters.
  long long range(long long lo, long long hi) {
    if (lo > hi) throw std::invalid_argument("empty range");
    return lo + static_cast<long long>(engine_() %
                                       static_cast<std::uint64_t>(hi - lo + 1));
  }
  bool chance(int percent) { return range(0, 99) < percent; }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (size_t i = v.size(); i > 1; --i)
      std::swap(v[i - 1], v[static_cast<size_t>(range(0, static_cast<long long>(i) - 1))]);
  }

private:
  std::mt19937_64 engine_;
};

// ------------------------------------------------ chordality

// Maximum cardinality search; the reverse visit order is a perfect
// elimination order exactly when the graph is chordal.
inline bool is_chordal(const Graph& g) {
  const int n = g.n();
  std::vector<int> weight(static_cast<size_t>(n), 0);
  std::vector<bool> visited(static_cast<size_t>(n), false);
  std::vector<int> visit;
  visit.reserve(static_cast<size_t>(n));
  for (int step = 0; step < n; ++step) {
    int best = -1;
    for (int v = 0; v < n; ++v)
      if (!visited[static_cast<size_t>(v)] &&
          (best < 0 || weight[static_cast<size_t>(v)] > weight[static_cast<size_t>(best)]))
        best = v;
    visited[static_cast<size_t>(best)] = true;
    visit.push_back(best);
    for (Vertex u : g.neighbors(best))
      if (!visited[static_cast<size_t>(u)]) ++weight[static_cast<size_t>(u)];
  }

  std::vector<int> pos(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i)
    pos[static_cast<size_t>(visit[static_cast<size_t>(i)])] = n - 1 - i;
  // Eliminating in reverse visit order, each vertex's later neighbors must
  // form a clique; it suffices that all of them are adjacent to the
  // earliest-eliminated one.
  for (int v = 0; v < n; ++v) {
    int parent = -1;
    for (Vertex u : g.neighbors(v))
      if (pos[static_cast<size_t>(u)] > pos[static_cast<size_t>(v)] &&
          (parent < 0 || pos[static_cast<size_t>(u)] < pos[static_cast<size_t>(parent)]))
        parent = u;
    if (parent < 0) continue;
    for (Vertex u : g.neighbors(v))
      if (u != parent && pos[static_cast<size_t>(u)] > pos[static_cast<size_t>(v)] &&
          !g.adjacent(parent, u))
        return false;
  }
  return true;
}

// ------------------------------------------------ edge subdivision

// Replaces edge {u, w} by the path u - a - b - c - w on three fresh
// vertices n, n+1, n+2. Preserves the partition answer for s = 2.
inline Graph subdivide_edge(const Graph& g, Vertex u, Vertex w) {
  if (!g.adjacent(u, w)) throw std::invalid_argument("subdividing a non-edge");
  Graph out(g.n() + 3);
  for (const auto& [a, b] : g.edges())
    if (!((a == u && b == w) || (a == w && b == u))) out.add_edge(a, b);
  out.add_edge(u, g.n());
  out.add_edge(g.n(), g.n() + 1);
  out.add_edge(g.n() + 1, g.n() + 2);
  out.add_edge(g.n() + 2, w);
  out.finalize();
  return out;
}

// ------------------------------------------------ exact cover -> split

// Image of an exact cover instance (s-sets over a universe of size s*k)
// under the split-graph reduction: one clique vertex per set plus filler
// clique vertices, one independent vertex per element plus filler pendants
// sized so that the image has a K_{1,s} partition iff the cover exists.
struct ExactCoverImage {
  Graph graph;
  SplitDecomposition dec;
  std::vector<Vertex> set_vertex;      // per set
  std::vector<Vertex> element_vertex;  // per universe index
  int q = 0, r = 0;
};

inline ExactCoverImage exact_cover_to_split(const ExactCoverInstance& inst) {
  const int s = inst.set_size;
  const int m = static_cast<int>(inst.sets.size());
  const int u = static_cast<int>(inst.universe.size());
  if (s < 2) throw std::invalid_argument("reduction needs set size >= 2");
  if (u % s != 0) throw std::invalid_argument("universe size must be divisible by the set size");
  const int k = u / s;
  if (m < k) throw std::invalid_argument("too few sets: a cover needs at least |U|/s of them");

  const int q = (m - k) / (s - 1);
  const int r = (m - k) % (s - 1);

  // Clique: set vertices, q paired fillers, one closing filler.
  // Independent: element vertices, q paired pendants (one per paired
  // filler), s - r closing pendants on the closing filler.
  ExactCoverImage img{Graph(0), {}, {}, {}, q, r};
  int next = 0;
  for (int i = 0; i < m; ++i) img.set_vertex.push_back(next++);
  std::vector<Vertex> paired_filler, closing_filler;
  for (int i = 0; i < q; ++i) paired_filler.push_back(next++);
  closing_filler.push_back(next++);
  for (int i = 0; i < u; ++i) img.element_vertex.push_back(next++);
  std::vector<Vertex> paired_pendant, closing_pendant;
  for (int i = 0; i < q; ++i) paired_pendant.push_back(next++);
  for (int i = 0; i < s - r; ++i) closing_pendant.push_back(next++);

  Graph g(next);
  std::vector<Vertex> clique;
  clique.insert(clique.end(), img.set_vertex.begin(), img.set_vertex.end());
  clique.insert(clique.end(), paired_filler.begin(), paired_filler.end());
  clique.insert(clique.end(), closing_filler.begin(), closing_filler.end());
  for (size_t i = 0; i < clique.size(); ++i)
    for (size_t j = i + 1; j < clique.size(); ++j) g.add_edge(clique[i], clique[j]);
  for (int i = 0; i < m; ++i)
    for (int e : inst.sets[static_cast<size_t>(i)])
      g.add_edge(img.set_vertex[static_cast<size_t>(i)],
                 img.element_vertex[static_cast<size_t>(e)]);
  for (int i = 0; i < q; ++i)
    g.add_edge(paired_filler[static_cast<size_t>(i)], paired_pendant[static_cast<size_t>(i)]);
  for (Vertex p : closing_pendant) g.add_edge(closing_filler[0], p);
  g.finalize();

  img.graph = std::move(g);
  img.dec.clique = clique;
  std::sort(img.dec.clique.begin(), img.dec.clique.end());
  img.dec.independent = img.element_vertex;
  img.dec.independent.insert(img.dec.independent.end(), paired_pendant.begin(),
                             paired_pendant.end());
  img.dec.independent.insert(img.dec.independent.end(), closing_pendant.begin(),
                             closing_pendant.end());
  std::sort(img.dec.independent.begin(), img.dec.independent.end());
  return img;
}

// Reference decision for small exact cover instances: branch on the first
// uncovered element over the sets containing it.
inline bool exact_cover_exists(const ExactCoverInstance& inst) {
  const int u = static_cast<int>(inst.universe.size());
  if (u % inst.set_size != 0) return false;
  std::vector<bool> covered(static_cast<size_t>(u), false);
  std::vector<std::vector<int>> containing(static_cast<size_t>(u));
  for (size_t i = 0; i < inst.sets.size(); ++i)
    for (int e : inst.sets[i]) containing[static_cast<size_t>(e)].push_back(static_cast<int>(i));

  auto rec = [&](auto&& self, int covered_count) -> bool {
    if (covered_count == u) return true;
    int first = 0;
    while (covered[static_cast<size_t>(first)]) ++first;
    for (int si : containing[static_cast<size_t>(first)]) {
      const auto& set = inst.sets[static_cast<size_t>(si)];
      bool free = true;
      for (int e : set)
        if (covered[static_cast<size_t>(e)]) {
          free = false;
          break;
        }
      if (!free) continue;
      for (int e : set) covered[static_cast<size_t>(e)] = true;
      if (self(self, covered_count + inst.set_size)) return true;
      for (int e : set) covered[static_cast<size_t>(e)] = false;
    }
    return false;
  };
  return rec(rec, 0);
}

// --------------------------------------- three-way matching -> chordal

// Image of a three-dimensional matching instance under the chordal
// reduction: a pendant edge per element, a path per triple, edges tying
// triple paths to their elements, plus a clique on the element vertices and
// two chords per triple to make the graph chordal without changing the
// partition answer.
struct ThreeWayImage {
  Graph graph;
  std::vector<Vertex> element_vertex;   // u_a, indexed part*q + i
  std::vector<Vertex> element_pendant;  // u'_a
  std::vector<std::array<Vertex, 3>> triple_vertex;
};

inline ThreeWayImage three_way_to_chordal(const ThreeWayMatchingInstance& inst) {
  const int q = inst.q;
  const int t = static_cast<int>(inst.triples.size());
  ThreeWayImage img{Graph(6 * q + 3 * t), {}, {}, {}};
  for (int i = 0; i < 3 * q; ++i) {
    img.element_vertex.push_back(2 * i);
    img.element_pendant.push_back(2 * i + 1);
  }
  for (int j = 0; j < t; ++j)
    img.triple_vertex.push_back({6 * q + 3 * j, 6 * q + 3 * j + 1, 6 * q + 3 * j + 2});

  Graph& g = img.graph;
  for (int i = 0; i < 3 * q; ++i) g.add_edge(2 * i, 2 * i + 1);
  // Clique on the element vertices (the chordal completion of the element
  // side).
  for (int i = 0; i < 3 * q; ++i)
    for (int j = i + 1; j < 3 * q; ++j) g.add_edge(2 * i, 2 * j);
  auto elem = [&](int part, int idx) {
    return img.element_vertex[static_cast<size_t>(part * q + idx)];
  };
  for (int j = 0; j < t; ++j) {
    auto [ri, bi, yi] = inst.triples[static_cast<size_t>(j)];
    auto [vr, vb, vy] = img.triple_vertex[static_cast<size_t>(j)];
    g.add_edge(vb, vr);
    g.add_edge(vb, vy);
    g.add_edge(elem(0, ri), vr);
    g.add_edge(elem(1, bi), vb);
    g.add_edge(elem(2, yi), vy);
    // chords keeping the triple's cycle structure chordal
    g.add_edge(vb, elem(0, ri));
    g.add_edge(vb, elem(2, yi));
  }
  g.finalize();
  return img;
}

// Reference decision for small three-way matching instances.
inline bool three_way_matching_exists(const ThreeWayMatchingInstance& inst) {
  const int q = inst.q;
  std::vector<bool> used[3];
  for (auto& u : used) u.assign(static_cast<size_t>(q), false);
  std::vector<std::vector<int>> by_first(static_cast<size_t>(q));
  for (size_t j = 0; j < inst.triples.size(); ++j)
    by_first[static_cast<size_t>(inst.triples[j][0])].push_back(static_cast<int>(j));

  auto rec = [&](auto&& self, int matched) -> bool {
    if (matched == q) return true;
    int first = 0;
    while (used[0][static_cast<size_t>(first)]) ++first;
    for (int j : by_first[static_cast<size_t>(first)]) {
      auto [ri, bi, yi] = inst.triples[static_cast<size_t>(j)];
      if (used[1][static_cast<size_t>(bi)] || used[2][static_cast<size_t>(yi)]) continue;
      used[0][static_cast<size_t>(ri)] = used[1][static_cast<size_t>(bi)] =
          used[2][static_cast<size_t>(yi)] = true;
      if (self(self, matched + 1)) return true;
      used[0][static_cast<size_t>(ri)] = used[1][static_cast<size_t>(bi)] =
          used[2][static_cast<size_t>(yi)] = false;
    }
    return false;
  };
  return rec(rec, 0);
}

// ------------------------------------------------ random instances

// Unit intervals: common length, integer births; normalize_events keeps the
// birth order, which is all the greedy needs.
inline std::vector<RawInterval> random_unit_intervals(int n, Rng& rng) {
  std::vector<RawInterval> out;
  const long long span = std::max(2LL, static_cast<long long>(n) * 3 / 2);
  const long long len = std::max(2LL, span / 4);
  for (int i = 0; i < n; ++i) {
    long long b = rng.range(0, span);
    out.push_back({i, Coord(b), Coord(b + len)});
  }
  return out;
}

inline std::vector<RawInterval> random_intervals(int n, Rng& rng) {
  std::vector<RawInterval> out;
  const long long span = std::max(3LL, static_cast<long long>(n) * 2);
  for (int i = 0; i < n; ++i) {
    long long b = rng.range(0, span - 1);
    long long d = b + rng.range(1, std::max(2LL, span / 3));
    out.push_back({i, Coord(b), Coord(d)});
  }
  return out;
}

struct BipermInstanceData {
  BipartiteGraph graph{0, 0};
  StrongOrdering order;
};

// Random bipartite permutation graph: draw a permutation, build its
// crossing graph, retry until the result is two-colorable, then attach a
// validated strong ordering. Sides are relabeled 0..nl-1 / 0..nr-1 in line
// position order.
//
// The crossing graph is bipartite exactly when the permutation has no
// decreasing subsequence of length 3 (permutation graphs are perfect, so
// bipartite reduces to triangle-free). That lets each rejected attempt be
// filtered in O(n) by greedy two-pile patience cover, without changing the
// accepted distribution: the survivors are the same permutations the literal
// build-and-two-color loop would accept. Acceptance odds decay like
// Catalan(n)/n!, hence the generous retry bound.
inline BipermInstanceData random_bipperm(int n, Rng& rng) {
  for (long long attempt = 0; attempt < 5'000'000; ++attempt) {
    std::vector<int> perm(static_cast<size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    rng.shuffle(perm);

    // Cover the sequence by two increasing piles; a value fitting neither
    // pile top closes a decreasing triple.
    int top1 = -1, top2 = -1;  // pile tops, top1 <= top2 when both active
    bool two_increasing = true;
    for (int v : perm) {
      if (top1 > top2) std::swap(top1, top2);
      if (v > top2)
        top2 = v;  // prefer the higher viable pile to keep tops small
      else if (v > top1)
        top1 = v;
      else {
        two_increasing = false;
        break;
      }
    }
    if (!two_increasing) continue;

    // Crossing pairs; 2-coloring now succeeds by construction.
    std::vector<std::vector<int>> adj(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (perm[static_cast<size_t>(i)] > perm[static_cast<size_t>(j)]) {
          adj[static_cast<size_t>(i)].push_back(j);
          adj[static_cast<size_t>(j)].push_back(i);
        }
    std::vector<int> color(static_cast<size_t>(n), -1);
    for (int start = 0; start < n; ++start) {
      if (color[static_cast<size_t>(start)] != -1) continue;
      color[static_cast<size_t>(start)] = 0;
      std::vector<int> queue{start};
      for (size_t qi = 0; qi < queue.size(); ++qi)
        for (int u : adj[static_cast<size_t>(queue[qi])]) {
          if (color[static_cast<size_t>(u)] == -1) {
            color[static_cast<size_t>(u)] = 1 - color[static_cast<size_t>(queue[qi])];
            queue.push_back(u);
          } else if (color[static_cast<size_t>(u)] ==
                     color[static_cast<size_t>(queue[qi])]) {
            throw std::logic_error("two-pile filter let an odd cycle through");
          }
        }
    }

    std::vector<int> side_index(static_cast<size_t>(n), -1);
    int nl = 0, nr = 0;
    for (int v = 0; v < n; ++v)
      side_index[static_cast<size_t>(v)] = color[static_cast<size_t>(v)] == 0 ? nl++ : nr++;
    BipermInstanceData out;
    out.graph = BipartiteGraph(nl, nr);
    for (int i = 0; i < n; ++i)
      for (int j : adj[static_cast<size_t>(i)])
        if (i < j) {
          int u = color[static_cast<size_t>(i)] == 0 ? i : j;
          int w = u == i ? j : i;
          out.graph.add_edge(side_index[static_cast<size_t>(u)],
                             side_index[static_cast<size_t>(w)]);
        }
    out.graph.finalize();

    // Natural candidate: both sides in line position order; fall back to
    // the heuristic when the candidate fails validation.
    for (int v = 0; v < n; ++v)
      (color[static_cast<size_t>(v)] == 0 ? out.order.left : out.order.right)
          .push_back(side_index[static_cast<size_t>(v)]);
    if (validate_strong_ordering(out.graph, out.order)) return out;
    if (auto found = compute_strong_ordering(out.graph)) {
      out.order = *found;
      return out;
    }
  }
  throw std::runtime_error("no bipartite permutation graph found for this seed");
}

// Random cotree of n leaves, realized as a graph. Buildable instances for
// the cotree pipeline by construction.
inline Graph random_cograph(int n, Rng& rng) {
  Graph g(n);
  auto rec = [&](auto&& self, std::vector<Vertex> verts, bool join) -> void {
    if (verts.size() <= 1) return;
    // split into two non-empty halves at a random point
    size_t cut = static_cast<size_t>(rng.range(1, static_cast<long long>(verts.size()) - 1));
    std::vector<Vertex> left(verts.begin(), verts.begin() + static_cast<long>(cut));
    std::vector<Vertex> right(verts.begin() + static_cast<long>(cut), verts.end());
    if (join)
      for (Vertex u : left)
        for (Vertex v : right) g.add_edge(std::min(u, v), std::max(u, v));
    self(self, std::move(left), !join);
    self(self, std::move(right), !join);
  };
  std::vector<Vertex> all(static_cast<size_t>(n));
  std::iota(all.begin(), all.end(), 0);
  rng.shuffle(all);
  rec(rec, std::move(all), rng.chance(70));
  g.finalize();
  return g;
}

// Split graph: clique of nc vertices, independent set of ni, each
// independent vertex picking one to three clique neighbors (rarely none, to
// exercise no-instances).
inline Graph random_split_graph(int nc, int ni, Rng& rng) {
  Graph g(nc + ni);
  for (int i = 0; i < nc; ++i)
    for (int j = i + 1; j < nc; ++j) g.add_edge(i, j);
  for (int i = 0; i < ni; ++i) {
    if (nc == 0) break;
    int deg = rng.chance(8) ? 0 : static_cast<int>(rng.range(1, std::min(3LL, static_cast<long long>(nc))));
    std::vector<int> picks(static_cast<size_t>(nc));
    std::iota(picks.begin(), picks.end(), 0);
    rng.shuffle(picks);
    for (int d = 0; d < deg; ++d) g.add_edge(picks[static_cast<size_t>(d)], nc + i);
  }
  g.finalize();
  return g;
}

inline Graph random_graph(int n, int percent, Rng& rng) {
  Graph g(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (rng.chance(percent)) g.add_edge(i, j);
  g.finalize();
  return g;
}

inline ExactCoverInstance random_exact_cover(int k, int s, int extra_sets,
                                             bool plant, Rng& rng) {
  ExactCoverInstance inst;
  inst.set_size = s;
  const int u = k * s;
  for (int i = 0; i < u; ++i) inst.universe.push_back(i);
  std::vector<int> perm(static_cast<size_t>(u));
  std::iota(perm.begin(), perm.end(), 0);
  if (plant) {
    rng.shuffle(perm);
    for (int i = 0; i < k; ++i) {
      std::vector<int> set(perm.begin() + static_cast<long>(i) * s,
                           perm.begin() + static_cast<long>(i + 1) * s);
      std::sort(set.begin(), set.end());
      inst.sets.push_back(std::move(set));
    }
  }
  const int want = plant ? extra_sets : extra_sets + k;
  for (int i = 0; i < want; ++i) {
    rng.shuffle(perm);
    std::vector<int> set(perm.begin(), perm.begin() + s);
    std::sort(set.begin(), set.end());
    inst.sets.push_back(std::move(set));
  }
  rng.shuffle(inst.sets);
  return inst;
}

inline ThreeWayMatchingInstance random_three_way(int q, int extra, bool plant,
                                                 Rng& rng) {
  ThreeWayMatchingInstance inst;
  inst.q = q;
  for (int part = 0; part < 3; ++part)
    for (int i = 0; i < q; ++i)
      inst.names[part].push_back(std::string(1, static_cast<char>('a' + part)) +
                                 std::to_string(i));
  std::vector<int> pb(static_cast<size_t>(q)), py(static_cast<size_t>(q));
  std::iota(pb.begin(), pb.end(), 0);
  std::iota(py.begin(), py.end(), 0);
  if (plant) {
    rng.shuffle(pb);
    rng.shuffle(py);
    for (int i = 0; i < q; ++i)
      inst.triples.push_back({i, pb[static_cast<size_t>(i)], py[static_cast<size_t>(i)]});
  }
  const int want = plant ? extra : extra + q;
  for (int i = 0; i < want; ++i)
    inst.triples.push_back({static_cast<int>(rng.range(0, q - 1)),
                            static_cast<int>(rng.range(0, q - 1)),
                            static_cast<int>(rng.range(0, q - 1))});
  rng.shuffle(inst.triples);
  return inst;
}

// ------------------------------------------------ benchmark shapes

// Yes-instance intervals: n/3 groups of three pairwise overlapping
// intervals, groups disjoint.
inline std::vector<RawInterval> bench_intervals(int n) {
  if (n % 3 != 0) throw std::invalid_argument("bench interval size must be divisible by 3");
  std::vector<RawInterval> out;
  for (int gidx = 0; gidx < n / 3; ++gidx) {
    long long base = 10LL * gidx;
    out.push_back({3 * gidx, Coord(base), Coord(base + 5)});
    out.push_back({3 * gidx + 1, Coord(base + 1), Coord(base + 6)});
    out.push_back({3 * gidx + 2, Coord(base + 2), Coord(base + 7)});
  }
  return out;
}

// Yes-instance staircase of k alternating blocks (even blocks are
// right-centered, odd blocks left-centered), so both center counts stay
// busy; left neighborhoods are monotone right intervals, making the
// identity orders strong.
inline BipermInstanceData bench_bipperm(int k, int s) {
  BipermInstanceData out;
  std::vector<std::pair<int, int>> pending;  // block edges (left, right)
  int nl = 0, nr = 0;
  for (int j = 0; j < k; ++j) {
    if (j % 2 == 0) {
      for (int l = 0; l < s; ++l) pending.push_back({nl + l, nr});
      nl += s;
      nr += 1;
    } else {
      for (int l = 0; l < s; ++l) pending.push_back({nl, nr + l});
      nl += 1;
      nr += s;
    }
    // overlap edge gluing consecutive blocks, keeping endpoints monotone
    if (j + 1 < k) pending.push_back({nl - 1, nr});
  }
  out.graph = BipartiteGraph(nl, nr);
  for (const auto& [u, w] : pending) out.graph.add_edge(u, w);
  out.graph.finalize();
  for (int i = 0; i < nl; ++i) out.order.left.push_back(i);
  for (int i = 0; i < nr; ++i) out.order.right.push_back(i);
  return out;
}

}  // namespace starpart
