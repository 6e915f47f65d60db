#pragma once

// Star partition on cographs: recursive complement-split cotree
// construction, then a coverage dynamic program over the (binarized)
// cotree. L[x][c] = the maximum number of leaf-role vertices inside
// subtree x that centers inside subtree x can cover, when exactly c
// vertices of the subtree are designated centers of capacity s.

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "starpart/graph.hpp"

namespace starpart {

struct CotreeNode {
  enum Kind { leaf, union_node, join_node } kind = leaf;
  int left = -1, right = -1;  // children (internal nodes)
  int vertex = -1;            // graph vertex (leaves)
};

struct Cotree {
  std::vector<CotreeNode> nodes;
  int root = -1;
};

namespace detail {

// Connected components of the induced subgraph, discovered smallest-id
// first; `complement` flips every adjacency within the subset.
inline std::vector<std::vector<Vertex>> subset_components(const Graph& g,
                                                          const std::vector<Vertex>& verts,
                                                          bool complement) {
  std::vector<std::vector<Vertex>> comps;
  std::vector<bool> done(verts.size(), false);
  for (size_t start = 0; start < verts.size(); ++start) {
    if (done[start]) continue;
    std::vector<Vertex> comp;
    std::vector<size_t> stack{start};
    done[start] = true;
    while (!stack.empty()) {
      size_t cur = stack.back();
      stack.pop_back();
      comp.push_back(verts[cur]);
      for (size_t other = 0; other < verts.size(); ++other) {
        if (done[other]) continue;
        bool adj = g.adjacent(verts[cur], verts[other]);
        if (complement ? !adj : adj) {
          done[other] = true;
          stack.push_back(other);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    comps.push_back(std::move(comp));
  }
  return comps;
}

// Left-deep chain of `kind` nodes over children in discovery order.
inline int binarize(Cotree& tree, CotreeNode::Kind kind, const std::vector<int>& children) {
  int acc = children[0];
  for (size_t i = 1; i < children.size(); ++i) {
    tree.nodes.push_back({kind, acc, children[i], -1});
    acc = static_cast<int>(tree.nodes.size()) - 1;
  }
  return acc;
}

inline std::optional<int> cotree_rec(const Graph& g, Cotree& tree,
                                     const std::vector<Vertex>& verts) {
  if (verts.size() == 1) {
    tree.nodes.push_back({CotreeNode::leaf, -1, -1, verts[0]});
    return static_cast<int>(tree.nodes.size()) - 1;
  }
  auto comps = subset_components(g, verts, false);
  bool is_union = comps.size() > 1;
  if (!is_union) {
    comps = subset_components(g, verts, true);
    if (comps.size() == 1) return std::nullopt;  // neither splits: not a cograph
  }
  std::vector<int> children;
  for (const auto& comp : comps) {
    auto child = cotree_rec(g, tree, comp);
    if (!child) return std::nullopt;
    children.push_back(*child);
  }
  return detail::binarize(tree, is_union ? CotreeNode::union_node : CotreeNode::join_node,
                          children);
}

}  // namespace detail

inline std::optional<Cotree> cotree_build(const Graph& g) {
  if (g.n() == 0) throw std::invalid_argument("cotree of an empty graph");
  std::vector<Vertex> all(static_cast<size_t>(g.n()));
  for (int v = 0; v < g.n(); ++v) all[static_cast<size_t>(v)] = v;
  Cotree tree;
  auto root = detail::cotree_rec(g, tree, all);
  if (!root) return std::nullopt;
  tree.root = *root;
  return tree;
}

inline void cotree_dump_rec(const Cotree& tree, int node, std::string& out) {
  const CotreeNode& n = tree.nodes[static_cast<size_t>(node)];
  if (n.kind == CotreeNode::leaf) {
    out += std::to_string(n.vertex);
    return;
  }
  out += n.kind == CotreeNode::union_node ? "(union " : "(join ";
  cotree_dump_rec(tree, n.left, out);
  out += ' ';
  cotree_dump_rec(tree, n.right, out);
  out += ')';
}

inline std::string cotree_dump(const Cotree& tree) {
  std::string out;
  cotree_dump_rec(tree, tree.root, out);
  return out;
}

// The coverage DP. Per node: size of the subtree, L[c] for c = 0..size, and
// the left-child center count that attained each entry.
struct CographDP {
  int s = 0;
  std::vector<int> size;                  // per node
  std::vector<std::vector<int>> best;     // L[x][c]
  std::vector<std::vector<int>> pick_c1;  // argmax split (internal nodes)
};

// At a join, every cross pair is adjacent, so coverage splits into cross
// coverage (bounded by capacity on one side and leaf-role count on the
// other) plus internal coverage already tabulated in the children. With
// l_i = size_i - c_i leaf-role vertices:
//   capacity-rich on both sides:   everything is covered,    A = l1 + l2
//   capacity-poor on both sides:   all capacity crosses,     A = (c1+c2)*s
//   rich left / poor right:        right leaves + right capacity cross,
//     plus internal left coverage min(c1*s - l2, l1 - c2*s, L1[c1])
// and symmetrically. The internal term takes the minimum of spare capacity,
// spare leaves, and what the child can structurally cover.
namespace detail {

struct JoinSplit {
  int cross12 = 0, cross21 = 0, int1 = 0, int2 = 0;
};

inline JoinSplit join_split(int s, int c1, int l1, int L1, int c2, int l2, int L2) {
  JoinSplit js;
  const bool rich1 = c1 * s > l2;  // side 1 capacity exceeds side 2 leaves
  const bool rich2 = c2 * s > l1;
  if (rich1 && rich2) {
    js.cross12 = l2;
    js.cross21 = l1;
  } else if (!rich1 && !rich2) {
    js.cross12 = c1 * s;
    js.cross21 = c2 * s;
  } else if (rich1) {
    js.cross12 = l2;
    js.cross21 = c2 * s;
    js.int1 = std::min({c1 * s - l2, l1 - c2 * s, L1});
  } else {
    js.cross12 = c1 * s;
    js.cross21 = l1;
    js.int2 = std::min({c2 * s - l1, l2 - c1 * s, L2});
  }
  return js;
}

inline int join_value(const JoinSplit& js) {
  return js.cross12 + js.cross21 + js.int1 + js.int2;
}

}  // namespace detail

inline CographDP compute_cograph_dp(const Cotree& tree, int s) {
  if (s < 1) throw std::invalid_argument("s must be positive");
  const size_t nn = tree.nodes.size();
  CographDP dp;
  dp.s = s;
  dp.size.assign(nn, 0);
  dp.best.assign(nn, {});
  dp.pick_c1.assign(nn, {});

  // Nodes were appended children-first, so index order is a valid
  // postorder.
  for (size_t x = 0; x < nn; ++x) {
    const CotreeNode& node = tree.nodes[x];
    if (node.kind == CotreeNode::leaf) {
      dp.size[x] = 1;
      dp.best[x] = {0, 0};  // c = 0: leaf role; c = 1: center, covers nothing yet
      continue;
    }
    const size_t lx = static_cast<size_t>(node.left), rx = static_cast<size_t>(node.right);
    const int sz1 = dp.size[lx], sz2 = dp.size[rx];
    dp.size[x] = sz1 + sz2;
    dp.best[x].assign(static_cast<size_t>(dp.size[x] + 1), -1);
    dp.pick_c1[x].assign(static_cast<size_t>(dp.size[x] + 1), -1);
    for (int c = 0; c <= dp.size[x]; ++c) {
      for (int c1 = std::max(0, c - sz2); c1 <= std::min(c, sz1); ++c1) {
        const int c2 = c - c1;
        const int v1 = dp.best[lx][static_cast<size_t>(c1)];
        const int v2 = dp.best[rx][static_cast<size_t>(c2)];
        if (v1 < 0 || v2 < 0) continue;
        int value;
        if (node.kind == CotreeNode::union_node) {
          value = v1 + v2;
        } else {
          value = detail::join_value(
              detail::join_split(s, c1, sz1 - c1, v1, c2, sz2 - c2, v2));
        }
        if (value > dp.best[x][static_cast<size_t>(c)]) {
          dp.best[x][static_cast<size_t>(c)] = value;
          dp.pick_c1[x][static_cast<size_t>(c)] = c1;
        }
      }
    }
  }
  return dp;
}

namespace detail {

// Partial assignment inside a subtree: centers with how much capacity they
// have spent, vertices in leaf role not covered yet, and the cover pairs
// decided so far (appended to a shared list).
struct CographAssign {
  std::vector<std::pair<Vertex, int>> centers;  // (vertex, used capacity)
  std::vector<Vertex> uncovered;
};

inline void cograph_assign(const Cotree& tree, const CographDP& dp, int node, int c,
                           int target, CographAssign& out,
                           std::vector<std::pair<Vertex, Vertex>>& cover) {
  const size_t x = static_cast<size_t>(node);
  if (target < 0 || target > dp.best[x][static_cast<size_t>(c)])
    throw std::logic_error("coverage target out of range");
  const CotreeNode& nd = tree.nodes[x];
  if (nd.kind == CotreeNode::leaf) {
    if (c == 1)
      out.centers.push_back({nd.vertex, 0});
    else
      out.uncovered.push_back(nd.vertex);
    return;
  }

  const int c1 = dp.pick_c1[x][static_cast<size_t>(c)];
  const int c2 = c - c1;
  const size_t lx = static_cast<size_t>(nd.left), rx = static_cast<size_t>(nd.right);
  const int L1 = dp.best[lx][static_cast<size_t>(c1)];
  const int L2 = dp.best[rx][static_cast<size_t>(c2)];

  if (nd.kind == CotreeNode::union_node) {
    const int t1 = std::min(L1, target);
    CographAssign a1, a2;
    cograph_assign(tree, dp, nd.left, c1, t1, a1, cover);
    cograph_assign(tree, dp, nd.right, c2, target - t1, a2, cover);
    out.centers.insert(out.centers.end(), a1.centers.begin(), a1.centers.end());
    out.centers.insert(out.centers.end(), a2.centers.begin(), a2.centers.end());
    out.uncovered.insert(out.uncovered.end(), a1.uncovered.begin(), a1.uncovered.end());
    out.uncovered.insert(out.uncovered.end(), a2.uncovered.begin(), a2.uncovered.end());
    return;
  }

  JoinSplit js = join_split(dp.s, c1, dp.size[lx] - c1, L1, c2, dp.size[rx] - c2, L2);
  // Shrink to the requested coverage, giving up internal coverage before
  // cross coverage (cross pairs always remain available at this node).
  int delta = join_value(js) - target;
  auto shave = [&delta](int& field) {
    int cut = std::min(delta, field);
    field -= cut;
    delta -= cut;
  };
  shave(js.int1);
  shave(js.int2);
  shave(js.cross12);
  shave(js.cross21);
  if (delta != 0) throw std::logic_error("coverage target unreachable");

  CographAssign a1, a2;
  cograph_assign(tree, dp, nd.left, c1, js.int1, a1, cover);
  cograph_assign(tree, dp, nd.right, c2, js.int2, a2, cover);

  // Cross coverage: at a join every center is adjacent to every vertex of
  // the opposite subtree, so spend remaining capacities in list order.
  auto spend = [&](std::vector<std::pair<Vertex, int>>& centers,
                   std::vector<Vertex>& leaves, int amount) {
    size_t li = 0;
    for (auto& [center, used] : centers) {
      while (amount > 0 && used < dp.s && li < leaves.size()) {
        cover.push_back({center, leaves[li]});
        ++used;
        ++li;
        --amount;
      }
    }
    leaves.erase(leaves.begin(), leaves.begin() + static_cast<long>(li));
    if (amount != 0) throw std::logic_error("cross coverage fell short");
  };
  spend(a1.centers, a2.uncovered, js.cross12);
  spend(a2.centers, a1.uncovered, js.cross21);

  out.centers.insert(out.centers.end(), a1.centers.begin(), a1.centers.end());
  out.centers.insert(out.centers.end(), a2.centers.begin(), a2.centers.end());
  out.uncovered.insert(out.uncovered.end(), a1.uncovered.begin(), a1.uncovered.end());
  out.uncovered.insert(out.uncovered.end(), a2.uncovered.begin(), a2.uncovered.end());
}

}  // namespace detail

// Decide and construct from a built cotree. Acceptance condition: with
// k = n/(s+1) centers, all remaining n-k = k*s vertices are coverable.
inline std::optional<StarPartition> cograph_partition(const Cotree& tree, int s) {
  const CographDP dp = compute_cograph_dp(tree, s);
  const int n = dp.size[static_cast<size_t>(tree.root)];
  if (n % (s + 1) != 0) return std::nullopt;
  const int k = n / (s + 1);
  if (dp.best[static_cast<size_t>(tree.root)][static_cast<size_t>(k)] != k * s)
    return std::nullopt;

  detail::CographAssign top;
  std::vector<std::pair<Vertex, Vertex>> cover;
  detail::cograph_assign(tree, dp, tree.root, k, k * s, top, cover);
  if (!top.uncovered.empty()) throw std::logic_error("vertices left uncovered");

  StarPartition part;
  part.s = s;
  std::vector<int> block_of(static_cast<size_t>(n), -1);
  for (const auto& [center, used] : top.centers) {
    if (used != s) throw std::logic_error("center with unspent capacity");
    StarBlock blk;
    blk.center = center;
    block_of[static_cast<size_t>(center)] = static_cast<int>(part.blocks.size());
    part.blocks.push_back(blk);
  }
  for (const auto& [center, covered] : cover)
    part.blocks[static_cast<size_t>(block_of[static_cast<size_t>(center)])]
        .leaves.push_back(covered);
  return part;
}

}  // namespace starpart
