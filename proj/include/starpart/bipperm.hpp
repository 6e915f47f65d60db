#pragma once

// Star partition on bipartite permutation graphs: a prefix dynamic program
// over a strong ordering of the two sides. Vertices in the combined id
// space are left ids 0..nl-1 followed by right ids nl..nl+nr-1.

#include <algorithm>
#include <climits>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "starpart/graph.hpp"

namespace starpart {

// Orders are position lists: left[i] is the left vertex at position i.
struct StrongOrdering {
  std::vector<int> left;
  std::vector<int> right;
};

// A strong ordering requires: for edges {u,w} and {u',w'} with u before u'
// and w' before w, the swapped pairs {u,w'} and {u',w} are also edges.
// Checked pairwise over edges in O(m^2) adjacency queries; this is the
// ground truth the heuristic below defers to.
inline bool validate_strong_ordering(const BipartiteGraph& b,
                                     const StrongOrdering& ord) {
  auto is_permutation = [](const std::vector<int>& v, int n) {
    if (static_cast<int>(v.size()) != n) return false;
    std::vector<bool> seen(static_cast<size_t>(n), false);
    for (int x : v) {
      if (x < 0 || x >= n || seen[static_cast<size_t>(x)]) return false;
      seen[static_cast<size_t>(x)] = true;
    }
    return true;
  };
  if (!is_permutation(ord.left, b.nl()) || !is_permutation(ord.right, b.nr()))
    return false;

  std::vector<int> pos_l(static_cast<size_t>(b.nl()));
  std::vector<int> pos_r(static_cast<size_t>(b.nr()));
  for (int i = 0; i < b.nl(); ++i) pos_l[static_cast<size_t>(ord.left[static_cast<size_t>(i)])] = i;
  for (int i = 0; i < b.nr(); ++i) pos_r[static_cast<size_t>(ord.right[static_cast<size_t>(i)])] = i;

  const auto& edges = b.edges();
  for (size_t i = 0; i < edges.size(); ++i) {
    for (size_t j = i + 1; j < edges.size(); ++j) {
      auto [u1, w1] = edges[i];
      auto [u2, w2] = edges[j];
      // Orient so the left endpoints are in order.
      if (pos_l[static_cast<size_t>(u1)] > pos_l[static_cast<size_t>(u2)]) {
        std::swap(u1, u2);
        std::swap(w1, w2);
      }
      if (pos_l[static_cast<size_t>(u1)] < pos_l[static_cast<size_t>(u2)] &&
          pos_r[static_cast<size_t>(w2)] < pos_r[static_cast<size_t>(w1)]) {
        if (!b.adjacent(u1, w2) || !b.adjacent(u2, w1)) return false;
      }
    }
  }
  return true;
}

// Heuristic search for a strong ordering: sort each side by (first neighbor
// position, last neighbor position, id) against the other side's current
// order, repeat to a fixed point, then validate. Returns nothing when the
// result fails validation -- callers must treat that as "no ordering found",
// not "not a bipartite permutation graph".
inline std::optional<StrongOrdering> compute_strong_ordering(const BipartiteGraph& b) {
  StrongOrdering ord;
  ord.left.resize(static_cast<size_t>(b.nl()));
  ord.right.resize(static_cast<size_t>(b.nr()));
  for (int i = 0; i < b.nl(); ++i) ord.left[static_cast<size_t>(i)] = i;
  for (int i = 0; i < b.nr(); ++i) ord.right[static_cast<size_t>(i)] = i;

  std::vector<int> pos_l(static_cast<size_t>(b.nl()));
  std::vector<int> pos_r(static_cast<size_t>(b.nr()));
  auto refresh = [](std::vector<int>& pos, const std::vector<int>& order) {
    for (size_t i = 0; i < order.size(); ++i) pos[static_cast<size_t>(order[i])] = static_cast<int>(i);
  };
  refresh(pos_l, ord.left);
  refresh(pos_r, ord.right);

  auto resort = [](std::vector<int>& order, const std::vector<int>& other_pos,
                   auto&& neighbors_of) {
    std::vector<std::pair<std::pair<int, int>, int>> keyed;
    keyed.reserve(order.size());
    for (int v : order) {
      int lo = INT_MAX, hi = INT_MAX;
      for (int w : neighbors_of(v)) {
        lo = std::min(lo, other_pos[static_cast<size_t>(w)]);
        hi = std::max(hi == INT_MAX ? INT_MIN : hi, other_pos[static_cast<size_t>(w)]);
      }
      keyed.push_back({{lo, hi}, v});
    }
    std::sort(keyed.begin(), keyed.end());
    bool changed = false;
    for (size_t i = 0; i < order.size(); ++i) {
      if (order[i] != keyed[i].second) changed = true;
      order[i] = keyed[i].second;
    }
    return changed;
  };

  for (int round = 0; round < 100; ++round) {
    bool cl = resort(ord.left, pos_r, [&](int v) { return b.left_neighbors(v); });
    refresh(pos_l, ord.left);
    bool cr = resort(ord.right, pos_l, [&](int v) { return b.right_neighbors(v); });
    refresh(pos_r, ord.right);
    if (!cl && !cr) break;
  }
  if (!validate_strong_ordering(b, ord)) return std::nullopt;
  return ord;
}

// Block counts forced by the side sizes: with k_U left-centered and k_W
// right-centered stars, p = k_U + s*k_W and q = k_W + s*k_U, which inverts
// to k_U = (p - s*q)/(1 - s^2). Both must be non-negative integers.
inline std::optional<std::pair<int, int>> star_counts(int p, int q, int s) {
  if (s < 2) throw std::invalid_argument("star_counts requires s >= 2");
  const long long denom = 1LL - static_cast<long long>(s) * s;  // negative
  const long long nu = p - static_cast<long long>(s) * q;
  const long long nw = q - static_cast<long long>(s) * p;
  if (nu % denom != 0 || nw % denom != 0) return std::nullopt;
  const long long ku = nu / denom, kw = nw / denom;
  if (ku < 0 || kw < 0) return std::nullopt;
  return std::make_pair(static_cast<int>(ku), static_cast<int>(kw));
}

inline std::optional<std::pair<int, int>> star_counts(const BipartiteGraph& b,
                                                      int s) {
  return star_counts(b.nl(), b.nr(), s);
}

namespace detail {

// One connected component, with each side listed in strong-ordering order.
struct BipComponent {
  std::vector<int> u_ord;
  std::vector<int> w_ord;
};

inline std::vector<BipComponent> bipartite_components(const BipartiteGraph& b,
                                                      const StrongOrdering& ord) {
  const int nl = b.nl(), nr = b.nr();
  std::vector<int> comp_l(static_cast<size_t>(nl), -1);
  std::vector<int> comp_r(static_cast<size_t>(nr), -1);
  int count = 0;
  std::vector<int> stack;
  for (int start = 0; start < nl + nr; ++start) {
    bool is_left = start < nl;
    int v = is_left ? start : start - nl;
    auto& mark = is_left ? comp_l : comp_r;
    if (mark[static_cast<size_t>(v)] != -1) continue;
    mark[static_cast<size_t>(v)] = count;
    stack.push_back(start);
    while (!stack.empty()) {
      int cur = stack.back();
      stack.pop_back();
      if (cur < nl) {
        for (int w : b.left_neighbors(cur))
          if (comp_r[static_cast<size_t>(w)] == -1) {
            comp_r[static_cast<size_t>(w)] = count;
            stack.push_back(nl + w);
          }
      } else {
        for (int u : b.right_neighbors(cur - nl))
          if (comp_l[static_cast<size_t>(u)] == -1) {
            comp_l[static_cast<size_t>(u)] = count;
            stack.push_back(u);
          }
      }
    }
    ++count;
  }
  std::vector<BipComponent> comps(static_cast<size_t>(count));
  for (int u : ord.left) comps[static_cast<size_t>(comp_l[static_cast<size_t>(u)])].u_ord.push_back(u);
  for (int w : ord.right) comps[static_cast<size_t>(comp_r[static_cast<size_t>(w)])].w_ord.push_back(w);
  return comps;
}

// Prefix DP on one component. T(x,y) = the first x+s*y left and y+s*x right
// vertices admit a partition into x left-centered and y right-centered
// stars. Transitions add one star whose center is the newest vertex of one
// side (moves a, b) or two interleaved stars drawn from the last s+1
// vertices of both sides (move c).
inline bool solve_component(const BipartiteGraph& b, int s, const BipComponent& comp,
                            StarPartition& out) {
  const int p = static_cast<int>(comp.u_ord.size());
  const int q = static_cast<int>(comp.w_ord.size());
  auto counts = star_counts(p, q, s);
  if (!counts) return false;
  const int ku = counts->first, kw = counts->second;

  struct Cell {
    signed char move = -1;  // 0 base, 1 move a, 2 move b, 3 move c
    short cu = -1, cw = -1; // move c: window offsets of the two centers
  };
  std::vector<Cell> table(static_cast<size_t>((ku + 1) * (kw + 1)));
  auto cell = [&](int x, int y) -> Cell& {
    return table[static_cast<size_t>(x * (kw + 1) + y)];
  };
  auto u_at = [&](int i) { return comp.u_ord[static_cast<size_t>(i)]; };  // 0-based
  auto w_at = [&](int i) { return comp.w_ord[static_cast<size_t>(i)]; };

  cell(0, 0).move = 0;
  for (int x = 0; x <= ku; ++x) {
    for (int y = 0; y <= kw; ++y) {
      if (x == 0 && y == 0) continue;
      Cell& c = cell(x, y);
      const int ulen = x + s * y, wlen = y + s * x;

      // Move a: center w_{wlen}, leaves u_{ulen-s+1..ulen} (1-indexed).
      if (y >= 1 && cell(x, y - 1).move >= 0) {
        int center = w_at(wlen - 1);
        bool ok = true;
        for (int i = ulen - s; i < ulen && ok; ++i) ok = b.adjacent(u_at(i), center);
        if (ok) {
          c.move = 1;
          continue;
        }
      }
      // Move b: center u_{ulen}, leaves w_{wlen-s+1..wlen}.
      if (x >= 1 && cell(x - 1, y).move >= 0) {
        int center = u_at(ulen - 1);
        bool ok = true;
        for (int i = wlen - s; i < wlen && ok; ++i) ok = b.adjacent(center, w_at(i));
        if (ok) {
          c.move = 2;
          continue;
        }
      }
      // Move c: the last s+1 vertices of each side split into two disjoint
      // stars, one centered per side, each covering the whole opposite
      // window except the other center.
      if (x >= 1 && y >= 1 && cell(x - 1, y - 1).move >= 0) {
        for (int cu = 0; cu <= s && c.move < 0; ++cu) {
          int ucenter = u_at(ulen - 1 - s + cu);
          for (int cw = 0; cw <= s && c.move < 0; ++cw) {
            int wcenter = w_at(wlen - 1 - s + cw);
            bool ok = true;
            for (int i = 0; i <= s && ok; ++i) {
              if (i != cw) ok = b.adjacent(ucenter, w_at(wlen - 1 - s + i));
              if (ok && i != cu) ok = b.adjacent(u_at(ulen - 1 - s + i), wcenter);
            }
            if (ok) {
              c.move = 3;
              c.cu = static_cast<short>(cu);
              c.cw = static_cast<short>(cw);
            }
          }
        }
      }
    }
  }

  if (cell(ku, kw).move < 0) return false;

  // Walk back, emitting blocks in combined ids (right vertex w -> nl + w).
  const int nl = b.nl();
  int x = ku, y = kw;
  while (x != 0 || y != 0) {
    const Cell& c = cell(x, y);
    const int ulen = x + s * y, wlen = y + s * x;
    StarBlock blk;
    if (c.move == 1) {
      blk.center = nl + w_at(wlen - 1);
      for (int i = ulen - s; i < ulen; ++i) blk.leaves.push_back(u_at(i));
      out.blocks.push_back(blk);
      --y;
    } else if (c.move == 2) {
      blk.center = u_at(ulen - 1);
      for (int i = wlen - s; i < wlen; ++i) blk.leaves.push_back(nl + w_at(i));
      out.blocks.push_back(blk);
      --x;
    } else {
      StarBlock left_star, right_star;
      left_star.center = u_at(ulen - 1 - s + c.cu);
      right_star.center = nl + w_at(wlen - 1 - s + c.cw);
      for (int i = 0; i <= s; ++i) {
        if (i != c.cw) left_star.leaves.push_back(nl + w_at(wlen - 1 - s + i));
        if (i != c.cu) right_star.leaves.push_back(u_at(ulen - 1 - s + i));
      }
      out.blocks.push_back(left_star);
      out.blocks.push_back(right_star);
      --x;
      --y;
    }
  }
  return true;
}

}  // namespace detail

// s = 1: a K_{1,1} partition is a perfect matching.
inline std::optional<StarPartition> bipartite_matching_partition(const BipartiteGraph& b) {
  MatchingResult m = max_bipartite_matching(b);
  if (!m.is_perfect) return std::nullopt;
  StarPartition part;
  part.s = 1;
  for (int u = 0; u < b.nl(); ++u) {
    StarBlock blk;
    blk.center = u;
    blk.leaves.push_back(b.nl() + m.match_l[static_cast<size_t>(u)]);
    part.blocks.push_back(blk);
  }
  return part;
}

// Star partition given a validated strong ordering; solved independently on
// each connected component (the restriction of a strong ordering to a
// component is again strong).
inline std::optional<StarPartition> bipperm_partition(const BipartiteGraph& b, int s,
                                                      const StrongOrdering& ord) {
  if (s < 2) throw std::invalid_argument("bipperm_partition requires s >= 2");
  StarPartition out;
  out.s = s;
  for (const detail::BipComponent& comp : detail::bipartite_components(b, ord))
    if (!detail::solve_component(b, s, comp, out)) return std::nullopt;
  return out;
}

// Center counts of a bipartite partition: blocks centered on the left side
// versus on the right side. These must equal star_counts on yes instances.
inline std::pair<int, int> count_side_centers(const StarPartition& p, int nl) {
  int left = 0, right = 0;
  for (const StarBlock& blk : p.blocks) (blk.center < nl ? left : right) += 1;
  return {left, right};
}

}  // namespace starpart
