#pragma once

// Star partition on split graphs. For s = 2 the instance reduces to a
// perfect matching question on an auxiliary gadget graph; for other s the
// exact search takes over (small instances only).

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "starpart/graph.hpp"
#include "starpart/oracle.hpp"

namespace starpart {

// ------------------------------------------------ general matching

// Maximum matching in an arbitrary graph, with blossom shrinking; O(V^3).
// Returns the mate of every vertex, -1 when unmatched.
class GeneralMatching {
public:
  explicit GeneralMatching(int n) : n_(n), adj_(static_cast<size_t>(n)) {}

  void add_edge(int u, int v) {
    if (u < 0 || v < 0 || u >= n_ || v >= n_ || u == v)
      throw std::invalid_argument("bad matching edge");
    adj_[static_cast<size_t>(u)].push_back(v);
    adj_[static_cast<size_t>(v)].push_back(u);
  }

  std::vector<int> solve() {
    match_.assign(static_cast<size_t>(n_), -1);
    for (int v = 0; v < n_; ++v)
      if (match_[static_cast<size_t>(v)] < 0)
        for (int u : adj_[static_cast<size_t>(v)])
          if (match_[static_cast<size_t>(u)] < 0) {
            match_[static_cast<size_t>(v)] = u;
            match_[static_cast<size_t>(u)] = v;
            break;
          }
    for (int v = 0; v < n_; ++v)
      if (match_[static_cast<size_t>(v)] < 0) augment_from(v);
    return match_;
  }

private:
  int n_;
  std::vector<std::vector<int>> adj_;
  std::vector<int> match_, parent_, base_;
  std::vector<bool> used_, blossom_;

  int lowest_common_base(int a, int b) {
    std::vector<bool> seen(static_cast<size_t>(n_), false);
    while (true) {
      a = base_[static_cast<size_t>(a)];
      seen[static_cast<size_t>(a)] = true;
      if (match_[static_cast<size_t>(a)] < 0) break;
      a = parent_[static_cast<size_t>(match_[static_cast<size_t>(a)])];
    }
    while (true) {
      b = base_[static_cast<size_t>(b)];
      if (seen[static_cast<size_t>(b)]) return b;
      b = parent_[static_cast<size_t>(match_[static_cast<size_t>(b)])];
    }
  }

  void mark_path(int v, int stop, int child) {
    while (base_[static_cast<size_t>(v)] != stop) {
      int mv = match_[static_cast<size_t>(v)];
      blossom_[static_cast<size_t>(base_[static_cast<size_t>(v)])] = true;
      blossom_[static_cast<size_t>(base_[static_cast<size_t>(mv)])] = true;
      parent_[static_cast<size_t>(v)] = child;
      child = mv;
      v = parent_[static_cast<size_t>(mv)];
    }
  }

  // BFS from an exposed root through alternating paths, contracting odd
  // cycles onto their base; returns an exposed vertex ending an augmenting
  // path, or -1.
  int find_path(int root) {
    used_.assign(static_cast<size_t>(n_), false);
    parent_.assign(static_cast<size_t>(n_), -1);
    base_.resize(static_cast<size_t>(n_));
    for (int i = 0; i < n_; ++i) base_[static_cast<size_t>(i)] = i;
    used_[static_cast<size_t>(root)] = true;
    std::vector<int> queue{root};
    for (size_t qi = 0; qi < queue.size(); ++qi) {
      int v = queue[qi];
      for (int to : adj_[static_cast<size_t>(v)]) {
        if (base_[static_cast<size_t>(v)] == base_[static_cast<size_t>(to)] ||
            match_[static_cast<size_t>(v)] == to)
          continue;
        if (to == root ||
            (match_[static_cast<size_t>(to)] >= 0 &&
             parent_[static_cast<size_t>(match_[static_cast<size_t>(to)])] >= 0)) {
          int stop = lowest_common_base(v, to);
          blossom_.assign(static_cast<size_t>(n_), false);
          mark_path(v, stop, to);
          mark_path(to, stop, v);
          for (int i = 0; i < n_; ++i)
            if (blossom_[static_cast<size_t>(base_[static_cast<size_t>(i)])]) {
              base_[static_cast<size_t>(i)] = stop;
              if (!used_[static_cast<size_t>(i)]) {
                used_[static_cast<size_t>(i)] = true;
                queue.push_back(i);
              }
            }
        } else if (parent_[static_cast<size_t>(to)] < 0) {
          parent_[static_cast<size_t>(to)] = v;
          if (match_[static_cast<size_t>(to)] < 0) return to;
          int mto = match_[static_cast<size_t>(to)];
          used_[static_cast<size_t>(mto)] = true;
          queue.push_back(mto);
        }
      }
    }
    return -1;
  }

  void augment_from(int root) {
    int v = find_path(root);
    while (v >= 0) {
      int pv = parent_[static_cast<size_t>(v)];
      int next = match_[static_cast<size_t>(pv)];
      match_[static_cast<size_t>(v)] = pv;
      match_[static_cast<size_t>(pv)] = v;
      v = next;
    }
  }
};

// ------------------------------------------------ split decomposition

struct SplitDecomposition {
  std::vector<Vertex> clique;
  std::vector<Vertex> independent;
};

// Degree-sequence split test: with vertices sorted by decreasing degree,
// the largest prefix whose i-th vertex has degree >= i-1 is the clique
// candidate; the split is validated directly.
inline std::optional<SplitDecomposition> split_decompose(const Graph& g) {
  const int n = g.n();
  std::vector<Vertex> order(static_cast<size_t>(n));
  for (int v = 0; v < n; ++v) order[static_cast<size_t>(v)] = v;
  std::sort(order.begin(), order.end(), [&](Vertex a, Vertex b) {
    if (g.degree(a) != g.degree(b)) return g.degree(a) > g.degree(b);
    return a < b;
  });
  int cut = 0;
  while (cut < n && g.degree(order[static_cast<size_t>(cut)]) >= cut) ++cut;

  SplitDecomposition dec;
  for (int i = 0; i < n; ++i)
    (i < cut ? dec.clique : dec.independent).push_back(order[static_cast<size_t>(i)]);
  std::sort(dec.clique.begin(), dec.clique.end());
  std::sort(dec.independent.begin(), dec.independent.end());

  for (size_t i = 0; i < dec.clique.size(); ++i)
    for (size_t j = i + 1; j < dec.clique.size(); ++j)
      if (!g.adjacent(dec.clique[i], dec.clique[j])) return std::nullopt;
  for (size_t i = 0; i < dec.independent.size(); ++i)
    for (size_t j = i + 1; j < dec.independent.size(); ++j)
      if (g.adjacent(dec.independent[i], dec.independent[j])) return std::nullopt;
  return dec;
}

// ------------------------------------------------ the s = 2 gadget

// Matching gadget for P3-partition of a split graph with parts (C, I).
// An auxiliary vertex z adjacent to all of C absorbs the slack; writing
// (2|C| - |I|)/3 = 2q + r with r in {0,1}:
//   - one port vertex per I-vertex,
//   - per v in C, ports v_e for each edge from v to I or to z, partner
//     vertices v'_1..v'_d joined completely to the ports, and a pair edge
//     {v'_1, v'_2} when d >= 2,
//   - for z, ports z_v for each v in C, |C| - r partners joined completely,
//     and q pair edges on consecutive partners,
//   - connection edges from each port to the I-vertex or z-port of its edge.
// A perfect matching exists iff the graph has a P3 partition; ports matched
// across gadget boundaries project to the selected factor edges.
struct SplitGadget {
  int n = 0;
  std::vector<std::pair<int, int>> edges;
  int q = 0, r = 0;
  std::vector<int> i_port;                       // per I index
  std::vector<std::vector<int>> c_ports;         // per C index, one per edge
  std::vector<std::vector<int>> c_port_target;   // I index, or -1 for the z edge
  std::vector<int> z_ports;                      // per C index
  std::vector<std::string> label;                // per gadget vertex: provenance
};

inline std::optional<SplitGadget> build_split_gadget(const Graph& g,
                                                     const SplitDecomposition& dec) {
  const int nc = static_cast<int>(dec.clique.size());
  const int ni = static_cast<int>(dec.independent.size());
  if (2 * nc - ni < 0) return std::nullopt;  // clique capacity can't reach
  if ((2 * nc - ni) % 3 != 0)
    throw std::invalid_argument("gadget needs 3 | n, check divisibility first");
  const int slack = (2 * nc - ni) / 3;

  std::vector<int> ind_index(static_cast<size_t>(g.n()), -1);
  for (int i = 0; i < ni; ++i)
    ind_index[static_cast<size_t>(dec.independent[static_cast<size_t>(i)])] = i;

  SplitGadget gd;
  gd.q = slack / 2;
  gd.r = slack % 2;
  int next = 0;
  auto take = [&](const std::string& label) {
    gd.label.push_back(label);
    return next++;
  };
  gd.i_port.resize(static_cast<size_t>(ni));
  for (int i = 0; i < ni; ++i)
    gd.i_port[static_cast<size_t>(i)] =
        take("independent " + std::to_string(dec.independent[static_cast<size_t>(i)]));

  gd.c_ports.resize(static_cast<size_t>(nc));
  gd.c_port_target.resize(static_cast<size_t>(nc));
  gd.z_ports.resize(static_cast<size_t>(nc));
  for (int ci = 0; ci < nc; ++ci) {
    Vertex v = dec.clique[static_cast<size_t>(ci)];
    std::vector<int> targets;
    for (Vertex w : g.neighbors(v))
      if (ind_index[static_cast<size_t>(w)] >= 0)
        targets.push_back(ind_index[static_cast<size_t>(w)]);
    targets.push_back(-1);  // the edge to z, always last
    const int d = static_cast<int>(targets.size());
    std::vector<int> ports(static_cast<size_t>(d)), partners(static_cast<size_t>(d));
    for (int j = 0; j < d; ++j) {
      int t = targets[static_cast<size_t>(j)];
      std::string other =
          t >= 0 ? std::to_string(dec.independent[static_cast<size_t>(t)]) : "z";
      ports[static_cast<size_t>(j)] =
          take("port of clique " + std::to_string(v) + ", edge to " + other);
    }
    for (int j = 0; j < d; ++j)
      partners[static_cast<size_t>(j)] =
          take("partner " + std::to_string(j + 1) + " of clique " + std::to_string(v));
    for (int j = 0; j < d; ++j)
      for (int l = 0; l < d; ++l)
        gd.edges.push_back({ports[static_cast<size_t>(j)], partners[static_cast<size_t>(l)]});
    if (d >= 2) gd.edges.push_back({partners[0], partners[1]});
    for (int j = 0; j < d; ++j) {
      int t = targets[static_cast<size_t>(j)];
      if (t >= 0)
        gd.edges.push_back({gd.i_port[static_cast<size_t>(t)], ports[static_cast<size_t>(j)]});
    }
    gd.c_ports[static_cast<size_t>(ci)] = std::move(ports);
    gd.c_port_target[static_cast<size_t>(ci)] = std::move(targets);
  }

  for (int ci = 0; ci < nc; ++ci)
    gd.z_ports[static_cast<size_t>(ci)] =
        take("port of z, edge to clique " +
             std::to_string(dec.clique[static_cast<size_t>(ci)]));
  std::vector<int> z_partners(static_cast<size_t>(nc - gd.r));
  for (int j = 0; j < nc - gd.r; ++j)
    z_partners[static_cast<size_t>(j)] = take("partner " + std::to_string(j + 1) + " of z");
  for (int ci = 0; ci < nc; ++ci)
    for (int j = 0; j < nc - gd.r; ++j)
      gd.edges.push_back({gd.z_ports[static_cast<size_t>(ci)], z_partners[static_cast<size_t>(j)]});
  for (int i = 0; i < gd.q; ++i)
    gd.edges.push_back({z_partners[static_cast<size_t>(2 * i)],
                        z_partners[static_cast<size_t>(2 * i + 1)]});
  // Each z port also connects to the z edge's port in its C gadget.
  for (int ci = 0; ci < nc; ++ci)
    gd.edges.push_back({gd.z_ports[static_cast<size_t>(ci)],
                        gd.c_ports[static_cast<size_t>(ci)].back()});

  gd.n = next;
  return gd;
}

// The factor selected by a perfect matching: for each C vertex, which
// I-neighbours it covers and whether its z edge is used.
struct FactorEntry {
  std::vector<int> covered;  // I indices
  bool uses_z = false;
};

// P3 partition of a split graph from its decomposition. Returns nothing on
// no-instances.
inline std::optional<StarPartition> p3_split(const Graph& g,
                                             const SplitDecomposition& dec) {
  if (g.n() % 3 != 0) return std::nullopt;
  auto gadget = build_split_gadget(g, dec);
  if (!gadget) return std::nullopt;

  GeneralMatching gm(gadget->n);
  for (const auto& [u, v] : gadget->edges) gm.add_edge(u, v);
  std::vector<int> mate = gm.solve();
  for (int v = 0; v < gadget->n; ++v)
    if (mate[static_cast<size_t>(v)] < 0) return std::nullopt;

  const int nc = static_cast<int>(dec.clique.size());
  std::vector<FactorEntry> factor(static_cast<size_t>(nc));
  for (int ci = 0; ci < nc; ++ci) {
    const auto& ports = gadget->c_ports[static_cast<size_t>(ci)];
    const auto& targets = gadget->c_port_target[static_cast<size_t>(ci)];
    int external = 0;
    for (size_t j = 0; j < ports.size(); ++j) {
      int mate_of_port = mate[static_cast<size_t>(ports[j])];
      bool is_external =
          targets[j] >= 0
              ? mate_of_port == gadget->i_port[static_cast<size_t>(targets[j])]
              : mate_of_port == gadget->z_ports[static_cast<size_t>(ci)];
      if (!is_external) continue;
      ++external;
      if (targets[j] >= 0)
        factor[static_cast<size_t>(ci)].covered.push_back(targets[j]);
      else
        factor[static_cast<size_t>(ci)].uses_z = true;
    }
    if (external != 0 && external != 2)
      throw std::logic_error("gadget matched an odd number of ports externally");
  }

  // Assemble blocks: a C vertex covering two I vertices is a full block; one
  // covering a single I vertex borrows an unused C vertex; unused C vertices
  // left over close ranks in triples.
  std::vector<Vertex> free_c;
  std::vector<std::pair<Vertex, Vertex>> half;  // (C vertex, its I leaf)
  StarPartition part;
  part.s = 2;
  for (int ci = 0; ci < nc; ++ci) {
    const FactorEntry& fe = factor[static_cast<size_t>(ci)];
    Vertex v = dec.clique[static_cast<size_t>(ci)];
    if (fe.covered.size() == 2) {
      StarBlock blk;
      blk.center = v;
      blk.leaves = {dec.independent[static_cast<size_t>(fe.covered[0])],
                    dec.independent[static_cast<size_t>(fe.covered[1])]};
      part.blocks.push_back(blk);
    } else if (fe.covered.size() == 1) {
      half.push_back({v, dec.independent[static_cast<size_t>(fe.covered[0])]});
    } else if (fe.uses_z) {
      throw std::logic_error("z edge selected without an I edge");
    } else {
      free_c.push_back(v);
    }
  }
  if (half.size() > free_c.size() || (free_c.size() - half.size()) % 3 != 0)
    throw std::logic_error("factor violates the assembly counts");
  size_t fi = 0;
  for (const auto& [v, leaf] : half) {
    StarBlock blk;
    blk.center = v;
    blk.leaves = {leaf, free_c[fi++]};
    part.blocks.push_back(blk);
  }
  for (; fi < free_c.size(); fi += 3) {
    StarBlock blk;
    blk.center = free_c[fi];
    blk.leaves = {free_c[fi + 1], free_c[fi + 2]};
    part.blocks.push_back(blk);
  }
  return part;
}

// ------------------------------------------------ solver entry point

struct SplitSolveResult {
  enum class Status { yes, no, refused } status = Status::refused;
  StarPartition partition;
  std::string refusal;
};

constexpr int star_split_size_limit = 60;

// Star Partition on split graphs. s = 2 goes through the gadget matching;
// every other s falls back to the exact search, bounded to keep the search
// honest about its exponential nature (the problem is NP-hard for s >= 3,
// and s = 1 would need general perfect matching on the whole graph).
// Throws std::invalid_argument if the graph is not split.
inline SplitSolveResult star_split(const Graph& g, int s,
                                   int limit = star_split_size_limit,
                                   long long budget = oracle_default_budget) {
  auto dec = split_decompose(g);
  if (!dec) throw std::invalid_argument("graph is not a split graph");

  SplitSolveResult out;
  if (s == 2) {
    auto part = p3_split(g, *dec);
    if (part) {
      out.status = SplitSolveResult::Status::yes;
      out.partition = std::move(*part);
    } else {
      out.status = SplitSolveResult::Status::no;
    }
    return out;
  }

  if (g.n() > limit) {
    out.status = SplitSolveResult::Status::refused;
    out.refusal = "exact search is limited to " + std::to_string(limit) + " vertices";
    return out;
  }
  OracleResult res = oracle_partition(g, s, budget);
  if (res.status == OracleStatus::budget_exceeded) {
    out.status = SplitSolveResult::Status::refused;
    out.refusal = "exact search exceeded its expansion budget";
  } else if (res.status == OracleStatus::yes) {
    out.status = SplitSolveResult::Status::yes;
    out.partition = std::move(res.partition);
  } else {
    out.status = SplitSolveResult::Status::no;
  }
  return out;
}

}  // namespace starpart
