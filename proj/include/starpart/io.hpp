#pragma once

// Parsers and writers for the on-disk instance formats. All parsers throw
// ParseError with a line-oriented message; callers map that to a usage
// failure.
//
//   graph        "n m" then m lines "u v"           (0 <= u < v < n)
//   partition    one block per line "center: l1 l2 ... ls"
//   intervals    "n" then n lines "id birth death"  (decimal coordinates)
//   bipartite    "nl nr m", m lines "u w", then optionally a line "order:"
//                followed by a permutation of the left ids and one of the
//                right ids (one line each)
//   exact cover  "u s m", a line of u element names, m lines of s names
//   matching-3d  "q t", three lines of q names (one per part), t lines
//                "r b y"
//
// Writers emit exactly what the parsers accept.

#include <algorithm>
#include <array>
#include <climits>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "starpart/bipperm.hpp"
#include "starpart/graph.hpp"
#include "starpart/interval.hpp"

namespace starpart {

struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

namespace detail {

// Splits into whitespace-separated tokens; blank and '#'-comment lines are
// skipped by next_tokens.
inline std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream ss(line);
  std::string tok;
  while (ss >> tok) out.push_back(tok);
  return out;
}

inline std::optional<std::vector<std::string>> next_tokens(std::istream& in) {
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line[0] == '#') continue;
    auto toks = tokenize(line);
    if (!toks.empty()) return toks;
  }
  return std::nullopt;
}

inline long long to_int(const std::string& tok, const char* what) {
  try {
    size_t used = 0;
    long long v = std::stoll(tok, &used);
    if (used != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    throw ParseError(std::string("expected an integer for ") + what + ", got '" +
                     tok + "'");
  }
}

inline std::vector<std::string> expect_tokens(std::istream& in, size_t count,
                                              const char* what) {
  auto toks = next_tokens(in);
  if (!toks) throw ParseError(std::string("unexpected end of input, expected ") + what);
  if (count != 0 && toks->size() != count)
    throw ParseError(std::string("expected ") + std::to_string(count) +
                     " fields for " + what + ", got " + std::to_string(toks->size()));
  return *toks;
}

}  // namespace detail

// -------------------------------------------------------------- graph

inline Graph parse_graph(std::istream& in) {
  auto head = detail::expect_tokens(in, 2, "graph header 'n m'");
  long long n = detail::to_int(head[0], "vertex count");
  long long m = detail::to_int(head[1], "edge count");
  if (n < 0 || m < 0) throw ParseError("graph header counts must be non-negative");
  Graph g(static_cast<int>(n));
  for (long long i = 0; i < m; ++i) {
    auto tok = detail::expect_tokens(in, 2, "edge 'u v'");
    long long u = detail::to_int(tok[0], "edge endpoint");
    long long v = detail::to_int(tok[1], "edge endpoint");
    if (u < 0 || v < 0 || u >= n || v >= n || u == v)
      throw ParseError("edge (" + tok[0] + ", " + tok[1] + ") is out of range");
    g.add_edge(static_cast<int>(u), static_cast<int>(v));
  }
  try {
    g.finalize();
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
  return g;
}

inline void write_graph(std::ostream& out, const Graph& g) {
  out << g.n() << ' ' << g.edges().size() << '\n';
  for (const auto& [u, v] : g.edges()) out << u << ' ' << v << '\n';
}

// ---------------------------------------------------------- partition

inline StarPartition parse_partition(std::istream& in) {
  StarPartition p;
  p.s = -1;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line[0] == '#') continue;
    auto colon = line.find(':');
    if (colon == std::string::npos) {
      if (detail::tokenize(line).empty()) continue;
      throw ParseError("partition line is missing ':': " + line);
    }
    auto head = detail::tokenize(line.substr(0, colon));
    auto tail = detail::tokenize(line.substr(colon + 1));
    if (head.size() != 1)
      throw ParseError("partition line needs exactly one center: " + line);
    if (tail.empty()) throw ParseError("partition block has no leaves: " + line);
    StarBlock blk;
    blk.center = static_cast<int>(detail::to_int(head[0], "center"));
    for (const auto& t : tail)
      blk.leaves.push_back(static_cast<int>(detail::to_int(t, "leaf")));
    if (p.s == -1)
      p.s = static_cast<int>(blk.leaves.size());
    else if (p.s != static_cast<int>(blk.leaves.size()))
      throw ParseError("partition blocks disagree on the number of leaves");
    p.blocks.push_back(std::move(blk));
  }
  if (p.s == -1) p.s = 0;  // empty partition
  return p;
}

inline void write_partition(std::ostream& out, const StarPartition& p) {
  for (const StarBlock& blk : p.blocks) {
    out << blk.center << ':';
    for (Vertex v : blk.leaves) out << ' ' << v;
    out << '\n';
  }
}

// ---------------------------------------------------------- intervals

inline std::vector<RawInterval> parse_intervals(std::istream& in) {
  auto head = detail::expect_tokens(in, 1, "interval count");
  long long n = detail::to_int(head[0], "interval count");
  if (n < 0) throw ParseError("interval count must be non-negative");
  std::vector<RawInterval> out;
  out.reserve(static_cast<size_t>(n));
  for (long long i = 0; i < n; ++i) {
    auto tok = detail::expect_tokens(in, 3, "interval 'id birth death'");
    RawInterval r;
    r.id = static_cast<int>(detail::to_int(tok[0], "interval id"));
    try {
      r.birth = Coord::parse(tok[1]);
      r.death = Coord::parse(tok[2]);
    } catch (const std::invalid_argument& e) {
      throw ParseError(e.what());
    }
    out.push_back(r);
  }
  return out;
}

inline std::string coord_to_string(const Coord& c) {
  if (c.den == 1) return std::to_string(c.num);
  std::string digits = std::to_string(c.num < 0 ? -c.num : c.num);
  size_t frac = std::to_string(c.den).size() - 1;  // den is a power of ten
  if (digits.size() <= frac) digits.insert(0, frac + 1 - digits.size(), '0');
  digits.insert(digits.size() - frac, ".");
  return (c.num < 0 ? "-" : "") + digits;
}

inline void write_intervals(std::ostream& out, const std::vector<RawInterval>& iv) {
  out << iv.size() << '\n';
  for (const RawInterval& r : iv)
    out << r.id << ' ' << coord_to_string(r.birth) << ' ' << coord_to_string(r.death)
        << '\n';
}

// ---------------------------------------------------------- bipartite

struct BipartiteInstance {
  BipartiteGraph graph{0, 0};
  std::optional<StrongOrdering> order;
};

inline BipartiteInstance parse_bipartite(std::istream& in) {
  auto head = detail::expect_tokens(in, 3, "bipartite header 'nl nr m'");
  long long nl = detail::to_int(head[0], "left count");
  long long nr = detail::to_int(head[1], "right count");
  long long m = detail::to_int(head[2], "edge count");
  if (nl < 0 || nr < 0 || m < 0)
    throw ParseError("bipartite header counts must be non-negative");
  BipartiteInstance inst;
  inst.graph = BipartiteGraph(static_cast<int>(nl), static_cast<int>(nr));
  for (long long i = 0; i < m; ++i) {
    auto tok = detail::expect_tokens(in, 2, "edge 'u w'");
    long long u = detail::to_int(tok[0], "left endpoint");
    long long w = detail::to_int(tok[1], "right endpoint");
    if (u < 0 || u >= nl || w < 0 || w >= nr)
      throw ParseError("edge (" + tok[0] + ", " + tok[1] + ") is out of range");
    inst.graph.add_edge(static_cast<int>(u), static_cast<int>(w));
  }
  try {
    inst.graph.finalize();
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
  auto marker = detail::next_tokens(in);
  if (marker) {
    if (marker->size() != 1 || (*marker)[0] != "order:")
      throw ParseError("expected 'order:' section, got something else");
    StrongOrdering ord;
    if (nl > 0) {
      auto left = detail::expect_tokens(in, static_cast<size_t>(nl), "left order");
      for (const auto& t : left)
        ord.left.push_back(static_cast<int>(detail::to_int(t, "left order entry")));
    }
    if (nr > 0) {
      auto right = detail::expect_tokens(in, static_cast<size_t>(nr), "right order");
      for (const auto& t : right)
        ord.right.push_back(static_cast<int>(detail::to_int(t, "right order entry")));
    }
    inst.order = std::move(ord);
  }
  return inst;
}

inline void write_bipartite(std::ostream& out, const BipartiteGraph& g,
                            const std::optional<StrongOrdering>& order) {
  out << g.nl() << ' ' << g.nr() << ' ' << g.edges().size() << '\n';
  for (const auto& [u, w] : g.edges()) out << u << ' ' << w << '\n';
  if (order) {
    out << "order:\n";
    for (size_t i = 0; i < order->left.size(); ++i)
      out << order->left[i] << (i + 1 == order->left.size() ? "\n" : " ");
    if (order->left.empty()) out << '\n';
    for (size_t i = 0; i < order->right.size(); ++i)
      out << order->right[i] << (i + 1 == order->right.size() ? "\n" : " ");
    if (order->right.empty()) out << '\n';
  }
}

// -------------------------------------------------- exact cover by s-sets

struct ExactCoverInstance {
  std::vector<long long> universe;             // element names, in file order
  int set_size = 0;                            // s
  std::vector<std::vector<int>> sets;          // element indices into universe
};

inline ExactCoverInstance parse_exact_cover(std::istream& in) {
  auto head = detail::expect_tokens(in, 3, "header 'u s m'");
  long long u = detail::to_int(head[0], "universe size");
  long long s = detail::to_int(head[1], "set size");
  long long m = detail::to_int(head[2], "set count");
  if (u < 0 || s < 1 || m < 0) throw ParseError("bad exact cover header");
  ExactCoverInstance inst;
  inst.set_size = static_cast<int>(s);
  auto universe = detail::expect_tokens(in, static_cast<size_t>(u), "universe elements");
  std::vector<std::pair<long long, int>> index;
  for (const auto& t : universe) {
    long long name = detail::to_int(t, "universe element");
    inst.universe.push_back(name);
    index.push_back({name, static_cast<int>(index.size())});
  }
  std::sort(index.begin(), index.end());
  for (size_t i = 1; i < index.size(); ++i)
    if (index[i].first == index[i - 1].first)
      throw ParseError("duplicate universe element " + std::to_string(index[i].first));
  auto lookup = [&](long long name) {
    auto it = std::lower_bound(index.begin(), index.end(),
                               std::make_pair(name, INT_MIN));
    if (it == index.end() || it->first != name)
      throw ParseError("set references unknown element " + std::to_string(name));
    return it->second;
  };
  for (long long i = 0; i < m; ++i) {
    auto tok = detail::expect_tokens(in, static_cast<size_t>(s), "set elements");
    std::vector<int> set;
    for (const auto& t : tok) set.push_back(lookup(detail::to_int(t, "set element")));
    std::sort(set.begin(), set.end());
    for (size_t j = 1; j < set.size(); ++j)
      if (set[j] == set[j - 1]) throw ParseError("set repeats an element");
    inst.sets.push_back(std::move(set));
  }
  return inst;
}

inline void write_exact_cover(std::ostream& out, const ExactCoverInstance& inst) {
  out << inst.universe.size() << ' ' << inst.set_size << ' ' << inst.sets.size()
      << '\n';
  for (size_t i = 0; i < inst.universe.size(); ++i)
    out << inst.universe[i] << (i + 1 == inst.universe.size() ? "\n" : " ");
  if (inst.universe.empty()) out << '\n';
  for (const auto& set : inst.sets)
    for (size_t i = 0; i < set.size(); ++i)
      out << inst.universe[static_cast<size_t>(set[i])]
          << (i + 1 == set.size() ? "\n" : " ");
}

// ------------------------------------------------- three-way matching

struct ThreeWayMatchingInstance {
  int q = 0;
  std::vector<std::string> names[3];          // the three parts, in file order
  std::vector<std::array<int, 3>> triples;    // indices into each part
};

inline ThreeWayMatchingInstance parse_three_way(std::istream& in) {
  auto head = detail::expect_tokens(in, 2, "header 'q t'");
  long long q = detail::to_int(head[0], "part size");
  long long t = detail::to_int(head[1], "triple count");
  if (q < 0 || t < 0) throw ParseError("bad matching header");
  ThreeWayMatchingInstance inst;
  inst.q = static_cast<int>(q);
  for (int part = 0; part < 3; ++part) {
    auto toks = detail::expect_tokens(in, static_cast<size_t>(q), "part names");
    for (const auto& name : toks) {
      for (const auto& prev : inst.names[part])
        if (prev == name) throw ParseError("duplicate name " + name + " in a part");
      inst.names[part].push_back(name);
    }
  }
  auto lookup = [&](int part, const std::string& name) {
    for (size_t i = 0; i < inst.names[part].size(); ++i)
      if (inst.names[part][i] == name) return static_cast<int>(i);
    throw ParseError("triple references unknown name " + name);
  };
  for (long long i = 0; i < t; ++i) {
    auto tok = detail::expect_tokens(in, 3, "triple 'r b y'");
    inst.triples.push_back(
        {lookup(0, tok[0]), lookup(1, tok[1]), lookup(2, tok[2])});
  }
  return inst;
}

inline void write_three_way(std::ostream& out, const ThreeWayMatchingInstance& inst) {
  out << inst.q << ' ' << inst.triples.size() << '\n';
  for (int part = 0; part < 3; ++part) {
    for (size_t i = 0; i < inst.names[part].size(); ++i)
      out << inst.names[part][i] << (i + 1 == inst.names[part].size() ? "\n" : " ");
    if (inst.names[part].empty()) out << '\n';
  }
  for (const auto& tr : inst.triples)
    out << inst.names[0][static_cast<size_t>(tr[0])] << ' '
        << inst.names[1][static_cast<size_t>(tr[1])] << ' '
        << inst.names[2][static_cast<size_t>(tr[2])] << '\n';
}

}  // namespace starpart
