#pragma once

// Star partition on unit interval graphs (greedy over a birth-order
// bicompatible elimination order, any s) and P3-partition on general
// interval graphs (handle-list sweep with integrated partition
// reconstruction, s = 2).

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "starpart/graph.hpp"

namespace starpart {

// Exact rational coordinate: value = num / den with den a power of ten.
// Keeps tie decisions in normalize_events exact (floating point would blur
// touching endpoints).
struct Coord {
  std::int64_t num = 0;
  std::int64_t den = 1;

  Coord() = default;
  Coord(std::int64_t whole) : num(whole), den(1) {}
  Coord(std::int64_t n, std::int64_t d) : num(n), den(d) {
    if (d <= 0) throw std::invalid_argument("coordinate denominator must be positive");
  }

  static Coord parse(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("empty coordinate");
    size_t i = 0;
    bool negative = false;
    if (text[0] == '+' || text[0] == '-') {
      negative = text[0] == '-';
      i = 1;
    }
    std::int64_t num = 0, den = 1;
    bool after_dot = false, any_digit = false;
    for (; i < text.size(); ++i) {
      char c = text[i];
      if (c == '.') {
        if (after_dot) throw std::invalid_argument("malformed coordinate: " + text);
        after_dot = true;
        continue;
      }
      if (c < '0' || c > '9')
        throw std::invalid_argument("malformed coordinate: " + text);
      if (num > (INT64_MAX - 9) / 10)
        throw std::invalid_argument("coordinate too large: " + text);
      num = num * 10 + (c - '0');
      any_digit = true;
      if (after_dot) {
        if (den > INT64_MAX / 10)
          throw std::invalid_argument("coordinate too precise: " + text);
        den *= 10;
      }
    }
    if (!any_digit) throw std::invalid_argument("malformed coordinate: " + text);
    return Coord(negative ? -num : num, den);
  }

  friend bool operator<(const Coord& a, const Coord& b) {
    return static_cast<__int128>(a.num) * b.den < static_cast<__int128>(b.num) * a.den;
  }
  friend bool operator==(const Coord& a, const Coord& b) {
    return static_cast<__int128>(a.num) * b.den == static_cast<__int128>(b.num) * a.den;
  }
  friend bool operator<=(const Coord& a, const Coord& b) { return !(b < a); }
};

struct RawInterval {
  int id = 0;
  Coord birth;
  Coord death;
};

// Normalized interval: the 2n event positions are exactly {1,...,2n}.
struct Interval {
  int id = 0;
  int birth = 0;
  int death = 0;
};

struct IntervalRep {
  int n = 0;
  std::vector<Interval> intervals;  // indexed by id
};

// Assigns distinct positions 1..2n preserving the intersection graph of
// right-open intervals. Ties at equal raw coordinate: deaths before births
// (touching intervals do not intersect), same-kind ties by id.
inline IntervalRep normalize_events(const std::vector<RawInterval>& raw) {
  const int n = static_cast<int>(raw.size());
  std::vector<bool> seen(static_cast<size_t>(n), false);
  for (const RawInterval& r : raw) {
    if (r.id < 0 || r.id >= n) throw std::invalid_argument("interval id out of range");
    if (seen[static_cast<size_t>(r.id)]) throw std::invalid_argument("duplicate interval id");
    seen[static_cast<size_t>(r.id)] = true;
    if (!(r.birth < r.death))
      throw std::invalid_argument("interval " + std::to_string(r.id) +
                                  " has birth >= death");
  }

  struct Event {
    Coord at;
    bool is_birth;
    int id;
  };
  std::vector<Event> events;
  events.reserve(static_cast<size_t>(2 * n));
  for (const RawInterval& r : raw) {
    events.push_back({r.birth, true, r.id});
    events.push_back({r.death, false, r.id});
  }
  std::sort(events.begin(), events.end(), [](const Event& a, const Event& b) {
    if (!(a.at == b.at)) return a.at < b.at;
    if (a.is_birth != b.is_birth) return !a.is_birth;  // deaths first
    return a.id < b.id;
  });

  IntervalRep rep;
  rep.n = n;
  rep.intervals.resize(static_cast<size_t>(n));
  for (int pos = 0; pos < 2 * n; ++pos) {
    const Event& e = events[static_cast<size_t>(pos)];
    Interval& iv = rep.intervals[static_cast<size_t>(e.id)];
    iv.id = e.id;
    (e.is_birth ? iv.birth : iv.death) = pos + 1;
  }
  return rep;
}

// True when every interval has the same length. Lengths are exact rationals
// with power-of-ten denominators, so stripping common factors of ten yields a
// canonical form that can be compared fieldwise without overflow.
inline bool equal_interval_lengths(const std::vector<RawInterval>& raw) {
  auto canonical_length = [](const RawInterval& r) {
    const std::int64_t den = std::max(r.birth.den, r.death.den);
    __int128 num = static_cast<__int128>(r.death.num) * (den / r.death.den) -
                   static_cast<__int128>(r.birth.num) * (den / r.birth.den);
    __int128 d = den;
    while (d % 10 == 0 && num % 10 == 0) {
      d /= 10;
      num /= 10;
    }
    return std::make_pair(num, d);
  };
  for (size_t i = 1; i < raw.size(); ++i)
    if (canonical_length(raw[i]) != canonical_length(raw[0])) return false;
  return true;
}

inline bool intervals_overlap(const Interval& a, const Interval& b) {
  return a.birth < b.death && b.birth < a.death;
}

// Sorted multiset of interval handles keyed by (death ascending, id); the
// "lowest" handles -- the intervals ending first -- sit at begin(), so the
// sweep always consumes the most urgent handles first.
class HandleList {
public:
  int size() const { return static_cast<int>(set_.size()); }
  bool contains(int death, int id) const {
    return set_.count({death, id}) > 0;
  }
  void insert_copy(int death, int id) { set_.insert({death, id}); }
  void insert_pair(int death, int id) {
    set_.insert({death, id});
    set_.insert({death, id});
  }
  void erase_one(int death, int id) {
    auto it = set_.find({death, id});
    if (it != set_.end()) set_.erase(it);
  }
  std::array<std::pair<int, int>, 3> lowest_three() const {
    auto it = set_.begin();
    std::array<std::pair<int, int>, 3> out;
    for (int i = 0; i < 3; ++i, ++it) out[static_cast<size_t>(i)] = *it;
    return out;
  }
  void pop_lowest_three() {
    for (int i = 0; i < 3; ++i) set_.erase(set_.begin());
  }
  int lowest_death() const { return set_.begin()->first; }
  bool empty() const { return set_.empty(); }
  std::vector<int> deaths_ascending() const {
    std::vector<int> out;
    out.reserve(set_.size());
    for (const auto& [death, id] : set_) out.push_back(death);
    return out;
  }

private:
  std::multiset<std::pair<int, int>> set_;
};

// Comparison of handle lists read top-down (largest death first): Q is at
// most Q' if Q is no longer and elementwise ends no later.
inline bool lessgood(const HandleList& q, const HandleList& qp) {
  std::vector<int> a = q.deaths_ascending();
  std::vector<int> b = qp.deaths_ascending();
  if (a.size() > b.size()) return false;
  for (size_t i = 1; i <= a.size(); ++i)
    if (a[a.size() - i] > b[b.size() - i]) return false;
  return true;
}

struct SweepDecision {
  bool yes = false;
  std::vector<int> trace;  // |A_t| for t = 0..2n (stops early on failure)
};

namespace detail {

struct EventTable {
  // per position 1..2n: interval id, and whether the event is a birth
  std::vector<int> id;
  std::vector<bool> is_birth;
};

inline EventTable build_event_table(const IntervalRep& rep) {
  EventTable t;
  t.id.assign(static_cast<size_t>(2 * rep.n + 1), -1);
  t.is_birth.assign(static_cast<size_t>(2 * rep.n + 1), false);
  for (const Interval& iv : rep.intervals) {
    if (iv.birth < 1 || iv.death > 2 * rep.n || iv.birth >= iv.death)
      throw std::invalid_argument("interval representation is not normalized");
    if (t.id[static_cast<size_t>(iv.birth)] != -1 ||
        t.id[static_cast<size_t>(iv.death)] != -1)
      throw std::invalid_argument("event positions are not pairwise distinct");
    t.id[static_cast<size_t>(iv.birth)] = iv.id;
    t.is_birth[static_cast<size_t>(iv.birth)] = true;
    t.id[static_cast<size_t>(iv.death)] = iv.id;
    t.is_birth[static_cast<size_t>(iv.death)] = false;
  }
  return t;
}

}  // namespace detail

// The handle-list sweep: at a birth insert two handles; at a death, if the
// interval still has handles, delete the three lowest or fail when fewer
// than three exist.
inline SweepDecision p3_decide(const IntervalRep& rep) {
  detail::EventTable events = detail::build_event_table(rep);
  HandleList a;
  SweepDecision out;
  out.trace.reserve(static_cast<size_t>(2 * rep.n + 1));
  out.trace.push_back(0);
  for (int t = 1; t <= 2 * rep.n; ++t) {
    int x = events.id[static_cast<size_t>(t)];
    const Interval& iv = rep.intervals[static_cast<size_t>(x)];
    if (events.is_birth[static_cast<size_t>(t)]) {
      a.insert_pair(iv.death, x);
    } else if (a.contains(iv.death, x)) {
      if (a.size() < 3) return out;
      a.pop_lowest_three();
    }
    // Every surviving handle must belong to an interval that is alive at t.
    if (!a.empty() && a.lowest_death() <= t)
      throw std::logic_error("handle list kept a dead interval");
    out.trace.push_back(a.size());
  }
  out.yes = true;
  return out;
}

struct SweepConstruction {
  bool yes = false;
  StarPartition partition;  // filled iff yes
  std::vector<int> trace;
};

// Same sweep as p3_decide, maintaining alongside it a partial partition into
// singletons, edges and triples whose handle occurrence counts stay in sync
// with the list (singleton: 2 copies; edge: 1 copy of the later-ending
// endpoint; triple: none). Each deletion merges blocks by the occurrence
// pattern of the three lowest handles.
inline SweepConstruction p3_construct(const IntervalRep& rep) {
  enum Kind { singleton, edge, triple, dead };
  struct Block {
    Kind kind;
    int a = -1, b = -1, c = -1;  // edge: a dies first; triple: any order
    int center = -1;             // triples only
  };

  detail::EventTable events = detail::build_event_table(rep);
  HandleList list;
  std::vector<Block> blocks;
  std::vector<int> block_of(static_cast<size_t>(rep.n), -1);
  SweepConstruction out;
  out.trace.reserve(static_cast<size_t>(2 * rep.n + 1));
  out.trace.push_back(0);

  auto fail_sync = []() {
    throw std::logic_error("partial partition out of sync with handle list");
  };
  auto birth_of = [&](int id) { return rep.intervals[static_cast<size_t>(id)].birth; };

  // x must currently head an edge block (it is the endpoint dying later);
  // returns the partner that already lost both handles.
  auto edge_partner = [&](int x) {
    int bi = block_of[static_cast<size_t>(x)];
    if (bi < 0 || blocks[static_cast<size_t>(bi)].kind != edge ||
        blocks[static_cast<size_t>(bi)].b != x)
      fail_sync();
    return blocks[static_cast<size_t>(bi)].a;
  };
  auto require_singleton = [&](int x) {
    int bi = block_of[static_cast<size_t>(x)];
    if (bi < 0 || blocks[static_cast<size_t>(bi)].kind != singleton) fail_sync();
  };
  auto retire = [&](int x) {
    blocks[static_cast<size_t>(block_of[static_cast<size_t>(x)])].kind = dead;
  };
  auto make_edge = [&](int low, int high) {
    retire(low);
    retire(high);
    blocks.push_back({edge, low, high, -1, -1});
    block_of[static_cast<size_t>(low)] = static_cast<int>(blocks.size()) - 1;
    block_of[static_cast<size_t>(high)] = static_cast<int>(blocks.size()) - 1;
  };
  auto make_triple = [&](int u, int v, int w, int center) {
    retire(u);
    retire(v);
    retire(w);
    blocks.push_back({triple, u, v, w, center});
    block_of[static_cast<size_t>(u)] = static_cast<int>(blocks.size()) - 1;
    block_of[static_cast<size_t>(v)] = static_cast<int>(blocks.size()) - 1;
    block_of[static_cast<size_t>(w)] = static_cast<int>(blocks.size()) - 1;
  };

  for (int t = 1; t <= 2 * rep.n; ++t) {
    int x = events.id[static_cast<size_t>(t)];
    const Interval& ivx = rep.intervals[static_cast<size_t>(x)];
    if (events.is_birth[static_cast<size_t>(t)]) {
      list.insert_pair(ivx.death, x);
      blocks.push_back({singleton, x, -1, -1, -1});
      block_of[static_cast<size_t>(x)] = static_cast<int>(blocks.size()) - 1;
    } else if (list.contains(ivx.death, x)) {
      if (list.size() < 3) return out;
      auto low3 = list.lowest_three();
      if (low3[0].second != x) fail_sync();
      list.pop_lowest_three();

      if (low3[1].second == x) {
        // x still held both handles, so x is a singleton; the third handle
        // belongs to some z that every other handle outlives.
        require_singleton(x);
        int z = low3[2].second;
        int zb = block_of[static_cast<size_t>(z)];
        if (blocks[static_cast<size_t>(zb)].kind == singleton) {
          make_edge(x, z);
        } else {
          int u = edge_partner(z);
          make_triple(x, z, u, z);  // u-z edge plus x-z overlap: center z
        }
      } else {
        int y = low3[1].second;
        int u = edge_partner(x);
        if (low3[2].second == y) {
          // y's two handles survive: y is a singleton absorbed by x's edge.
          require_singleton(y);
          make_triple(x, y, u, x);
        } else {
          int z = low3[2].second;
          int v = edge_partner(y);
          int zb = block_of[static_cast<size_t>(z)];
          // The earlier-born of x, y overlaps the other's retired partner,
          // so it can center a triple with both partners.
          bool y_first = birth_of(y) < birth_of(x);
          int head = y_first ? y : x;       // centers {head, u, v}
          int tail = y_first ? x : y;       // pairs up with z
          if (blocks[static_cast<size_t>(zb)].kind == singleton) {
            make_triple(head, u, v, head);
            make_edge(tail, z);
          } else {
            int w = edge_partner(z);
            make_triple(head, u, v, head);
            make_triple(tail, z, w, z);
          }
        }
      }
    } else {
      // No handles left: x must already sit in an edge (as the earlier-dying
      // endpoint) or in a finished triple.
      int bi = block_of[static_cast<size_t>(x)];
      if (bi < 0) fail_sync();
      const Block& blk = blocks[static_cast<size_t>(bi)];
      if (blk.kind == singleton || blk.kind == dead ||
          (blk.kind == edge && blk.a != x))
        fail_sync();
    }
    if (!list.empty() && list.lowest_death() <= t)
      throw std::logic_error("handle list kept a dead interval");
    out.trace.push_back(list.size());
  }

  out.yes = true;
  out.partition.s = 2;
  for (const Block& blk : blocks) {
    if (blk.kind == dead || blk.kind == singleton || blk.kind == edge) {
      if (blk.kind != dead) fail_sync();  // sweep ended with unfinished block
      continue;
    }
    StarBlock sb;
    sb.center = blk.center;
    for (int v : {blk.a, blk.b, blk.c})
      if (v != blk.center) sb.leaves.push_back(v);
    out.partition.blocks.push_back(sb);
  }
  return out;
}

// Greedy star partition for unit interval inputs: within each connected
// component (components are contiguous in birth order), repeatedly take the
// s+1 earliest-born unprocessed intervals; they must contain an s-star.
// Correct whenever the birth order is a bicompatible elimination order,
// which equal-length intervals guarantee.
inline std::optional<StarPartition> unit_interval_partition(const IntervalRep& rep,
                                                            int s) {
  if (s < 1) throw std::invalid_argument("s must be positive");
  std::vector<const Interval*> by_birth;
  by_birth.reserve(static_cast<size_t>(rep.n));
  for (const Interval& iv : rep.intervals) by_birth.push_back(&iv);
  std::sort(by_birth.begin(), by_birth.end(),
            [](const Interval* a, const Interval* b) { return a->birth < b->birth; });

  StarPartition partition;
  partition.s = s;
  size_t i = 0;
  while (i < by_birth.size()) {
    // Component = maximal run where each interval starts before the running
    // maximum death.
    size_t begin = i;
    int max_death = by_birth[i]->death;
    ++i;
    while (i < by_birth.size() && by_birth[i]->birth < max_death) {
      max_death = std::max(max_death, by_birth[i]->death);
      ++i;
    }
    size_t size = i - begin;
    if (size % static_cast<size_t>(s + 1) != 0) return std::nullopt;
    for (size_t j = begin; j < i; j += static_cast<size_t>(s + 1)) {
      // Smallest-id member adjacent to all s others, if any.
      int center = -1;
      for (size_t c = j; c < j + static_cast<size_t>(s + 1); ++c) {
        bool all = true;
        for (size_t l = j; l < j + static_cast<size_t>(s + 1); ++l)
          if (l != c && !intervals_overlap(*by_birth[c], *by_birth[l])) {
            all = false;
            break;
          }
        if (all && (center < 0 || by_birth[c]->id < center)) center = by_birth[c]->id;
      }
      if (center < 0) return std::nullopt;
      StarBlock sb;
      sb.center = center;
      for (size_t l = j; l < j + static_cast<size_t>(s + 1); ++l)
        if (by_birth[l]->id != center) sb.leaves.push_back(by_birth[l]->id);
      partition.blocks.push_back(sb);
    }
  }
  return partition;
}

// The derived intersection graph, for feeding interval instances to the
// oracle and verifier.
inline Graph interval_graph(const IntervalRep& rep) {
  Graph g(rep.n);
  for (int i = 0; i < rep.n; ++i)
    for (int j = i + 1; j < rep.n; ++j)
      if (intervals_overlap(rep.intervals[static_cast<size_t>(i)],
                            rep.intervals[static_cast<size_t>(j)]))
        g.add_edge(i, j);
  g.finalize();
  return g;
}

}  // namespace starpart
