// Command line front end: solve / verify / gen / bench over the star
// partition solvers. Exit codes: 0 = yes (or valid), 1 = no (or invalid),
// 2 = usage or input format error, 3 = refused (no supported algorithm for
// the class/s combination, or the exact search ran out of budget).
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <numeric>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "starpart/bipperm.hpp"
#include "starpart/cograph.hpp"
#include "starpart/generators.hpp"
#include "starpart/graph.hpp"
#include "starpart/interval.hpp"
#include "starpart/io.hpp"
#include "starpart/oracle.hpp"
#include "starpart/split.hpp"

namespace {

using namespace starpart;

constexpr int kYes = 0;
constexpr int kNo = 1;
constexpr int kUsage = 2;
constexpr int kRefused = 3;

// Sizes and budgets accept scientific notation ("1e5") as well as plain
// integers.
long long parse_count(const std::string& text) {
  try {
    if (text.find_first_of("eE.") != std::string::npos) {
      size_t used = 0;
      double v = std::stod(text, &used);
      if (used != text.size() || v < 0 || v > 9e18 || v != std::floor(v))
        throw std::invalid_argument(text);
      return static_cast<long long>(v);
    }
    size_t used = 0;
    long long v = std::stoll(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw CLI::ValidationError("expected a count, got '" + text + "'");
  }
}

long long resolve_budget(const std::string& flag_value) {
  if (!flag_value.empty()) return parse_count(flag_value);
  if (const char* env = std::getenv("STARPART_BUDGET")) return parse_count(env);
  return oracle_default_budget;
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open input file: " + path);
  return in;
}

void write_certificate(const std::string& path, const StarPartition& p) {
  if (path.empty()) return;
  std::ofstream out(path);
  if (!out) throw ParseError("cannot open certificate file: " + path);
  write_partition(out, p);
}

void print_trace(const std::vector<int>& trace) {
  std::cout << "sizes:";
  for (int v : trace) std::cout << ' ' << v;
  std::cout << '\n';
}

int report(bool yes, const std::string& cert_path, const StarPartition* p) {
  if (yes && p) write_certificate(cert_path, *p);
  std::cout << (yes ? "yes" : "no") << '\n';
  return yes ? kYes : kNo;
}

int refuse(const std::string& reason) {
  std::cout << "refused: " << reason << '\n';
  return kRefused;
}

// ---------------------------------------------------------------- solve

struct SolveConfig {
  std::string klass;
  std::string input;
  std::string certificate;
  std::string budget;
  int s = 2;
  bool trace = false;
  bool dump_gadget = false;
  bool dump_cotree = false;
};

int solve_unit_interval(const SolveConfig& cfg) {
  auto in = open_input(cfg.input);
  auto raw = parse_intervals(in);
  if (!equal_interval_lengths(raw))
    throw std::invalid_argument("intervals do not all have the same length");
  IntervalRep rep = normalize_events(raw);
  auto part = unit_interval_partition(rep, cfg.s);
  return report(part.has_value(), cfg.certificate, part ? &*part : nullptr);
}

int solve_interval(const SolveConfig& cfg) {
  auto in = open_input(cfg.input);
  IntervalRep rep = normalize_events(parse_intervals(in));
  if (cfg.s == 2) {
    SweepConstruction res = p3_construct(rep);
    if (cfg.trace) print_trace(res.trace);
    return report(res.yes, cfg.certificate, &res.partition);
  }
  if (cfg.s == 1) {
    // No dedicated matching routine for general interval graphs; small
    // instances go through the exact search.
    OracleResult res = oracle_partition(interval_graph(rep), 1,
                                        resolve_budget(cfg.budget));
    if (res.status == OracleStatus::budget_exceeded)
      return refuse("exact search exceeded its expansion budget");
    return report(res.status == OracleStatus::yes, cfg.certificate, &res.partition);
  }
  return refuse("no polynomial algorithm is known for s >= 3 on interval graphs");
}

int solve_bipperm(const SolveConfig& cfg) {
  auto in = open_input(cfg.input);
  BipartiteInstance inst = parse_bipartite(in);
  if (cfg.s == 1) {
    auto part = bipartite_matching_partition(inst.graph);
    return report(part.has_value(), cfg.certificate, part ? &*part : nullptr);
  }
  std::optional<StrongOrdering> ord = inst.order;
  if (ord) {
    if (!validate_strong_ordering(inst.graph, *ord))
      throw std::invalid_argument("supplied ordering is not a strong ordering");
  } else {
    ord = compute_strong_ordering(inst.graph);
    if (!ord)
      throw std::invalid_argument(
          "no strong ordering found; the graph does not appear to be a "
          "bipartite permutation graph");
  }
  auto part = bipperm_partition(inst.graph, cfg.s, *ord);
  return report(part.has_value(), cfg.certificate, part ? &*part : nullptr);
}

int solve_cograph(const SolveConfig& cfg) {
  auto in = open_input(cfg.input);
  Graph g = parse_graph(in);
  auto tree = cotree_build(g);
  if (!tree) throw std::invalid_argument("graph is not a cograph");
  if (cfg.dump_cotree) std::cout << cotree_dump(*tree) << '\n';
  auto part = cograph_partition(*tree, cfg.s);
  return report(part.has_value(), cfg.certificate, part ? &*part : nullptr);
}

int solve_split(const SolveConfig& cfg) {
  auto in = open_input(cfg.input);
  Graph g = parse_graph(in);
  if (cfg.dump_gadget) {
    auto dec = split_decompose(g);
    if (!dec) throw std::invalid_argument("graph is not a split graph");
    auto gadget = build_split_gadget(g, *dec);
    if (!gadget) {
      std::cout << "# gadget not constructed: size arithmetic rules the instance out\n";
    } else {
      for (int v = 0; v < gadget->n; ++v)
        std::cout << "# " << v << ": " << gadget->label[static_cast<size_t>(v)] << '\n';
      std::cout << gadget->n << ' ' << gadget->edges.size() << '\n';
      for (const auto& [u, v] : gadget->edges) std::cout << u << ' ' << v << '\n';
    }
  }
  SplitSolveResult res = star_split(g, cfg.s, star_split_size_limit,
                                    resolve_budget(cfg.budget));
  if (res.status == SplitSolveResult::Status::refused) return refuse(res.refusal);
  return report(res.status == SplitSolveResult::Status::yes, cfg.certificate,
                &res.partition);
}

int solve_oracle(const SolveConfig& cfg) {
  auto in = open_input(cfg.input);
  Graph g = parse_graph(in);
  OracleResult res = oracle_partition(g, cfg.s, resolve_budget(cfg.budget));
  if (res.status == OracleStatus::budget_exceeded)
    return refuse("exact search exceeded its expansion budget");
  return report(res.status == OracleStatus::yes, cfg.certificate, &res.partition);
}

int run_solve(const SolveConfig& cfg) {
  if (cfg.s < 1) throw CLI::ValidationError("--s must be positive");
  if (cfg.trace && !(cfg.klass == "interval" && cfg.s == 2))
    throw CLI::ValidationError("--trace requires --class interval --s 2");
  if (cfg.dump_cotree && cfg.klass != "cograph")
    throw CLI::ValidationError("--dump-cotree requires --class cograph");
  if (cfg.dump_gadget && !(cfg.klass == "split" && cfg.s == 2))
    throw CLI::ValidationError("--dump-gadget requires --class split --s 2");

  if (cfg.klass == "unit-interval") return solve_unit_interval(cfg);
  if (cfg.klass == "interval") return solve_interval(cfg);
  if (cfg.klass == "bip-perm") return solve_bipperm(cfg);
  if (cfg.klass == "cograph") return solve_cograph(cfg);
  if (cfg.klass == "split") return solve_split(cfg);
  if (cfg.klass == "oracle") return solve_oracle(cfg);
  throw CLI::ValidationError("unknown class: " + cfg.klass);
}

// ---------------------------------------------------------------- verify

struct VerifyConfig {
  std::string klass = "graph";
  std::string input;
  std::string partition;
  int s = 2;
};

int run_verify(const VerifyConfig& cfg) {
  auto in = open_input(cfg.input);
  Graph g;
  if (cfg.klass == "graph") {
    g = parse_graph(in);
  } else if (cfg.klass == "interval" || cfg.klass == "unit-interval") {
    g = interval_graph(normalize_events(parse_intervals(in)));
  } else if (cfg.klass == "bip-perm") {
    g = combined_graph(parse_bipartite(in).graph);
  } else {
    throw CLI::ValidationError("unknown class for verify: " + cfg.klass);
  }
  auto pin = open_input(cfg.partition);
  StarPartition p = parse_partition(pin);
  VerifyReport rep = verify_partition(g, cfg.s, p);
  if (rep.valid) {
    std::cout << "valid\n";
    return kYes;
  }
  std::cout << "invalid: " << rep.reason << '\n';
  return kNo;
}

// ---------------------------------------------------------------- gen

struct GenConfig {
  std::string kind;  // subcommand name
  std::string out;
  std::string random_kind;
  int u = 3;
  int sets = 1;
  int s = 3;
  int q = 1;
  int extra = 0;
  bool plant = true;
  int n = 8;
  unsigned long long seed = 0;
};

int run_gen(const GenConfig& cfg, std::ostream& out) {
  Rng rng(cfg.seed);
  if (cfg.kind == "x3c-split") {
    if (cfg.s < 2) throw CLI::ValidationError("--s must be at least 2");
    if (cfg.u < cfg.s || cfg.u % cfg.s != 0)
      throw CLI::ValidationError("--u must be a positive multiple of --s");
    if (cfg.sets < cfg.u / cfg.s)
      throw CLI::ValidationError("--sets must be at least u/s");
    ExactCoverInstance inst;
    inst.set_size = cfg.s;
    for (int i = 1; i <= cfg.u; ++i) inst.universe.push_back(i);
    std::vector<int> ids(static_cast<size_t>(cfg.u));
    std::iota(ids.begin(), ids.end(), 0);
    for (int i = 0; i < cfg.sets; ++i) {
      rng.shuffle(ids);
      std::vector<int> set(ids.begin(), ids.begin() + cfg.s);
      std::sort(set.begin(), set.end());
      inst.sets.push_back(std::move(set));
    }
    ExactCoverImage img = exact_cover_to_split(inst);
    out << "# split image of an exact cover instance: u=" << cfg.u
        << " sets=" << cfg.sets << " s=" << cfg.s << '\n';
    for (const auto& set : inst.sets) {
      out << "# set";
      for (int e : set) out << ' ' << inst.universe[static_cast<size_t>(e)];
      out << '\n';
    }
    write_graph(out, img.graph);
    return kYes;
  }
  if (cfg.kind == "tdm-chordal") {
    if (cfg.q < 1) throw CLI::ValidationError("--q must be positive");
    ThreeWayMatchingInstance inst = random_three_way(cfg.q, cfg.extra, cfg.plant, rng);
    ThreeWayImage img = three_way_to_chordal(inst);
    out << "# chordal image of a three-dimensional matching instance: q=" << cfg.q
        << " triples=" << inst.triples.size() << '\n';
    for (const auto& t : inst.triples)
      out << "# triple " << inst.names[0][static_cast<size_t>(t[0])] << ' '
          << inst.names[1][static_cast<size_t>(t[1])] << ' '
          << inst.names[2][static_cast<size_t>(t[2])] << '\n';
    write_graph(out, img.graph);
    return kYes;
  }
  if (cfg.kind == "random") {
    if (cfg.n < 1) throw CLI::ValidationError("--n must be positive");
    if (cfg.random_kind == "unit-intervals") {
      write_intervals(out, random_unit_intervals(cfg.n, rng));
    } else if (cfg.random_kind == "intervals") {
      write_intervals(out, random_intervals(cfg.n, rng));
    } else if (cfg.random_kind == "bip-perm") {
      BipermInstanceData data = random_bipperm(cfg.n, rng);
      write_bipartite(out, data.graph, data.order);
    } else if (cfg.random_kind == "cograph") {
      write_graph(out, random_cograph(cfg.n, rng));
    } else if (cfg.random_kind == "split") {
      write_graph(out, random_split_graph((cfg.n + 1) / 2, cfg.n / 2, rng));
    } else {
      throw CLI::ValidationError("unknown --kind: " + cfg.random_kind);
    }
    return kYes;
  }
  throw CLI::ValidationError("unknown gen kind: " + cfg.kind);
}

// ---------------------------------------------------------------- bench

struct BenchConfig {
  std::string klass;
  std::string sizes;
  int s = 2;
  unsigned long long seed = 0;
};

// Count of overlapping pairs, via the event order: when an interval is born,
// it overlaps exactly the currently live ones.
long long interval_edge_count(const IntervalRep& rep) {
  std::vector<std::pair<int, bool>> events;  // position, is_birth
  for (const auto& iv : rep.intervals) {
    events.push_back({iv.birth, true});
    events.push_back({iv.death, false});
  }
  std::sort(events.begin(), events.end());
  long long m = 0, live = 0;
  for (const auto& [pos, is_birth] : events) {
    if (is_birth) {
      m += live;
      ++live;
    } else {
      --live;
    }
  }
  return m;
}

int run_bench(const BenchConfig& cfg) {
  std::vector<long long> sizes;
  std::stringstream ss(cfg.sizes);
  std::string token;
  while (std::getline(ss, token, ',')) {
    long long v = parse_count(token);
    if (v < 1) throw CLI::ValidationError("sizes must be positive");
    sizes.push_back(v);
  }
  if (sizes.empty()) throw CLI::ValidationError("--sizes is empty");

  for (long long size : sizes) {
    Rng rng(cfg.seed);
    long long n = 0, m = 0;
    std::string answer;
    std::chrono::steady_clock::time_point t0, t1;
    if (cfg.klass == "interval" || cfg.klass == "unit-interval") {
      long long rounded = std::max<long long>(3, size - size % 3);
      IntervalRep rep = normalize_events(bench_intervals(static_cast<int>(rounded)));
      n = rep.n;
      m = interval_edge_count(rep);
      t0 = std::chrono::steady_clock::now();
      bool yes;
      if (cfg.klass == "interval") {
        if (cfg.s != 2) throw CLI::ValidationError("interval bench requires --s 2");
        yes = p3_decide(rep).yes;
      } else {
        yes = unit_interval_partition(rep, cfg.s).has_value();
      }
      t1 = std::chrono::steady_clock::now();
      answer = yes ? "yes" : "no";
    } else if (cfg.klass == "bip-perm") {
      if (cfg.s < 2) throw CLI::ValidationError("bip-perm bench requires --s >= 2");
      long long k = std::max<long long>(1, size / (cfg.s + 1));
      BipermInstanceData data = bench_bipperm(static_cast<int>(k), cfg.s);
      n = data.graph.nl() + data.graph.nr();
      m = data.graph.m();
      t0 = std::chrono::steady_clock::now();
      bool yes = validate_strong_ordering(data.graph, data.order) &&
                 bipperm_partition(data.graph, cfg.s, data.order).has_value();
      t1 = std::chrono::steady_clock::now();
      answer = yes ? "yes" : "no";
    } else if (cfg.klass == "cograph") {
      Graph g = random_cograph(static_cast<int>(size), rng);
      n = g.n();
      m = g.m();
      t0 = std::chrono::steady_clock::now();
      auto tree = cotree_build(g);
      bool yes = tree && cograph_partition(*tree, cfg.s).has_value();
      t1 = std::chrono::steady_clock::now();
      answer = yes ? "yes" : "no";
    } else if (cfg.klass == "split") {
      Graph g = random_split_graph(static_cast<int>((size + 1) / 2),
                                   static_cast<int>(size / 2), rng);
      n = g.n();
      m = g.m();
      t0 = std::chrono::steady_clock::now();
      SplitSolveResult res = star_split(g, cfg.s);
      t1 = std::chrono::steady_clock::now();
      answer = res.status == SplitSolveResult::Status::yes      ? "yes"
               : res.status == SplitSolveResult::Status::no     ? "no"
                                                                : "refused";
    } else if (cfg.klass == "oracle") {
      Graph g = random_graph(static_cast<int>(size), 50, rng);
      n = g.n();
      m = g.m();
      t0 = std::chrono::steady_clock::now();
      OracleResult res = oracle_partition(g, cfg.s);
      t1 = std::chrono::steady_clock::now();
      answer = res.status == OracleStatus::yes               ? "yes"
               : res.status == OracleStatus::no              ? "no"
                                                             : "refused";
    } else {
      throw CLI::ValidationError("unknown class for bench: " + cfg.klass);
    }
    auto micros =
        std::chrono::duration_cast<std::chrono::microseconds>(t1 - t0).count();
    std::cout << cfg.klass << ',' << n << ',' << m << ',' << micros << ','
              << answer << '\n';
  }
  return kYes;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"star partition solvers for structured graph classes"};
  app.require_subcommand(1);

  SolveConfig solve_cfg;
  CLI::App* solve = app.add_subcommand(
      "solve", "decide and construct a partition into stars of s leaves");
  solve
      ->add_option("--class", solve_cfg.klass,
                   "unit-interval, interval, bip-perm, cograph, split, oracle")
      ->required();
  solve->add_option("--s", solve_cfg.s, "star size (leaves per block)");
  solve->add_option("--input", solve_cfg.input, "instance file")->required();
  solve->add_option("--certificate", solve_cfg.certificate,
                    "write the partition here on a yes answer");
  solve->add_option("--budget", solve_cfg.budget,
                    "expansion budget for the exact search (default 1e7; the "
                    "STARPART_BUDGET environment variable overrides the default)");
  solve->add_flag("--trace", solve_cfg.trace,
                  "print the sweep size trace (interval, s = 2)");
  solve->add_flag("--dump-gadget", solve_cfg.dump_gadget,
                  "print the matching gadget with provenance comments (split, s = 2)");
  solve->add_flag("--dump-cotree", solve_cfg.dump_cotree,
                  "print the cotree (cograph)");

  VerifyConfig verify_cfg;
  CLI::App* verify =
      app.add_subcommand("verify", "check a partition file against an instance");
  verify->add_option("--class", verify_cfg.klass,
                     "instance format: graph (default), interval, unit-interval, "
                     "bip-perm");
  verify->add_option("--s", verify_cfg.s, "star size the partition must have");
  verify->add_option("--input", verify_cfg.input, "instance file")->required();
  verify->add_option("--partition", verify_cfg.partition, "partition file")
      ->required();

  GenConfig gen_cfg;
  CLI::App* gen = app.add_subcommand("gen", "write instance files");
  gen->require_subcommand(1);
  CLI::App* gen_x3c = gen->add_subcommand(
      "x3c-split", "split graph image of a random exact cover instance");
  gen_x3c->add_option("--u", gen_cfg.u, "universe size");
  gen_x3c->add_option("--sets", gen_cfg.sets, "number of sets");
  gen_x3c->add_option("--s", gen_cfg.s, "set size");
  CLI::App* gen_tdm = gen->add_subcommand(
      "tdm-chordal", "chordal image of a random three-dimensional matching instance");
  gen_tdm->add_option("--q", gen_cfg.q, "side size");
  gen_tdm->add_option("--extra", gen_cfg.extra, "extra random triples");
  gen_tdm->add_flag("--plant,!--no-plant", gen_cfg.plant,
                    "include a planted perfect matching (default on)");
  CLI::App* gen_random = gen->add_subcommand("random", "random instance of a class");
  gen_random
      ->add_option("--kind", gen_cfg.random_kind,
                   "unit-intervals, intervals, bip-perm, cograph, split")
      ->required();
  gen_random->add_option("--n", gen_cfg.n, "instance size");
  for (CLI::App* sub : {gen_x3c, gen_tdm, gen_random}) {
    sub->add_option("--seed", gen_cfg.seed, "random seed");
    sub->add_option("--out", gen_cfg.out, "output file (default stdout)");
  }

  BenchConfig bench_cfg;
  CLI::App* bench = app.add_subcommand(
      "bench", "time the solvers; CSV rows class,n,m,micros,answer");
  bench
      ->add_option("--class", bench_cfg.klass,
                   "interval, unit-interval, bip-perm, cograph, split, oracle")
      ->required();
  bench->add_option("--sizes", bench_cfg.sizes, "comma separated sizes, e.g. 1e3,1e4")
      ->required();
  bench->add_option("--s", bench_cfg.s, "star size");
  bench->add_option("--seed", bench_cfg.seed, "random seed");

  try {
    app.parse(argc, argv);
    if (solve->parsed()) return run_solve(solve_cfg);
    if (verify->parsed()) return run_verify(verify_cfg);
    if (gen->parsed()) {
      for (CLI::App* sub : {gen_x3c, gen_tdm, gen_random})
        if (sub->parsed()) gen_cfg.kind = sub->get_name();
      if (!gen_cfg.out.empty()) {
        std::ofstream out(gen_cfg.out);
        if (!out) throw ParseError("cannot open output file: " + gen_cfg.out);
        return run_gen(gen_cfg, out);
      }
      return run_gen(gen_cfg, std::cout);
    }
    if (bench->parsed()) return run_bench(bench_cfg);
    return kUsage;
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  } catch (const ParseError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::runtime_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 4;
  }
}
