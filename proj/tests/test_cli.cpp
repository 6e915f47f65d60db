#include <catch2/catch_amalgamated.hpp>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "starpart/generators.hpp"
#include "starpart/graph.hpp"
#include "starpart/io.hpp"

using namespace starpart;

namespace {

// The binary under test; the build system injects the path.
constexpr const char* kCli = STARPART_CLI_PATH;

struct RunResult {
  int exit_code = -1;
  std::string output;  // stdout and stderr interleaved
};

RunResult run_shell(const std::string& command) {
  FILE* pipe = popen(command.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult res;
  char buf[4096];
  size_t got = 0;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) res.output.append(buf, got);
  int status = pclose(pipe);
  REQUIRE(WIFEXITED(status));
  res.exit_code = WEXITSTATUS(status);
  return res;
}

RunResult run_cli(const std::string& args) {
  return run_shell("\"" + std::string(kCli) + "\" " + args + " 2>&1");
}

RunResult run_cli_env(const std::string& env_prefix, const std::string& args) {
  return run_shell(env_prefix + " \"" + std::string(kCli) + "\" " + args + " 2>&1");
}

std::filesystem::path scratch_dir() {
  static const std::filesystem::path dir = [] {
    auto d = std::filesystem::temp_directory_path() /
             ("starpart_cli_" + std::to_string(::getpid()));
    std::filesystem::create_directories(d);
    return d;
  }();
  return dir;
}

std::string scratch_path(const std::string& name) {
  return (scratch_dir() / name).string();
}

std::string write_file(const std::string& name, const std::string& content) {
  auto path = scratch_path(name);
  std::ofstream out(path);
  REQUIRE(out.good());
  out << content;
  return path;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) out.push_back(line);
  return out;
}

std::vector<std::string> split_fields(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::istringstream ss(line);
  std::string field;
  while (std::getline(ss, field, sep)) out.push_back(field);
  return out;
}

std::string graph_text(int n, const std::vector<std::pair<int, int>>& edges) {
  std::ostringstream out;
  out << n << ' ' << edges.size() << '\n';
  for (const auto& [u, v] : edges) out << u << ' ' << v << '\n';
  return out.str();
}

// The six-interval regression instance: a=[1,9) b=[2,3) c=[4,6) d=[5,8)
// e=[7,11) f=[10,12), ids 0..5.
std::string regression_intervals_text() {
  return "6\n0 1 9\n1 2 3\n2 4 6\n3 5 8\n4 7 11\n5 10 12\n";
}

// The intersection graph of the instance above.
std::string regression_graph_text() {
  return graph_text(
      6, {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {2, 3}, {3, 4}, {4, 5}});
}

// A split graph on 12 vertices: clique 0..5 plus 11 clique-independent edges.
// Known to admit a partition into four 2-stars.
std::string split_twelve_text() {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < 6; ++i)
    for (int j = i + 1; j < 6; ++j) edges.push_back({i, j});
  for (auto e : std::vector<std::pair<int, int>>{{0, 6},
                                                 {0, 7},
                                                 {1, 8},
                                                 {1, 9},
                                                 {2, 6},
                                                 {2, 9},
                                                 {3, 11},
                                                 {4, 8},
                                                 {4, 10},
                                                 {5, 10},
                                                 {5, 11}})
    edges.push_back(e);
  return graph_text(12, edges);
}

std::string complete_graph_text(int n) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) edges.push_back({i, j});
  return graph_text(n, edges);
}

std::string star_graph_text(int leaves) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 1; i <= leaves; ++i) edges.push_back({0, i});
  return graph_text(leaves + 1, edges);
}

// Solve, demand a certificate, and feed it back through verify.
void check_round_trip(const std::string& klass, const std::string& input,
                      int s, const std::string& tag,
                      const std::string& verify_klass) {
  const std::string cert = scratch_path("cert_" + tag + ".part");
  auto solved = run_cli("solve --class " + klass + " --s " + std::to_string(s) +
                        " --input " + input + " --certificate " + cert);
  INFO(solved.output);
  REQUIRE(solved.exit_code == 0);
  CHECK(solved.output == "yes\n");
  auto verified = run_cli("verify --class " + verify_klass + " --s " +
                          std::to_string(s) + " --input " + input +
                          " --partition " + cert);
  INFO(verified.output);
  CHECK(verified.exit_code == 0);
  CHECK(verified.output == "valid\n");
}

}  // namespace

TEST_CASE("solve prints the sweep trace and a verifiable certificate") {
  const std::string ivl = write_file("regression.ivl", regression_intervals_text());

  SECTION("the trace line is exact") {
    auto res = run_cli("solve --class interval --s 2 --input " + ivl + " --trace");
    CHECK(res.exit_code == 0);
    CHECK(res.output == "sizes: 0 2 4 1 3 5 2 4 1 1 3 0 0\nyes\n");
  }

  SECTION("the certificate round-trips through verify") {
    check_round_trip("interval", ivl, 2, "interval_s2", "interval");
  }

  SECTION("s = 1 goes through the exact search and still certifies") {
    check_round_trip("interval", ivl, 1, "interval_s1", "interval");
  }
}

TEST_CASE("certificates round-trip for every solver class") {
  SECTION("unit intervals") {
    const std::string path =
        write_file("unit.ivl", "3\n0 0 10\n1 1 11\n2 2 12\n");
    check_round_trip("unit-interval", path, 2, "unit", "unit-interval");
  }
  SECTION("bipartite permutation") {
    std::ostringstream text;
    text << "2 4 8\n";
    for (int u = 0; u < 2; ++u)
      for (int w = 0; w < 4; ++w) text << u << ' ' << w << '\n';
    const std::string path = write_file("k24.bip", text.str());
    check_round_trip("bip-perm", path, 2, "bipperm_s2", "bip-perm");

    // s = 1 needs equal sides for a perfect matching.
    std::ostringstream square;
    square << "3 3 9\n";
    for (int u = 0; u < 3; ++u)
      for (int w = 0; w < 3; ++w) square << u << ' ' << w << '\n';
    const std::string square_path = write_file("k33.bip", square.str());
    check_round_trip("bip-perm", square_path, 1, "bipperm_s1", "bip-perm");
  }
  SECTION("cograph") {
    const std::string path = write_file("k3.graph", complete_graph_text(3));
    check_round_trip("cograph", path, 2, "cograph", "graph");
  }
  SECTION("split") {
    const std::string path = write_file("split12.graph", split_twelve_text());
    check_round_trip("split", path, 2, "split", "graph");
  }
  SECTION("exact search") {
    const std::string path = write_file(
        "c6.graph",
        graph_text(6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {0, 5}}));
    check_round_trip("oracle", path, 2, "oracle", "graph");
  }
}

TEST_CASE("refusals exit with code 3 and name the obstruction") {
  SECTION("interval graphs with s >= 3") {
    const std::string ivl =
        write_file("refuse.ivl", regression_intervals_text());
    auto res = run_cli("solve --class interval --s 3 --input " + ivl);
    CHECK(res.exit_code == 3);
    CHECK(res.output ==
          "refused: no polynomial algorithm is known for s >= 3 on interval "
          "graphs\n");
  }
  SECTION("split graphs with s != 2 beyond the exact-search limit") {
    const std::string path = write_file("bigstar.graph", star_graph_text(99));
    auto res = run_cli("solve --class split --s 4 --input " + path);
    CHECK(res.exit_code == 3);
    CHECK(res.output == "refused: exact search is limited to 60 vertices\n");
  }
  SECTION("exhausted expansion budget") {
    const std::string path = write_file("k8.graph", complete_graph_text(8));
    auto res = run_cli("solve --class oracle --s 3 --budget 1 --input " + path);
    CHECK(res.exit_code == 3);
    CHECK(res.output == "refused: exact search exceeded its expansion budget\n");
  }
}

TEST_CASE("a no answer exits 1 and leaves no certificate behind") {
  const std::string path =
      write_file("p4.graph", graph_text(4, {{0, 1}, {1, 2}, {2, 3}}));
  const std::string cert = scratch_path("p4_no.part");
  auto res = run_cli("solve --class oracle --s 2 --input " + path +
                     " --certificate " + cert);
  CHECK(res.exit_code == 1);
  CHECK(res.output == "no\n");
  CHECK_FALSE(std::filesystem::exists(cert));

  SECTION("the empty graph is a yes") {
    const std::string empty = write_file("empty.graph", "0 0\n");
    auto yes = run_cli("solve --class oracle --s 2 --input " + empty);
    CHECK(yes.exit_code == 0);
    CHECK(yes.output == "yes\n");
  }
}

TEST_CASE("verify distinguishes valid, invalid, and malformed") {
  const std::string graph = write_file("regression.graph", regression_graph_text());

  SECTION("a correct partition is valid") {
    const std::string part = write_file("good.part", "0: 1 2\n4: 3 5\n");
    auto res = run_cli("verify --input " + graph + " --partition " + part);
    CHECK(res.exit_code == 0);
    CHECK(res.output == "valid\n");
  }
  SECTION("a block without a star is rejected with a diagnostic") {
    // {0,1,5} contains no 2-star: 0-5 and 1-5 are not edges.
    const std::string part = write_file("bad.part", "0: 1 5\n3: 2 4\n");
    auto res = run_cli("verify --input " + graph + " --partition " + part);
    CHECK(res.exit_code == 1);
    CHECK(res.output.rfind("invalid: ", 0) == 0);
    CHECK(res.output.find("no 2-star") != std::string::npos);
  }
  SECTION("a wrong star size is rejected") {
    const std::string part = write_file("wrong_s.part", "0: 1 2\n4: 3 5\n");
    auto res = run_cli("verify --s 3 --input " + graph + " --partition " + part);
    CHECK(res.exit_code == 1);
    CHECK(res.output.rfind("invalid: ", 0) == 0);
  }
  SECTION("a truncated instance file is a usage error") {
    const std::string broken = write_file("broken.graph", "6 7\n0 1\n");
    const std::string part = write_file("any.part", "0: 1 2\n");
    auto res = run_cli("verify --input " + broken + " --partition " + part);
    CHECK(res.exit_code == 2);
    CHECK(res.output.find("input error") != std::string::npos);
  }
  SECTION("unknown verify class is a usage error") {
    const std::string part = write_file("any2.part", "0: 1 2\n");
    auto res =
        run_cli("verify --class planar --input " + graph + " --partition " + part);
    CHECK(res.exit_code == 2);
  }
}

TEST_CASE("structure dumps are gated to the matching class") {
  SECTION("the cotree prints before the answer") {
    const std::string path =
        write_file("p3.graph", graph_text(3, {{0, 1}, {1, 2}}));
    auto res = run_cli("solve --class cograph --s 2 --dump-cotree --input " + path);
    REQUIRE(res.exit_code == 0);
    auto lines = split_lines(res.output);
    REQUIRE(lines.size() == 2);
    CHECK(lines[0] == "(join (union 0 2) 1)");
    CHECK(lines[1] == "yes");
  }
  SECTION("the gadget dump is a parseable graph with one label per vertex") {
    const std::string path = write_file("split12b.graph", split_twelve_text());
    auto res = run_cli("solve --class split --s 2 --dump-gadget --input " + path);
    REQUIRE(res.exit_code == 0);
    auto lines = split_lines(res.output);
    REQUIRE(lines.back() == "yes");
    int labels = 0;
    for (const auto& line : lines)
      if (!line.empty() && line[0] == '#') ++labels;
    CHECK(labels == 52);
    std::istringstream dump(res.output);
    Graph gadget = parse_graph(dump);
    CHECK(gadget.n() == 52);
  }
  SECTION("flags on the wrong class are usage errors") {
    const std::string graph = write_file("k3b.graph", complete_graph_text(3));
    const std::string ivl = write_file("gate.ivl", regression_intervals_text());
    CHECK(run_cli("solve --class cograph --s 2 --trace --input " + graph)
              .exit_code == 2);
    CHECK(run_cli("solve --class split --s 2 --dump-cotree --input " + graph)
              .exit_code == 2);
    CHECK(run_cli("solve --class split --s 3 --dump-gadget --input " + graph)
              .exit_code == 2);
    CHECK(run_cli("solve --class interval --s 3 --trace --input " + ivl)
              .exit_code == 2);
  }
}

TEST_CASE("structural mismatches and bad input are usage errors") {
  SECTION("non-cograph input to the cograph solver") {
    const std::string path =
        write_file("p4b.graph", graph_text(4, {{0, 1}, {1, 2}, {2, 3}}));
    auto res = run_cli("solve --class cograph --s 2 --input " + path);
    CHECK(res.exit_code == 2);
    CHECK(res.output.find("not a cograph") != std::string::npos);
  }
  SECTION("non-split input to the split solver") {
    const std::string path = write_file(
        "c4.graph", graph_text(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}}));
    auto res = run_cli("solve --class split --s 2 --input " + path);
    CHECK(res.exit_code == 2);
    CHECK(res.output.find("not a split graph") != std::string::npos);
  }
  SECTION("unequal interval lengths for the unit solver") {
    const std::string path = write_file("uneven.ivl", "2\n0 0 5\n1 1 7\n");
    auto res = run_cli("solve --class unit-interval --s 1 --input " + path);
    CHECK(res.exit_code == 2);
    CHECK(res.output.find("same length") != std::string::npos);
  }
  SECTION("missing input file") {
    auto res = run_cli("solve --class oracle --s 2 --input " +
                       scratch_path("does_not_exist.graph"));
    CHECK(res.exit_code == 2);
    CHECK(res.output.find("cannot open input file") != std::string::npos);
  }
  SECTION("out-of-range edge") {
    const std::string path = write_file("bad_edge.graph", "2 1\n0 5\n");
    auto res = run_cli("solve --class oracle --s 1 --input " + path);
    CHECK(res.exit_code == 2);
  }
  SECTION("unknown class and missing subcommand") {
    const std::string path = write_file("k3c.graph", complete_graph_text(3));
    CHECK(run_cli("solve --class planar --s 2 --input " + path).exit_code == 2);
    CHECK(run_cli("").exit_code == 2);
    CHECK(run_cli("solve --class oracle --s 0 --input " + path).exit_code == 2);
    CHECK(run_cli("solve --class oracle --s 2 --budget 2.5 --input " + path)
              .exit_code == 2);
  }
}

TEST_CASE("gen writes deterministic instances") {
  SECTION("the whole-universe exact cover image is the 8-vertex graph") {
    auto first = run_cli("gen x3c-split --u 3 --sets 1 --s 3 --seed 0");
    REQUIRE(first.exit_code == 0);
    std::istringstream text(first.output);
    Graph g = parse_graph(text);
    CHECK(g.n() == 8);
    CHECK(split_decompose(g).has_value());

    const std::string out = scratch_path("x3c.graph");
    auto second =
        run_cli("gen x3c-split --u 3 --sets 1 --s 3 --seed 0 --out " + out);
    REQUIRE(second.exit_code == 0);
    CHECK(second.output.empty());
    CHECK(read_file(out) == first.output);
  }
  SECTION("same seed, same bytes") {
    auto a = run_cli("gen random --kind cograph --n 8 --seed 1");
    auto b = run_cli("gen random --kind cograph --n 8 --seed 1");
    REQUIRE(a.exit_code == 0);
    CHECK(a.output == b.output);
    auto c = run_cli("gen random --kind cograph --n 8 --seed 2");
    CHECK(c.output != a.output);
  }
  SECTION("every random kind emits its parseable format") {
    for (const std::string kind : {"unit-intervals", "intervals"}) {
      auto res = run_cli("gen random --kind " + kind + " --n 6 --seed 3");
      REQUIRE(res.exit_code == 0);
      std::istringstream text(res.output);
      CHECK(parse_intervals(text).size() == 6);
    }
    auto bip = run_cli("gen random --kind bip-perm --n 9 --seed 4");
    REQUIRE(bip.exit_code == 0);
    std::istringstream bip_text(bip.output);
    BipartiteInstance inst = parse_bipartite(bip_text);
    CHECK(inst.graph.nl() + inst.graph.nr() == 9);
    CHECK(inst.order.has_value());
    auto split = run_cli("gen random --kind split --n 7 --seed 5");
    REQUIRE(split.exit_code == 0);
    std::istringstream split_text(split.output);
    CHECK(split_decompose(parse_graph(split_text)).has_value());
  }
  SECTION("the three-dimensional matching image is chordal") {
    auto res = run_cli("gen tdm-chordal --q 1 --seed 6");
    REQUIRE(res.exit_code == 0);
    std::istringstream text(res.output);
    Graph g = parse_graph(text);
    CHECK(g.n() == 9);
    CHECK(is_chordal(g));
  }
  SECTION("bad parameters are usage errors") {
    CHECK(run_cli("gen x3c-split --u 4 --sets 2 --s 3").exit_code == 2);
    CHECK(run_cli("gen x3c-split --u 6 --sets 1 --s 3").exit_code == 2);
    CHECK(run_cli("gen random --kind hypercube --n 8").exit_code == 2);
    CHECK(run_cli("gen tdm-chordal --q 0").exit_code == 2);
  }
}

TEST_CASE("bench prints one CSV row per size") {
  SECTION("rows have the documented shape") {
    auto res = run_cli("bench --class interval --sizes 30,3e1,60 --s 2 --seed 1");
    REQUIRE(res.exit_code == 0);
    auto lines = split_lines(res.output);
    REQUIRE(lines.size() == 3);
    for (size_t i = 0; i < lines.size(); ++i) {
      auto fields = split_fields(lines[i], ',');
      REQUIRE(fields.size() == 5);
      CHECK(fields[0] == "interval");
      CHECK(std::stoll(fields[1]) == (i < 2 ? 30 : 60));
      CHECK(std::stoll(fields[2]) >= 0);
      CHECK(std::stoll(fields[3]) >= 0);
      CHECK(fields[4] == "yes");
    }
  }
  SECTION("other classes report through the same format") {
    auto res = run_cli("bench --class split --sizes 12 --s 2 --seed 2");
    REQUIRE(res.exit_code == 0);
    auto lines = split_lines(res.output);
    REQUIRE(lines.size() == 1);
    auto fields = split_fields(lines[0], ',');
    REQUIRE(fields.size() == 5);
    CHECK(fields[0] == "split");
    CHECK(std::stoll(fields[1]) == 12);
    CHECK((fields[4] == "yes" || fields[4] == "no" || fields[4] == "refused"));
  }
  SECTION("bad bench parameters are usage errors") {
    CHECK(run_cli("bench --class interval --sizes 30 --s 3").exit_code == 2);
    CHECK(run_cli("bench --class interval --sizes 0 --s 2").exit_code == 2);
    CHECK(run_cli("bench --class interval --sizes , --s 2").exit_code == 2);
    CHECK(run_cli("bench --class mystery --sizes 30").exit_code == 2);
  }
}

TEST_CASE("the search budget comes from flag, environment, default in that order") {
  const std::string path = write_file("k8b.graph", complete_graph_text(8));
  const std::string args = "solve --class oracle --s 3 --input " + path;

  auto by_default = run_cli(args);
  CHECK(by_default.exit_code == 0);
  CHECK(by_default.output == "yes\n");

  auto by_env = run_cli_env("STARPART_BUDGET=1", args);
  CHECK(by_env.exit_code == 3);
  CHECK(by_env.output == "refused: exact search exceeded its expansion budget\n");

  auto flag_wins = run_cli_env("STARPART_BUDGET=1", args + " --budget 1e7");
  CHECK(flag_wins.exit_code == 0);
  CHECK(flag_wins.output == "yes\n");

  auto env_rejected = run_cli_env("STARPART_BUDGET=banana", args);
  CHECK(env_rejected.exit_code == 2);
}
