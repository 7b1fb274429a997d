#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "doctest.h"
#include "matchstream/graph.hpp"
#include "matchstream/oracles.hpp"
#include "support.hpp"
#include "json.hpp"

using namespace matchstream;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

fs::path scratch() {
  static fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / ("matchstream_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

Run run(const std::string& args, const std::string& env = "") {
  const fs::path err = scratch() / "stderr.txt";
  const std::string cmd = env + " " + std::string(MATCHSTREAM_CLI) + " " + args + " 2>" + err.string();
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  std::array<char, 4096> buf{};
  std::size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), got);
  const int status = pclose(pipe);
  return {WEXITSTATUS(status), out, slurp(err)};
}

std::string path(const std::string& name) { return (scratch() / name).string(); }

WeightedGraph parse(const std::string& text) {
  std::istringstream in(text);
  return read_graph(in);
}

}  // namespace

TEST_CASE("gen families") {
  Run tight = run("gen --family tight_half --n 4 --weight-max 10");
  REQUIRE(tight.code == 0);
  WeightedGraph g = parse(tight.out);
  // Greedy in stream order against the optimum.
  Matching greedy(g);
  for (EdgeId e = 0; e < g.num_edges(); ++e)
    if (greedy.can_add(e)) greedy.add(e);
  CHECK(2 * greedy.weight() == testsupport::brute_force_mwm(g).weight);

  Run cyc = run("gen --family cycle_family --n 4");
  REQUIRE(cyc.code == 0);
  WeightedGraph c = parse(cyc.out);
  REQUIRE(c.num_edges() == 4);
  std::multiset<Weight> ws;
  for (const Edge& e : c.edges()) ws.insert(e.w);
  CHECK(ws == std::multiset<Weight>{3, 3, 4, 4});
  CHECK(testsupport::brute_force_mwm(c).weight == 8);

  Run wc = run("gen --family weight_classes --n 30 --m 80 --seed 3");
  REQUIRE(wc.code == 0);
  CHECK(parse(wc.out).num_edges() == 80);
}

TEST_CASE("gen is deterministic and round-trips") {
  Run a = run("gen --family erdos_renyi --n 30 --m 90 --seed 5");
  Run b = run("gen --family erdos_renyi --n 30 --m 90 --seed 5");
  Run c = run("gen --family erdos_renyi --n 30 --m 90 --seed 6");
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out != c.out);
  std::ostringstream os;
  write_graph(os, parse(a.out));
  CHECK(os.str() == a.out);

  CHECK(run("gen --family erdos_renyi --n 5 --m 11").code == 2);
  CHECK(run("gen --family erdos_renyi --n 1 --m 0").code == 2);
  CHECK(run("gen --family nope --n 5 --m 3").code == 2);
}

TEST_CASE("oracle") {
  std::ofstream(path("fig1.txt")) << "6 5\n2 3 5\n1 2 2\n0 2 4\n3 5 4\n3 4 2\n";
  Run r = run("oracle " + path("fig1.txt"));
  REQUIRE(r.code == 0);
  CHECK(r.out == "weight=8\n0 2 4\n3 5 4\n");

  REQUIRE(run("gen --family erdos_renyi --n 25 --m 60 --seed 1 --out " + path("big.txt")).code == 0);
  CHECK(run("oracle " + path("big.txt")).code == 4);
  CHECK(run("oracle " + path("missing.txt")).code == 1);
  std::ofstream(path("broken.txt")) << "3 2\n0 1 1\n";
  CHECK(run("oracle " + path("broken.txt")).code == 1);
}

TEST_CASE("runners, report and determinism") {
  REQUIRE(run("gen --family erdos_renyi --n 12 --m 30 --seed 2 --out " + path("g.txt")).code == 0);
  const std::string g = " --graph " + path("g.txt");

  Run ra = run("run-random-arrival" + g + " --seed 4 --with-oracle --json");
  REQUIRE(ra.code == 0);
  auto j = nlohmann::json::parse(ra.out);
  CHECK(j["schema"] == 1);
  CHECK(j["passes"] == 1);
  CHECK(j["ratio"].get<double>() == doctest::Approx(j["weight"].get<double>() / j["opt_weight"].get<double>()));
  CHECK(run("run-random-arrival" + g + " --seed 4 --with-oracle --json").out == ra.out);

  Run mp = run("run-multipass" + g + " --seed 4 --with-oracle --json");
  REQUIRE(mp.code == 0);
  CHECK(run("run-multipass" + g + " --seed 4 --with-oracle --json", "MATCHSTREAM_THREADS=4").out == mp.out);
  CHECK(run("run-multipass" + g + " --seed 4 --with-oracle --json", "MATCHSTREAM_THREADS=1").out == mp.out);
  auto jm = nlohmann::json::parse(mp.out);
  CHECK(jm.contains("per_iteration_gains"));
  CHECK(jm["final_weight"].get<Weight>() <= jm["opt_weight"].get<Weight>());

  Run uw = run("run-unweighted" + g + " --seed 4 --p 0.1 --json");
  REQUIRE(uw.code == 0);
  auto ju = nlohmann::json::parse(uw.out);
  CHECK(ju["passes"] == 1);
  CHECK(ju.contains("opt_size"));

  std::ofstream(path("ra.json")) << ra.out;
  std::ofstream(path("mp.json")) << mp.out;
  std::ofstream(path("uw.json")) << uw.out;
  const std::string header = "algorithm,seed,n,m,weight,opt,ratio,passes,peak_edges\n";
  CHECK(run("report").out == header);
  Run one = run("report " + path("ra.json"));
  CHECK(std::count(one.out.begin(), one.out.end(), '\n') == 2);
  Run three = run("report " + path("ra.json") + " " + path("mp.json") + " " + path("uw.json"));
  REQUIRE(three.code == 0);
  std::istringstream rows(three.out);
  std::string line;
  std::getline(rows, line);
  int count = 0;
  while (std::getline(rows, line)) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    REQUIRE(cells.size() == 9);
    const double weight = std::stod(cells[4]), opt = std::stod(cells[5]), ratio = std::stod(cells[6]);
    CHECK(std::abs(weight / opt - ratio) <= 1e-9);
    ++count;
  }
  CHECK(count == 3);
  CHECK(run("report " + path("ra.json") + " " + path("mp.json")).out ==
        run("report " + path("ra.json") + " " + path("mp.json")).out);

  std::ofstream(path("bad.json")) << "{";
  Run bad = run("report " + path("bad.json"));
  CHECK(bad.code == 1);
  CHECK(bad.err.find("bad.json") != std::string::npos);
}

TEST_CASE("parameter, budget and usage errors") {
  REQUIRE(run("gen --family erdos_renyi --n 40 --m 200 --seed 2 --out " + path("m.txt")).code == 0);
  const std::string g = " --graph " + path("m.txt");
  CHECK(run("run-random-arrival" + g + " --strict-memory --mem-c 0.01").code == 3);
  CHECK(run("run-random-arrival" + g + " --strict-memory").code == 0);
  CHECK(run("run-random-arrival" + g + " --p 0.9").code == 2);
  CHECK(run("run-multipass" + g + " --eps 1.5").code == 2);
  CHECK(run("run-multipass" + g + " --paper-faithful --eps 0.3").code == 2);
  CHECK(run("run-multipass" + g + " --bogus").code == 2);
  CHECK(run("run-unweighted" + g + " --beta 0").code == 2);
  CHECK(run("").code != 0);
}

TEST_CASE("layered dump") {
  // a..f path, ab cd ef matched.
  std::ofstream(path("six.txt")) << "6 5\n0 1 1\n1 2 2\n2 3 1\n3 4 2\n4 5 1\n";
  std::ofstream(path("six.m")) << "3\n0 1\n2 3\n4 5\n";
  Run r = run("layered-dump --graph " + path("six.txt") + " --matching " + path("six.m") +
              " --pair-index 0 --W 8 --g 1/8 --eps 0.4 --kmax 3 --seed 1 --out " + path("lg.txt"));
  REQUIRE(r.code == 0);
  WeightedGraph lg = read_graph_file(path("lg.txt"));
  std::ifstream side(path("lg.txt") + ".origin");
  int lines = 0;
  std::string line;
  while (std::getline(side, line)) {
    std::istringstream ls(line);
    int id, u, v, t;
    REQUIRE(static_cast<bool>(ls >> id >> u >> v >> t));
    CHECK(id == lines);
    CHECK(t >= 1);
    ++lines;
  }
  CHECK(lines == lg.num_edges());
  Run again = run("layered-dump --graph " + path("six.txt") + " --matching " + path("six.m") +
                  " --pair-index 0 --W 8 --g 1/8 --eps 0.4 --kmax 3 --seed 1");
  CHECK(again.out == slurp(path("lg.txt")));
  CHECK(run("layered-dump --graph " + path("six.txt") + " --matching " + path("six.m") +
            " --pair-index 999999999 --W 8 --g 1/8 --eps 0.4 --kmax 3")
            .code == 2);
}
