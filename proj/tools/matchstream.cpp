#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "matchstream/errors.hpp"
#include "matchstream/generators.hpp"
#include "matchstream/graph.hpp"
#include "matchstream/layered.hpp"
#include "matchstream/multipass.hpp"
#include "matchstream/oracles.hpp"
#include "matchstream/rand_arr.hpp"
#include "matchstream/report.hpp"
#include "matchstream/stream.hpp"
#include "matchstream/unweighted_aug.hpp"

using namespace matchstream;
using Json = nlohmann::ordered_json;

namespace {

enum ExitCode { kOk = 0, kInput = 1, kParam = 2, kBudget = 3, kOversize = 4 };

struct MemoryFlags {
  bool strict = false;
  double c = 8.0;
  double logk = 2.0;

  MemoryMeter meter(Vertex n) const {
    return MemoryMeter(n, c, logk, strict ? MemoryMode::Strict : MemoryMode::Lenient);
  }
};

void add_memory_flags(CLI::App* sub, MemoryFlags& f) {
  sub->add_flag("--strict-memory", f.strict, "Fail when stored edges exceed the budget");
  sub->add_option("--mem-c", f.c, "Memory budget constant c in c*n*(log2 n)^k");
  sub->add_option("--mem-logk", f.logk, "Memory budget exponent k");
}

long double parse_granularity(const std::string& s) {
  long double v = 0;
  const auto slash = s.find('/');
  try {
    if (slash == std::string::npos) {
      v = std::stold(s);
    } else {
      v = std::stold(s.substr(0, slash)) / std::stold(s.substr(slash + 1));
    }
  } catch (const std::exception&) {
    throw ParameterError("cannot parse granularity '" + s + "'");
  }
  if (!(v > 0 && v <= 1)) throw ParameterError("granularity must lie in (0, 1]");
  return v;
}

Matching read_matching_file(const WeightedGraph& g, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  long long k;
  if (!(in >> k) || k < 0) throw InputError(path + ": expected matched edge count");
  Matching m(g);
  for (long long i = 0; i < k; ++i) {
    long long u, v;
    if (!(in >> u >> v)) throw InputError(path + ": expected 'u v' for edge " + std::to_string(i));
    if (u < 0 || v < 0 || u >= g.num_vertices() || v >= g.num_vertices())
      throw InputError(path + ": vertex out of range");
    const EdgeId e = g.find_edge(static_cast<Vertex>(u), static_cast<Vertex>(v));
    if (e == kNoEdge) throw InputError(path + ": " + std::to_string(u) + " " + std::to_string(v) + " is not an edge");
    m.add(e);
  }
  return m;
}

void emit(const Json& j, bool as_json) {
  if (as_json) {
    std::cout << j.dump() << '\n';
    return;
  }
  for (auto it = j.begin(); it != j.end(); ++it) {
    std::cout << it.key() << '=';
    if (it->is_string())
      std::cout << it->get<std::string>();
    else
      std::cout << it->dump();
    std::cout << '\n';
  }
}

struct OptValue {
  Weight weight;
  const char* source;
};

OptValue optimum(const WeightedGraph& g) {
  try {
    return {exact_mwm(g).value, "exact"};
  } catch (const OracleOversize&) {
    return {reference_mwm_weight(g), "reference"};
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Streaming weighted matching: generators, runners, oracle and reports"};
  app.require_subcommand(1);

  GeneratorSpec gen_spec;
  std::string family = "erdos_renyi";
  std::string gen_out;
  auto* gen = app.add_subcommand("gen", "Generate a graph file");
  gen->add_option("--family", family, "erdos_renyi | tight_half | cycle_family | weight_classes")->required();
  gen->add_option("--n", gen_spec.n, "Vertices")->required();
  gen->add_option("--m", gen_spec.m, "Edges (erdos_renyi, weight_classes)");
  gen->add_option("--weight-max", gen_spec.weight_max, "Largest weight");
  gen->add_option("--seed", gen_spec.seed, "Seed");
  gen->add_option("--out", gen_out, "Output file (default stdout)");

  std::string oracle_graph;
  OracleBudget oracle_budget;
  auto* oracle = app.add_subcommand("oracle", "Exact maximum weight matching of a small graph");
  oracle->add_option("graph", oracle_graph, "Graph file")->required();
  oracle->add_option("--max-vertices", oracle_budget.max_vertices, "Vertex budget");
  oracle->add_option("--max-edges", oracle_budget.max_edges, "Edge budget");

  std::string graph_path;
  std::uint64_t seed = 0;
  bool as_json = false;
  bool with_oracle = false;
  MemoryFlags mem;

  double unw_p = 0.1, unw_beta = 0.5;
  auto* unw = app.add_subcommand("run-unweighted", "Single-pass unweighted matching on a random-order stream");
  unw->add_option("--graph", graph_path, "Graph file")->required();
  unw->add_option("--seed", seed, "Stream seed");
  unw->add_option("--p", unw_p, "Fraction of the stream used for the greedy base matching");
  unw->add_option("--beta", unw_beta, "Augmenting-path density parameter");
  unw->add_flag("--json", as_json, "JSON output");
  add_memory_flags(unw, mem);

  std::optional<double> ra_p;
  double ra_alpha = 0.02, ra_beta = 1.0 / 16000.0;
  auto* ra = app.add_subcommand("run-random-arrival", "Single-pass weighted matching on a random-order stream");
  ra->add_option("--graph", graph_path, "Graph file")->required();
  ra->add_option("--seed", seed, "Stream seed");
  ra->add_option("--p", ra_p, "First-phase fraction (default 100/log2 n, clamped to [1/m, 1/2])");
  ra->add_option("--alpha", ra_alpha, "Excess slack");
  ra->add_option("--beta", ra_beta, "Augmenting-path density parameter");
  ra->add_flag("--with-oracle", with_oracle, "Report the optimum and the ratio");
  ra->add_flag("--json", as_json, "JSON output");
  add_memory_flags(ra, mem);

  double mp_eps = 0.4;
  std::string mp_g;
  std::optional<int> mp_kmax;
  int mp_iters = 50;
  bool faithful = false;
  auto* mp = app.add_subcommand("run-multipass", "Multi-pass (1-eps)-style improvement through layered graphs");
  mp->add_option("--graph", graph_path, "Graph file")->required();
  mp->add_option("--eps", mp_eps, "Accuracy parameter");
  mp->add_option("--g", mp_g, "Granularity, e.g. 1/8 (default 1/8)");
  mp->add_option("--kmax", mp_kmax, "Longest threshold vector (default 9)");
  mp->add_option("--iters", mp_iters, "Iteration limit");
  mp->add_flag("--paper-faithful", faithful, "g = eps^12 and the full pair length (needs eps < 1/16)");
  mp->add_option("--seed", seed, "Seed for the random splits");
  mp->add_flag("--with-oracle", with_oracle, "Report the optimum and the ratio");
  mp->add_flag("--json", as_json, "JSON output");
  add_memory_flags(mp, mem);

  std::string matching_path, dump_out, origin_out, dump_g = "1/8";
  std::size_t pair_index = 0;
  double dump_W = 1, dump_eps = 0.4;
  int dump_kmax = 9;
  auto* dump = app.add_subcommand("layered-dump", "Write the layered graph of one threshold pair");
  dump->add_option("--graph", graph_path, "Graph file")->required();
  dump->add_option("--matching", matching_path, "Matching file: a count line, then 'u v' lines")->required();
  dump->add_option("--pair-index", pair_index, "Index into the good-pair enumeration")->required();
  dump->add_option("--W", dump_W, "Weight scale")->required();
  dump->add_option("--eps", dump_eps, "Accuracy parameter");
  dump->add_option("--g", dump_g, "Granularity");
  dump->add_option("--kmax", dump_kmax, "Longest threshold vector");
  dump->add_option("--seed", seed, "Seed for the random split");
  dump->add_option("--out", dump_out, "Layered graph file (default stdout)");
  dump->add_option("--origin-out", origin_out, "Origin map file (default <out>.origin when --out is given)");

  std::vector<std::string> report_inputs;
  auto* rep = app.add_subcommand("report", "CSV summary of runner JSON files");
  rep->add_option("inputs", report_inputs, "Runner JSON files");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kParam;
  }

  try {
    if (gen->parsed()) {
      gen_spec.family = parse_family(family);
      const WeightedGraph g = generate(gen_spec);
      if (gen_out.empty()) {
        write_graph(std::cout, g);
      } else {
        std::ofstream out(gen_out);
        if (!out) throw InputError("cannot write " + gen_out);
        write_graph(out, g);
      }
    } else if (oracle->parsed()) {
      const WeightedGraph g = read_graph_file(oracle_graph);
      const ExactMatching best = exact_mwm(g, oracle_budget);
      std::cout << "weight=" << best.value << '\n';
      for (EdgeId e : best.matching.edges()) {
        const Edge& ed = g.edge(e);
        std::cout << ed.u << ' ' << ed.v << ' ' << ed.w << '\n';
      }
    } else if (unw->parsed()) {
      const WeightedGraph g = read_graph_file(graph_path);
      MemoryMeter meter = mem.meter(g.num_vertices());
      StreamSession session(g, seed);
      const UnweightedResult r = random_arrival_unweighted(session, unw_p, unw_beta, &meter);
      const std::size_t opt = max_cardinality_matching(g).size();
      Json j;
      j["schema"] = 1;
      j["algorithm"] = "unweighted";
      j["seed"] = seed;
      j["n"] = g.num_vertices();
      j["m"] = g.num_edges();
      j["p"] = unw_p;
      j["size"] = r.matching.size();
      j["opt_size"] = opt;
      j["ratio"] = opt == 0 ? 1.0 : static_cast<double>(r.matching.size()) / static_cast<double>(opt);
      j["branch"] = branch_name(r.branch);
      j["peak_edges"] = meter.peak();
      j["passes"] = session.passes();
      emit(j, as_json);
    } else if (ra->parsed()) {
      const WeightedGraph g = read_graph_file(graph_path);
      MemoryMeter meter = mem.meter(g.num_vertices());
      StreamSession session(g, seed);
      RandArrParams params;
      params.p = ra_p;
      params.alpha = ra_alpha;
      params.beta = ra_beta;
      RandArrResult r = rand_arr(session, params, &meter);
      Json j;
      j["schema"] = 1;
      j["algorithm"] = "random_arrival";
      j["seed"] = seed;
      j["n"] = g.num_vertices();
      j["m"] = g.num_edges();
      j["weight"] = r.report.weight;
      if (with_oracle) {
        const OptValue opt = optimum(g);
        r.report.opt_weight = opt.weight;
        r.report.ratio = opt.weight == 0 ? 1.0 : static_cast<double>(r.report.weight) / static_cast<double>(opt.weight);
        j["opt_weight"] = opt.weight;
        j["opt_source"] = opt.source;
        j["ratio"] = *r.report.ratio;
      }
      j["peak_edges"] = r.report.peak_edges;
      j["branch_chosen"] = r.report.branch_chosen;
      j["p_used"] = r.report.p_used;
      j["m0_weight"] = r.report.m0_weight;
      j["m1_weight"] = r.report.m1_weight;
      j["m2_weight"] = r.report.m2_weight;
      j["stack_edges"] = r.report.stack_edges;
      j["residual_edges"] = r.report.residual_edges;
      j["residual_solver"] = r.report.residual_solver;
      j["passes"] = r.report.passes;
      emit(j, as_json);
    } else if (mp->parsed()) {
      const WeightedGraph g = read_graph_file(graph_path);
      MultipassConfig cfg = faithful ? faithful_config(mp_eps) : relaxed_config();
      cfg.eps = mp_eps;
      if (!faithful) {
        if (!mp_g.empty()) cfg.g = parse_granularity(mp_g);
        if (mp_kmax) cfg.k_max = *mp_kmax;
      }
      cfg.iters = mp_iters;
      cfg.seed = seed;
      cfg.mem_c = mem.c;
      cfg.mem_logk = mem.logk;
      MultipassResult r = solve(g, cfg);
      if (mem.strict && r.report.peak_edges > memory_budget(g.num_vertices(), mem.c, mem.logk))
        throw BudgetViolation("multipass", "multipass stored " + std::to_string(r.report.peak_edges) +
                                               " edges, budget " +
                                               std::to_string(memory_budget(g.num_vertices(), mem.c, mem.logk)));
      Json j;
      j["schema"] = 1;
      j["algorithm"] = "multipass";
      j["seed"] = seed;
      j["n"] = g.num_vertices();
      j["m"] = g.num_edges();
      j["eps"] = cfg.eps;
      j["g"] = static_cast<double>(cfg.g);
      j["k_max"] = cfg.k_max;
      j["final_weight"] = r.report.final_weight;
      if (with_oracle) {
        const OptValue opt = optimum(g);
        j["opt_weight"] = opt.weight;
        j["opt_source"] = opt.source;
        j["ratio"] = opt.weight == 0 ? 1.0
                                     : static_cast<double>(r.report.final_weight) / static_cast<double>(opt.weight);
      }
      j["iterations_run"] = r.report.iterations_run;
      j["passes"] = r.report.passes;
      j["peak_edges"] = r.report.peak_edges;
      j["per_iteration_gains"] = r.report.per_iteration_gains;
      emit(j, as_json);
    } else if (dump->parsed()) {
      const WeightedGraph g = read_graph_file(graph_path);
      const Matching m = read_matching_file(g, matching_path);
      PairSpace space;
      space.eps = dump_eps;
      space.g = parse_granularity(dump_g);
      space.k_max = dump_kmax;
      const std::vector<GoodPair> pairs = enumerate_good_pairs(space);
      if (pair_index >= pairs.size())
        throw ParameterError("pair index " + std::to_string(pair_index) + " out of range (" +
                             std::to_string(pairs.size()) + " pairs)");
      if (!(dump_W > 0)) throw ParameterError("W must be positive");
      const Parametrization p = random_bipartition(m, seed);
      const LayeredGraph lg = build_layered(m, p, pairs[pair_index], space.g, dump_W);
      std::ostringstream graph_text, origin_text;
      graph_text << lg.vertices.size() << ' ' << lg.edges.size() << '\n';
      for (std::size_t i = 0; i < lg.edges.size(); ++i) {
        const LayeredEdge& e = lg.edges[i];
        graph_text << e.from << ' ' << e.to << " 1\n";
        const Edge& o = g.edge(e.origin);
        origin_text << i << ' ' << o.u << ' ' << o.v << ' ' << e.layer << '\n';
      }
      if (dump_out.empty()) {
        std::cout << graph_text.str();
      } else {
        std::ofstream out(dump_out);
        if (!out) throw InputError("cannot write " + dump_out);
        out << graph_text.str();
        if (origin_out.empty()) origin_out = dump_out + ".origin";
      }
      if (!origin_out.empty()) {
        std::ofstream out(origin_out);
        if (!out) throw InputError("cannot write " + origin_out);
        out << origin_text.str();
      }
    } else if (rep->parsed()) {
      std::cout << report_csv_files(report_inputs);
    }
  } catch (const ParameterError& e) {
    std::cerr << "parameter error: " << e.what() << '\n';
    return kParam;
  } catch (const EnumerationGuard& e) {
    std::cerr << "parameter error: " << e.what() << '\n';
    return kParam;
  } catch (const BudgetViolation& e) {
    std::cerr << "memory budget violation in " << e.module() << ": " << e.what() << '\n';
    return kBudget;
  } catch (const OracleOversize& e) {
    std::cerr << "oracle oversize: " << e.what() << '\n';
    return kOversize;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInput;
  }
  return kOk;
}
