#include <random>

#include "doctest.h"
#include "matchstream/errors.hpp"
#include "matchstream/generators.hpp"
#include "matchstream/random.hpp"
#include "matchstream/rand_arr.hpp"
#include "matchstream/stream.hpp"
#include "support.hpp"

using namespace matchstream;

TEST_CASE("single edge") {
  WeightedGraph g(2, {{0, 1, 9}});
  StreamSession s(g, 1);
  RandArrResult r = rand_arr(s);
  CHECK(r.matching.contains(0));
  CHECK(r.report.weight == 9);
  CHECK(r.report.passes == 1);

  StreamSession s2(g, 1);
  CHECK_THROWS_AS(rand_arr(s2, RandArrParams{0.5}), ParameterError);
  StreamSession s3(g, 1);
  CHECK_THROWS_AS(rand_arr(s3, RandArrParams{0.7}), ParameterError);
}

TEST_CASE("default prefix fraction") {
  CHECK(default_prefix_fraction(60, 300) == 0.5);
  CHECK(default_prefix_fraction(60, 1) == 0.5);
}

TEST_CASE("two-phase worked example") {
  // a..h = 0..7. Phase one: ab=10, cd=10, ef=1, gh=0. Phase two: ad=20, ac=13, cf=8, eg=1, eh=2, fh=1.
  WeightedGraph g(8,
                  {{0, 1, 10}, {2, 3, 10}, {4, 5, 1}, {6, 7, 0}, {0, 3, 20}, {0, 2, 13}, {2, 5, 8}, {4, 6, 1},
                   {4, 7, 2}, {5, 7, 1}},
                  GraphLimits{0, 4});
  std::vector<EdgeId> order{0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
  bool saw_augmented = false, saw_plain = false;
  for (std::uint64_t seed = 0; seed < 64; ++seed) {
    StreamSession s = StreamSession::with_order(g, order, seed);
    RandArrResult r = rand_arr(s, RandArrParams{0.4});
    CHECK(r.report.m0_weight == 21);
    CHECK(r.report.residual_edges == 1);  // only eh beats its potentials
    CHECK(r.report.m1_weight == 22);      // eh, then cd and ab from the stack
    CHECK(r.report.weight >= 21);

    // The 3-augmentation b-a-d-c-f-e needs cd marked and ab, ef unmarked.
    Matching m0(g);
    m0.add(0);
    m0.add(1);
    m0.add(2);
    auto marked = sample_marked(m0, mix_seed(seed, kMarkSeedTag));
    if (marked == std::vector<EdgeId>{1}) {
      CHECK(r.report.m2_weight == 28);
      CHECK(r.report.branch_chosen == "M2");
      CHECK(r.report.weight == 28);
      saw_augmented = true;
    } else {
      CHECK(r.report.weight == 22);
      saw_plain = true;
    }
  }
  CHECK(saw_augmented);
  CHECK(saw_plain);
}

TEST_CASE("small random graphs against the exact optimum") {
  std::mt19937_64 rng(51);
  double sum = 0;
  int runs = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const Vertex n = 4 + static_cast<Vertex>(rng() % 11);
    const EdgeId max_m = std::min<EdgeId>(n * (n - 1) / 2, 40);
    WeightedGraph g = testsupport::random_graph(n, 2 + static_cast<EdgeId>(rng() % (max_m - 1)), 100, rng);
    const Weight opt = testsupport::brute_force_mwm(g).weight;
    StreamSession s(g, rng());
    MemoryMeter meter(n, 8, 2, MemoryMode::Strict);
    RandArrResult r = rand_arr(s, {}, &meter);
    CHECK(testsupport::recompute_weight(r.matching) == r.report.weight);
    CHECK(r.report.weight >= r.report.m0_weight);
    CHECK(r.report.weight == std::max(r.report.m1_weight, r.report.m2_weight));
    CHECK(r.report.weight <= opt);
    CHECK(meter.stored() == 0);
    sum += static_cast<double>(r.report.weight) / static_cast<double>(opt);
    ++runs;
  }
  CHECK(sum / runs >= 0.5);
}

TEST_CASE("residual matching is worth half when the first phase misses the optimum") {
  std::mt19937_64 rng(53);
  double excess = 0;
  int runs = 0;
  for (int trial = 0; trial < 150; ++trial) {
    const Vertex n = 4 + static_cast<Vertex>(rng() % 9);
    WeightedGraph g = testsupport::random_graph(n, static_cast<EdgeId>(n * (n - 1) / 4), 100, rng);
    auto best = testsupport::brute_force_mwm(g);
    if (best.weight == 0) continue;
    std::vector<char> in_opt(g.num_edges(), 0);
    for (auto [u, v] : best.edges) in_opt[g.find_edge(u, v)] = 1;
    std::vector<EdgeId> first, second;
    for (EdgeId e = 0; e < g.num_edges(); ++e) (in_opt[e] ? second : first).push_back(e);
    std::shuffle(first.begin(), first.end(), rng);
    std::shuffle(second.begin(), second.end(), rng);
    // Put OPT edges strictly after the first phase.
    if (first.size() < second.size()) continue;
    std::vector<EdgeId> order = first;
    order.insert(order.end(), second.begin(), second.end());
    const double p = static_cast<double>(g.num_edges() / 2) / static_cast<double>(g.num_edges());
    StreamSession s = StreamSession::with_order(g, order, rng());
    RandArrResult r = rand_arr(s, RandArrParams{p});
    CHECK(2 * r.report.m1_weight >= best.weight);
    excess += static_cast<double>(r.report.m1_weight) / static_cast<double>(best.weight) - 0.5;
    ++runs;
  }
  REQUIRE(runs > 50);
  CHECK(excess / runs > 0);
  MESSAGE("mean M1 ratio above one half: " << excess / runs);
}

TEST_CASE("n=60 random graphs stay above half of the reference optimum") {
  GeneratorSpec spec{Family::ErdosRenyi, 60, 300, 100, 7};
  WeightedGraph g = generate(spec);
  const double ref = static_cast<double>(reference_mwm_weight(g));
  double sum = 0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    StreamSession s(g, seed);
    MemoryMeter meter(60, 8, 2, MemoryMode::Strict);
    RandArrResult r = rand_arr(s, {}, &meter);
    CHECK(testsupport::recompute_weight(r.matching) == r.report.weight);
    sum += static_cast<double>(r.report.weight);
  }
  CHECK(sum / 200 >= 0.5 * ref);
}
