#include <random>

#include "doctest.h"
#include "matchstream/errors.hpp"
#include "matchstream/oracles.hpp"
#include "support.hpp"

using namespace matchstream;

namespace {

std::vector<std::pair<Vertex, Vertex>> keys(const Matching& m) {
  std::vector<std::pair<Vertex, Vertex>> out;
  for (EdgeId e : m.edges()) out.push_back(testsupport::key(m.graph(), e));
  return out;
}

WeightedGraph random_bipartite(int left, int right, double density, std::mt19937_64& rng) {
  std::vector<Edge> edges;
  std::bernoulli_distribution keep(density);
  for (int a = 0; a < left; ++a)
    for (int b = 0; b < right; ++b)
      if (keep(rng)) edges.push_back({a, left + b, 1});
  return WeightedGraph(left + right, edges);
}

}  // namespace

TEST_CASE("exact_mwm on the small worked graph") {
  // a b c d e f = 0..5
  WeightedGraph g(6, {{2, 3, 5}, {1, 2, 2}, {0, 2, 4}, {3, 5, 4}, {3, 4, 2}});
  ExactMatching r = exact_mwm(g);
  CHECK(r.value == 8);
  CHECK(r.matching.weight() == 8);
  CHECK(r.matching.contains(g.find_edge(0, 2)));
  CHECK(r.matching.contains(g.find_edge(3, 5)));

  WeightedGraph single(2, {{1, 0, 3}});
  CHECK(exact_mwm(single).matching.contains(0));
}

TEST_CASE("exact_mwm matches subset enumeration, including ties") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 300; ++trial) {
    const Vertex n = 2 + static_cast<Vertex>(rng() % 9);
    const EdgeId m = static_cast<EdgeId>(rng() % (n * (n - 1) / 2 + 1));
    // Small weight range so ties are common.
    WeightedGraph g = testsupport::random_graph(n, m, trial % 2 ? 3 : 50, rng);
    ExactMatching r = exact_mwm(g);
    auto brute = testsupport::brute_force_mwm(g);
    CHECK(r.value == brute.weight);
    CHECK(keys(r.matching) == brute.edges);
  }
}

TEST_CASE("exact_mwm under an arbitrary weight function") {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 200; ++trial) {
    WeightedGraph g = testsupport::random_graph(8, 14, 10, rng);
    std::vector<Weight> w(g.num_edges());
    for (auto& x : w) x = static_cast<Weight>(rng() % 15) - 5;
    WeightFn fn = [&w](EdgeId e) { return w[e]; };
    ExactMatching r = exact_mwm(g, fn);
    auto brute = testsupport::brute_force_mwm(g, fn);
    CHECK(r.value == brute.weight);
    CHECK(keys(r.matching) == brute.edges);
  }
}

TEST_CASE("exact_mwm refuses oversize inputs") {
  std::vector<Edge> edges;
  for (Vertex v = 0; v + 1 < 22; ++v) edges.push_back({v, v + 1, 1});
  WeightedGraph g(22, edges);
  CHECK_THROWS_AS(exact_mwm(g), OracleOversize);
  CHECK_NOTHROW(exact_mwm(g, OracleBudget{22, 64}));
  CHECK_THROWS_AS(exact_mwm(g, OracleBudget{22, 10}), OracleOversize);
}

TEST_CASE("bipartite cardinality matching") {
  std::vector<Edge> disjoint;
  for (Vertex i = 0; i < 5; ++i) disjoint.push_back({2 * i, 2 * i + 1, 1});
  CHECK(exact_mcm_bipartite(WeightedGraph(10, disjoint)).size() == 5);

  std::vector<Edge> k33;
  for (Vertex a = 0; a < 3; ++a)
    for (Vertex b = 3; b < 6; ++b) k33.push_back({a, b, 1});
  CHECK(exact_mcm_bipartite(WeightedGraph(6, k33)).size() == 3);

  CHECK_THROWS_AS(exact_mcm_bipartite(WeightedGraph(3, {{0, 1, 1}, {1, 2, 1}, {0, 2, 1}})), StructuralError);

  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 200; ++trial) {
    const int left = 1 + static_cast<int>(rng() % 6);
    const int right = 1 + static_cast<int>(rng() % 6);
    WeightedGraph g = random_bipartite(left, right, 0.35, rng);
    Matching mcm = exact_mcm_bipartite(g);
    CHECK(mcm.size() == testsupport::brute_force_mcm(g));
    CHECK(mcm.size() == testsupport::brute_force_vertex_cover(g));
  }
}

TEST_CASE("hopcroft_karp warm start keeps optimality") {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 200; ++trial) {
    BipartiteGraph b;
    b.left = 1 + static_cast<int>(rng() % 8);
    b.right = 1 + static_cast<int>(rng() % 8);
    for (int l = 0; l < b.left; ++l)
      for (int r = 0; r < b.right; ++r)
        if (rng() % 3 == 0) b.edges.push_back({l, r});
    CardinalityMatching cold = hopcroft_karp(b);
    // Greedy warm start.
    CardinalityMatching init{std::vector<int>(b.left, -1), std::vector<int>(b.right, -1), 0};
    for (auto [l, r] : b.edges)
      if (init.mate_left[l] < 0 && init.mate_right[r] < 0) {
        init.mate_left[l] = r;
        init.mate_right[r] = l;
        ++init.size;
      }
    CardinalityMatching warm = hopcroft_karp(b, &init);
    CHECK(warm.size == cold.size);
    std::vector<Edge> edges;
    for (auto [l, r] : b.edges) edges.push_back({l, b.left + r, 1});
    CHECK(static_cast<std::size_t>(cold.size) == testsupport::brute_force_mcm(WeightedGraph(b.left + b.right, edges)));
    for (int l = 0; l < b.left; ++l)
      if (warm.mate_left[l] >= 0) CHECK(warm.mate_right[warm.mate_left[l]] == l);
  }
}

TEST_CASE("general cardinality and reference weight against enumeration") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 200; ++trial) {
    const Vertex n = 2 + static_cast<Vertex>(rng() % 9);
    WeightedGraph g = testsupport::random_graph(n, static_cast<EdgeId>(rng() % (n * (n - 1) / 2 + 1)), 40, rng);
    CHECK(max_cardinality_matching(g).size() == testsupport::brute_force_mcm(g));
    CHECK(reference_mwm_weight(g) == testsupport::brute_force_mwm(g).weight);
  }
}

TEST_CASE("short augmentation examples") {
  WeightedGraph p(4, {{0, 1, 1}, {1, 2, 1}, {2, 3, 1}});
  Matching m(p);
  m.add(1);
  CHECK(has_short_augmentation(m, 2));
  CHECK_FALSE(has_short_augmentation(m, 1));

  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    WeightedGraph g = testsupport::random_graph(9, 16, 30, rng);
    Matching best = exact_mwm(g).matching;
    for (int ell = 1; ell <= 4; ++ell) CHECK_FALSE(has_short_augmentation(best, ell));
  }
}

TEST_CASE("short augmentation search agrees with edge-subset enumeration") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 150; ++trial) {
    const Vertex n = 3 + static_cast<Vertex>(rng() % 6);
    WeightedGraph g = testsupport::random_graph(n, static_cast<EdgeId>(rng() % (n * (n - 1) / 2 + 1)), 12, rng);
    Matching m(g);
    for (EdgeId e = 0; e < g.num_edges(); ++e)
      if (m.can_add(e) && rng() % 2) m.add(e);
    for (int ell = 1; ell <= 3; ++ell) {
      auto brute = testsupport::brute_best_short_aug(m, 2 * ell - 1);
      const bool expected = brute && brute->gain > 0;
      auto found = find_short_augmentation(m, ell);
      CHECK(found.has_value() == expected);
      if (found) {
        CHECK(static_cast<int>(found->edges.size()) <= 2 * ell - 1);
        CHECK(gain(*found, m) > 0);
      }
    }
  }
}

TEST_CASE("no short augmentation implies the length bound") {
  std::mt19937_64 rng(29);
  int checked = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const Vertex n = 4 + static_cast<Vertex>(rng() % 7);
    WeightedGraph g = testsupport::random_graph(n, static_cast<EdgeId>(rng() % (n * (n - 1) / 2 + 1)), 30, rng);
    const int ell = 1 + static_cast<int>(rng() % 3);
    Matching m(g);
    for (EdgeId e = 0; e < g.num_edges(); ++e)
      if (m.can_add(e) && rng() % 2) m.add(e);
    // Local search with the brute-force improver only.
    while (true) {
      auto aug = testsupport::brute_best_short_aug(m, 2 * ell - 1);
      if (!aug || aug->gain <= 0) break;
      m = testsupport::apply_edge_set(m, aug->edges);
    }
    CHECK_FALSE(has_short_augmentation(m, ell));
    const Weight opt = testsupport::brute_force_mwm(g).weight;
    CHECK(static_cast<double>(m.weight()) >= (1.0 - 1.0 / ell) * static_cast<double>(opt) - 1e-9);
    ++checked;
  }
  CHECK(checked == 200);
}
