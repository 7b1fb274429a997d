#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "matchstream/graph.hpp"

namespace matchstream {

struct OracleBudget {
  int max_vertices = 20;
  int max_edges = 64;
};

using WeightFn = std::function<Weight(EdgeId)>;

struct ExactMatching {
  Matching matching;
  // Weight under the weight function the oracle was asked to maximize.
  Weight value;
};

// Maximum weight matching by memoized search over vertex subsets. Only edges of positive
// weight are used; among optimal matchings the lexicographically smallest canonical edge list
// is returned. Throws OracleOversize when the positive-weight support exceeds the budget.
ExactMatching exact_mwm(const WeightedGraph& g, const WeightFn& weight, OracleBudget budget = {});
ExactMatching exact_mwm(const WeightedGraph& g, OracleBudget budget = {});

// Two-sided graph with sides indexed independently.
struct BipartiteGraph {
  int left = 0;
  int right = 0;
  std::vector<std::pair<int, int>> edges;  // (left index, right index)
};

struct CardinalityMatching {
  std::vector<int> mate_left;   // right index or -1
  std::vector<int> mate_right;  // left index or -1
  int size = 0;
};

// Hopcroft-Karp, optionally warm-started from a valid matching.
CardinalityMatching hopcroft_karp(const BipartiteGraph& b, const CardinalityMatching* init = nullptr);

// Maximum cardinality matching of a bipartite WeightedGraph (weights ignored).
// Throws StructuralError when g has an odd cycle.
Matching exact_mcm_bipartite(const WeightedGraph& g);

// Maximum cardinality matching of a general graph (weights ignored).
Matching max_cardinality_matching(const WeightedGraph& g);

// Maximum matching weight of a general graph with no size limit; reference values for
// instances beyond exact_mwm's budget.
Weight reference_mwm_weight(const WeightedGraph& g);

// Some alternating path or cycle with at most 2*ell-1 edges and positive gain, if any exists.
std::optional<Augmentation> find_short_augmentation(const Matching& m, int ell, OracleBudget budget = {});
bool has_short_augmentation(const Matching& m, int ell, OracleBudget budget = {});

}  // namespace matchstream
