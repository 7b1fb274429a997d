#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "matchstream/graph.hpp"
#include "matchstream/layered.hpp"
#include "matchstream/oracles.hpp"

namespace matchstream {

// Maximum cardinality matching on a layered graph, given the current matching as a hint.
struct MatcherPlugin {
  std::string name;
  std::function<CardinalityMatching(const BipartiteGraph&, const CardinalityMatching& hint)> run;
  int passes = 1;
};

// Hopcroft-Karp warm-started from the hint; one pass to load the layered graph.
MatcherPlugin exact_matcher();

struct MultipassConfig {
  double eps = 0.4;
  long double g = 0.125L;
  int k_max = 9;
  int iters = 50;
  std::uint64_t seed = 0;
  std::uint64_t pair_cap = 1'000'000;
  bool faithful = false;
  // Memory constants used for the pass accounting.
  double mem_c = 8.0;
  double mem_logk = 2.0;
};

// eps = 0.4, g = 1/8, k_max = 9, 50 iterations.
MultipassConfig relaxed_config();
// g = eps^12 and k_max = (2/eps)(16/eps) + 1; requires eps < 1/16.
MultipassConfig faithful_config(double eps);
// eps^(28 + 900/eps^2); reported only.
long double success_probability_floor(double eps);

// Index of the largest weight scale considered: ceil(log_{1+eps^4}((64/eps^2 + 1) * max_weight)).
int max_scale_index(double eps, Weight max_weight);

struct PairSearch {
  std::vector<Augmentation> augmentations;
  Weight total_gain = 0;
  std::size_t paths = 0;          // all-layers augmenting paths extracted
  std::size_t out_of_class = 0;   // best component rejected by the class test
  std::size_t conflicts = 0;      // best component overlapping an earlier one
  std::size_t layered_edges = 0;
};

// Matches the layered graph without its first and last X layers, extracts every augmenting
// path (each must run through all layers), and keeps the best piece of each one's
// decomposition when it is disjoint from the pieces kept so far.
PairSearch search_pair(const Matching& m, const Parametrization& p, const GoodPair& pair, long double g,
                       long double W, double eps, const MatcherPlugin& matcher);

struct WeightBatch {
  int w_index = 0;
  long double W = 0;
  std::vector<Augmentation> augmentations;
  Weight total_gain = 0;
  std::size_t pairs_tried = 0;
  std::size_t max_layered_edges = 0;
  std::size_t total_layered_edges = 0;
};

// One random split for the scale, then the best pair batch over all good pairs whose
// thresholds hit weights present at this scale.
WeightBatch find_augmentations_for_weight(const Matching& m, int w_index, const MultipassConfig& cfg,
                                          const MatcherPlugin& matcher, std::uint64_t split_seed);

struct Admission {
  std::vector<const Augmentation*> admitted;  // in admission order
  std::size_t blocked = 0;
  // Most augmentations of one lower scale shut out by a single admitted one.
  std::size_t max_blocked_per_scale = 0;
};

// Walks the batches from the largest scale down and admits every augmentation whose touched
// vertices are still unused.
Admission admit_greedy(const Matching& m, const std::vector<WeightBatch>& batches);

struct IterationResult {
  Matching matching;
  Weight gain = 0;
  std::size_t admitted = 0;
  std::size_t blocked = 0;
  // Most augmentations of one lower scale blocked by a single admitted one.
  std::size_t max_blocked_per_scale = 0;
  int passes = 0;
  std::int64_t peak_edges = 0;
};

// Batches for every scale (in parallel, see MATCHSTREAM_THREADS), admitted greedily from the
// largest scale down, skipping overlaps, then applied together.
IterationResult improve_matching(const Matching& m, const MultipassConfig& cfg, const MatcherPlugin& matcher,
                                 int iteration);

struct MultipassReport {
  Weight final_weight = 0;
  std::optional<Weight> opt_weight;
  std::optional<double> ratio;
  int iterations_run = 0;
  int passes = 0;
  std::int64_t peak_edges = 0;
  std::vector<Weight> per_iteration_gains;
  std::size_t max_blocked_per_scale = 0;
};

struct MultipassResult {
  Matching matching;
  MultipassReport report;
};

// Starts from the empty matching (or `initial`) and improves until `iters` iterations ran
// or one iteration gains nothing.
MultipassResult solve(const WeightedGraph& g, const MultipassConfig& cfg, const MatcherPlugin& matcher = exact_matcher(),
                      const Matching* initial = nullptr);

}  // namespace matchstream
