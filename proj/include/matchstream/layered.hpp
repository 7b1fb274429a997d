#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "matchstream/graph.hpp"

namespace matchstream {

enum class Side : std::uint8_t { L = 0, R = 1 };

// A two-sided split of the vertices. Matched edges across the split are the ones layered
// graphs can use as matched edges, unmatched edges across it as the connecting edges.
struct Parametrization {
  std::vector<Side> side;
  std::vector<EdgeId> a_edges;  // matched, crossing
  std::vector<EdgeId> b_edges;  // unmatched, crossing
};

Parametrization parametrization_from_sides(const Matching& m, std::vector<Side> side);
// Each vertex in id order takes side R on the top bit of one SplitMix64 draw.
Parametrization random_bipartition(const Matching& m, std::uint64_t seed);

// Threshold vectors in units of the granularity g: tau_a has one entry per layer and
// tau_b one per gap between layers.
struct GoodPair {
  std::vector<std::int64_t> tau_a;
  std::vector<std::int64_t> tau_b;

  int layers() const { return static_cast<int>(tau_a.size()); }
  friend bool operator==(const GoodPair&, const GoodPair&) = default;
};

std::string to_string(const GoodPair& p);

// Longest allowed tau_a: (2/eps)(16/eps) + 1.
std::int64_t max_pair_length(double eps);
// Largest tau_b sum in units of g.
std::int64_t max_b_units(long double sum_b_max, long double g);

bool is_good_pair(const GoodPair& p, double eps, long double g);
// Real-valued thresholds; entries must be multiples of g up to 1e-9 relative error.
bool is_good_pair(std::span<const double> tau_a, std::span<const double> tau_b, double eps, double g);

struct PairSpace {
  double eps = 0.4;
  long double g = 0.125L;
  int k_max = 9;  // longest tau_a
  long double sum_b_max = -1;  // negative: 1 + eps^4
  std::uint64_t cap = 1'000'000;

  long double b_limit() const;
};

// Number of good pairs in the space; stops counting once it passes the cap and returns cap + 1.
std::uint64_t count_good_pairs(const PairSpace& space);
// All good pairs ordered by length, then lexicographically by (tau_a, tau_b).
// Throws EnumerationGuard when there are more than space.cap of them.
std::vector<GoodPair> enumerate_good_pairs(const PairSpace& space);

// Good pairs whose nonzero tau_a entries come from a_values and whose tau_b entries come from
// b_values (both sorted ascending), in the same order as enumerate_good_pairs. Returns false
// from the callback to stop. Throws EnumerationGuard past the cap.
void for_each_restricted_pair(const PairSpace& space, const std::vector<std::int64_t>& a_values,
                              const std::vector<std::int64_t>& b_values,
                              const std::function<bool(const GoodPair&)>& visit);

// Smallest k with w <= k*unit, and largest k with k*unit <= w.
std::int64_t ceil_units(long double w, long double unit);
std::int64_t floor_units(long double w, long double unit);

// (1 + eps^4)^i.
long double weight_scale(double eps, int i);

struct LayeredVertex {
  Vertex v;
  int layer;  // 1-based
};

struct LayeredEdge {
  int from;  // X: L copy; Y: R copy in layer t
  int to;    // X: R copy in the same layer; Y: L copy in layer t+1
  EdgeId origin;
  int layer;
  bool matched;  // X edge
};

struct LayeredGraph {
  int layers = 0;
  std::vector<LayeredVertex> vertices;  // sorted by (layer, vertex)
  std::vector<Side> side;
  std::vector<LayeredEdge> edges;  // X edges of layer 1, Y edges from layer 1, X of layer 2, ...

  // -1 when the copy did not survive.
  int index(Vertex v, int layer) const;
  std::vector<int> x_partner() const;  // per vertex copy, the other end of its X edge or -1
};

LayeredGraph build_layered(const Matching& m, const Parametrization& p, const GoodPair& pair, long double g,
                           long double W);

// Two-colouring check on the edge structure alone.
bool is_bipartite(const LayeredGraph& lg);

// Splits an alternating walk (matched steps L to R, unmatched steps R to L) into simple
// alternating cycles and one simple path, preserving the edge multiset. Cycles come first
// in the order they close; the path is last.
std::vector<Augmentation> decompose_alternating_walk(const Matching& m, std::span<const Side> side,
                                                     const std::vector<Vertex>& walk);

// Edges of the augmentation weigh within [eps^12 W, 2W], gain at most 2W, gain after
// rounding matched weights up and unmatched weights down to multiples of eps^12 W is at
// least eps^12 W, and it has at most 64/eps^2 + 1 vertices.
bool in_augmentation_class(const Augmentation& aug, const Matching& m, long double W, double eps);

// Split, thresholds and scale under which a short augmentation (blown up d = ceil(16/eps)
// times when it is a cycle) shows up as one path through every layer. For a cycle the pair is
// good only when its unmatched weight is at least (1 + eps/8) times its matched weight;
// otherwise the repeated matched edge at the end outweighs the blown-up gain.
struct Witness {
  Parametrization param;
  GoodPair pair;
  long double W;
  int w_index;
  std::vector<Vertex> walk;
};

Witness witness_for(const Augmentation& aug, const Matching& m, double eps, long double g);

}  // namespace matchstream
