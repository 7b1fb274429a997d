#pragma once

#include <string>
#include <vector>

#include "matchstream/graph.hpp"

namespace matchstream {

class MemoryMeter;
class StreamSession;

// a - u = v - b with uv matched, au and vb unmatched.
struct ThreeAugPath {
  Vertex a, u, v, b;
  EdgeId left, middle, right;
};

// One-pass search for vertex-disjoint 3-augmenting paths of a fixed matching. Keeps at most
// lambda = ceil(8 / beta) edges per free vertex and two per matched vertex.
class UnwAugPath {
 public:
  UnwAugPath(const Matching& m, double beta, MemoryMeter* meter = nullptr, std::string module = "unweighted_aug");
  UnwAugPath(const UnwAugPath&) = delete;
  UnwAugPath& operator=(const UnwAugPath&) = delete;
  UnwAugPath(UnwAugPath&&) = default;
  ~UnwAugPath();

  // Returns whether the edge was stored.
  bool feed(EdgeId e);
  std::vector<ThreeAugPath> finalize() const;

  int lambda() const { return lambda_; }
  const std::vector<EdgeId>& support() const { return support_; }
  const Matching& matching() const { return m_; }

 private:
  Matching m_;
  int lambda_;
  MemoryMeter* meter_;
  std::string module_;
  std::vector<int> free_degree_;
  std::vector<std::vector<EdgeId>> at_matched_;  // support edges per matched vertex, arrival order
  std::vector<EdgeId> support_;
};

// Applies vertex-disjoint 3-augmentations to m.
Matching apply_three_paths(const Matching& m, const std::vector<ThreeAugPath>& paths);

enum class UnweightedBranch { TopUp, Greedy, Augment };
const char* branch_name(UnweightedBranch b);

struct UnweightedResult {
  Matching matching;
  UnweightedBranch branch;
  std::size_t m0_size = 0;
  std::size_t branch_sizes[3] = {0, 0, 0};
  std::size_t prefix_edges = 0;
  std::size_t support_edges = 0;
  std::size_t s1_edges = 0;
};

// Single pass over a random-order stream: a greedy matching on the first p fraction, then the
// largest of (top up with a maximum matching among its free vertices, keep growing greedily,
// apply 3-augmentations found by UnwAugPath). Weights are ignored.
UnweightedResult random_arrival_unweighted(StreamSession& session, double p, double beta = 0.5,
                                           MemoryMeter* meter = nullptr);

}  // namespace matchstream
