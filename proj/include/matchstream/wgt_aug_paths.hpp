#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "matchstream/graph.hpp"
#include "matchstream/local_ratio.hpp"
#include "matchstream/unweighted_aug.hpp"

namespace matchstream {

class MemoryMeter;

struct WapParams {
  double alpha = 0.02;
  double beta = 1.0 / 16000.0;
};

// Class j holds weights in [2^(j-1), 2^j); weight 0 has class 0.
int weight_class(Weight w);

// Each edge of m0, in canonical order, is marked on the top bit of one SplitMix64 draw.
std::vector<EdgeId> sample_marked(const Matching& m0, std::uint64_t seed);

struct WapResult {
  Matching matching;
  Matching patched;    // m0 with the excess matching patched in
  Matching augmented;  // m0 with class 3-augmentations applied
  bool chose_augmented = false;
  std::size_t augmentations_applied = 0;
  std::size_t augmentations_skipped = 0;
  std::map<int, std::size_t> found_per_class;  // before cross-class conflicts
};

// One pass that improves a fixed matching m0 in two independent ways: a local-ratio matching on
// the weight in excess of m0, and weighted 3-augmentations around marked m0 edges, searched
// separately per weight class.
class WeightedAugPaths {
 public:
  WeightedAugPaths(const Matching& m0, std::uint64_t seed, WapParams params = {}, MemoryMeter* meter = nullptr);
  WeightedAugPaths(const Matching& m0, const std::vector<EdgeId>& marked, WapParams params = {},
                   MemoryMeter* meter = nullptr);
  WeightedAugPaths(const WeightedAugPaths&) = delete;
  WeightedAugPaths& operator=(const WeightedAugPaths&) = delete;
  ~WeightedAugPaths();

  void feed(EdgeId e);
  WapResult finalize() const;

  bool is_marked(EdgeId e) const { return marked_[e] != 0; }
  std::size_t small_class_threshold() const { return small_threshold_; }
  // Class a fed edge was routed to, or 0 when it was not routed.
  int routed_class(EdgeId e) const;
  const LocalRatio& excess() const { return excess_; }

 private:
  struct ClassState {
    std::vector<EdgeId> middles;  // marked m0 edges of the class
    std::size_t class_size = 0;   // all m0 edges of the class
    bool small = false;
    std::optional<UnwAugPath> online;
    std::vector<EdgeId> stored;
    std::size_t cap = 0;
  };

  void init(const std::vector<EdgeId>& marked);
  std::vector<ThreeAugPath> offline_paths(const ClassState& cs) const;

  Matching m0_;
  WapParams params_;
  MemoryMeter* meter_;
  std::vector<char> marked_;
  std::size_t small_threshold_;
  LocalRatio excess_;
  std::map<int, ClassState> classes_;
  std::vector<int> routed_;
};

}  // namespace matchstream
