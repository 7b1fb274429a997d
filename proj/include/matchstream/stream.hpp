#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "matchstream/graph.hpp"

namespace matchstream {

// One fixed random order of the edges, replayed on every pass.
class StreamSession {
 public:
  StreamSession(const WeightedGraph& g, std::uint64_t seed);
  // Replays a caller-chosen order; must be a permutation of the edge ids.
  static StreamSession with_order(const WeightedGraph& g, std::vector<EdgeId> order, std::uint64_t seed = 0);

  const WeightedGraph& graph() const { return *g_; }
  std::uint64_t seed() const { return seed_; }
  const std::vector<EdgeId>& order() const { return order_; }
  // Starts a new pass and returns the stream in arrival order.
  std::span<const EdgeId> next_pass() {
    ++passes_;
    return order_;
  }
  int passes() const { return passes_; }

 private:
  StreamSession(const WeightedGraph& g, std::vector<EdgeId> order, std::uint64_t seed);

  const WeightedGraph* g_;
  std::uint64_t seed_;
  std::vector<EdgeId> order_;
  int passes_ = 0;
};

enum class MemoryMode { Lenient, Strict };

// Counts stored edges against ceil(c * n * (log2 n)^k).
class MemoryMeter {
 public:
  MemoryMeter(std::int64_t n, double c = 8.0, double k = 2.0, MemoryMode mode = MemoryMode::Lenient);

  void charge(std::int64_t edges, const std::string& module);
  void release(std::int64_t edges);

  std::int64_t budget() const { return budget_; }
  std::int64_t stored() const { return stored_; }
  std::int64_t peak() const { return peak_; }
  bool violated() const { return violated_; }
  const std::string& first_violator() const { return violator_; }
  MemoryMode mode() const { return mode_; }

 private:
  std::int64_t budget_;
  MemoryMode mode_;
  std::int64_t stored_ = 0;
  std::int64_t peak_ = 0;
  bool violated_ = false;
  std::string violator_;
};

std::int64_t memory_budget(std::int64_t n, double c, double k);

}  // namespace matchstream
