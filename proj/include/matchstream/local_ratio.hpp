#pragma once

#include <string>
#include <vector>

#include "matchstream/graph.hpp"

namespace matchstream {

class MemoryMeter;

struct StackEntry {
  EdgeId edge;
  Weight residual;
};

// Vertex potentials plus a stack of edges that beat them. Edge weights are supplied per call
// so the same machinery runs under reduced weights.
class LocalRatio {
 public:
  explicit LocalRatio(const WeightedGraph& g, MemoryMeter* meter = nullptr, std::string module = "local_ratio");
  LocalRatio(const LocalRatio&) = delete;
  LocalRatio& operator=(const LocalRatio&) = delete;
  LocalRatio(LocalRatio&&) = default;
  ~LocalRatio();

  // Pushes the edge when its weight beats the summed endpoint potentials.
  bool process(EdgeId e, Weight w);
  bool process(EdgeId e) { return process(e, g_->weight(e)); }

  void freeze() { frozen_ = true; }
  bool frozen() const { return frozen_; }

  Weight potential(Vertex v) const { return potential_[v]; }
  const std::vector<Weight>& potentials() const { return potential_; }
  const std::vector<StackEntry>& stack() const { return stack_; }

  // Weight left after subtracting the endpoint potentials.
  Weight residual(EdgeId e, Weight w) const;
  Weight residual(EdgeId e) const { return residual(e, g_->weight(e)); }
  bool residual_filter(EdgeId e) const { return residual(e) > 0; }

  // Pops the stack from the top onto a copy of base, keeping edges whose endpoints are free.
  Matching unwind(const Matching& base) const;
  Matching unwind() const { return unwind(Matching(*g_)); }

 private:
  const WeightedGraph* g_;
  MemoryMeter* meter_;
  std::string module_;
  std::vector<Weight> potential_;
  std::vector<StackEntry> stack_;
  bool frozen_ = false;
};

}  // namespace matchstream
