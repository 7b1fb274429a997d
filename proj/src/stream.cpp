#include "matchstream/stream.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "matchstream/errors.hpp"
#include "matchstream/random.hpp"

namespace matchstream {

StreamSession::StreamSession(const WeightedGraph& g, std::vector<EdgeId> order, std::uint64_t seed)
    : g_(&g), seed_(seed), order_(std::move(order)) {}

StreamSession::StreamSession(const WeightedGraph& g, std::uint64_t seed) : g_(&g), seed_(seed) {
  order_.resize(g.num_edges());
  std::iota(order_.begin(), order_.end(), 0);
  SplitMix64 rng(seed);
  shuffle(order_, rng);
}

StreamSession StreamSession::with_order(const WeightedGraph& g, std::vector<EdgeId> order, std::uint64_t seed) {
  std::vector<EdgeId> check = order;
  std::sort(check.begin(), check.end());
  for (EdgeId i = 0; i < static_cast<EdgeId>(check.size()); ++i)
    if (check[i] != i) throw ParameterError("stream order is not a permutation of the edges");
  if (static_cast<EdgeId>(check.size()) != g.num_edges())
    throw ParameterError("stream order is not a permutation of the edges");
  return StreamSession(g, std::move(order), seed);
}

std::int64_t memory_budget(std::int64_t n, double c, double k) {
  if (c <= 0) throw ParameterError("memory constant must be positive");
  const double lg = n > 1 ? std::log2(static_cast<double>(n)) : 1.0;
  return static_cast<std::int64_t>(std::ceil(c * static_cast<double>(n) * std::pow(lg, k)));
}

MemoryMeter::MemoryMeter(std::int64_t n, double c, double k, MemoryMode mode)
    : budget_(memory_budget(n, c, k)), mode_(mode) {}

void MemoryMeter::charge(std::int64_t edges, const std::string& module) {
  if (edges < 0) throw ParameterError("negative memory charge");
  stored_ += edges;
  peak_ = std::max(peak_, stored_);
  if (stored_ > budget_) {
    if (!violated_) violator_ = module;
    violated_ = true;
    if (mode_ == MemoryMode::Strict)
      throw BudgetViolation(module, module + " stored " + std::to_string(stored_) + " edges, budget " +
                                        std::to_string(budget_));
  }
}

void MemoryMeter::release(std::int64_t edges) {
  if (edges < 0) throw ParameterError("negative memory release");
  stored_ -= edges;
  if (stored_ < 0) stored_ = 0;
}

}  // namespace matchstream
