#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "matchstream/graph.hpp"
#include "matchstream/oracles.hpp"
#include "matchstream/wgt_aug_paths.hpp"

namespace matchstream {

class MemoryMeter;
class StreamSession;

struct RandArrParams {
  std::optional<double> p;  // default 100 / log2 n, clamped to [1/m, 1/2]
  double alpha = 0.02;
  double beta = 1.0 / 16000.0;
  OracleBudget residual_budget{};  // exact solve of the residual edges when they fit
};

double default_prefix_fraction(Vertex n, EdgeId m);

// The marked sample is drawn with seed mix_seed(stream seed, kMarkSeedTag).
inline constexpr std::uint64_t kMarkSeedTag = 0x6d61726b;

struct RandArrReport {
  Weight weight = 0;
  std::optional<Weight> opt_weight;
  std::optional<double> ratio;
  std::int64_t peak_edges = 0;
  std::string branch_chosen;  // "M1" or "M2"
  double p_used = 0;
  Weight m0_weight = 0;
  Weight m1_weight = 0;
  Weight m2_weight = 0;
  std::size_t stack_edges = 0;
  std::size_t residual_edges = 0;
  std::string residual_solver;  // "exact" or "local_ratio"
  int passes = 0;
};

struct RandArrResult {
  Matching matching;
  RandArrReport report;
};

// Single-pass weighted matching over a random-order stream. The first p fraction builds
// local-ratio potentials and a base matching; the rest feeds both a residual-edge collection
// (finished by an exact or local-ratio solve, then the stack) and the 3-augmentation search
// around the base matching. Returns the heavier result.
RandArrResult rand_arr(StreamSession& session, const RandArrParams& params = {}, MemoryMeter* meter = nullptr);

}  // namespace matchstream
