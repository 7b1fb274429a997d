#include "matchstream/rand_arr.hpp"

#include <algorithm>
#include <cmath>

#include "matchstream/errors.hpp"
#include "matchstream/local_ratio.hpp"
#include "matchstream/random.hpp"
#include "matchstream/stream.hpp"

namespace matchstream {

namespace {
const char* kModule = "rand_arr";
}  // namespace

double default_prefix_fraction(Vertex n, EdgeId m) {
  const double lg = n > 1 ? std::log2(static_cast<double>(n)) : 1.0;
  const double lo = m > 0 ? 1.0 / static_cast<double>(m) : 0.5;
  return std::clamp(100.0 / lg, std::min(lo, 0.5), 0.5);
}

RandArrResult rand_arr(StreamSession& session, const RandArrParams& params, MemoryMeter* meter) {
  const WeightedGraph& g = session.graph();
  const auto stream = session.next_pass();
  const EdgeId m = static_cast<EdgeId>(stream.size());
  double p;
  if (params.p) {
    p = *params.p;
    if (!(p > 0.0 && p <= 0.5)) throw ParameterError("p must lie in (0, 1/2]");
    if (p * static_cast<double>(m) < 1.0) throw ParameterError("p * m < 1: the first phase would be empty");
  } else {
    p = default_prefix_fraction(g.num_vertices(), m);
  }
  const std::size_t prefix = static_cast<std::size_t>(std::floor(p * static_cast<double>(m)));

  LocalRatio lr(g, meter, kModule);
  for (std::size_t i = 0; i < prefix; ++i) lr.process(stream[i]);
  const Matching m0 = lr.unwind();
  lr.freeze();
  if (meter != nullptr) meter->charge(static_cast<std::int64_t>(m0.size()), kModule);

  WapParams wp{params.alpha, params.beta};
  WeightedAugPaths wap(m0, mix_seed(session.seed(), kMarkSeedTag), wp, meter);
  std::vector<EdgeId> residual_edges;
  std::vector<Weight> reduced(g.num_edges(), 0);
  for (std::size_t i = prefix; i < stream.size(); ++i) {
    const EdgeId e = stream[i];
    const Weight r = lr.residual(e);
    if (r > 0) {
      residual_edges.push_back(e);
      reduced[e] = r;
      if (meter != nullptr) meter->charge(1, kModule);
    }
    wap.feed(e);
  }

  RandArrReport rep;
  rep.p_used = p;
  rep.m0_weight = m0.weight();
  rep.stack_edges = lr.stack().size();
  rep.residual_edges = residual_edges.size();

  Matching base(g);
  try {
    base = exact_mwm(g, [&reduced](EdgeId e) { return reduced[e]; }, params.residual_budget).matching;
    rep.residual_solver = "exact";
  } catch (const OracleOversize&) {
    LocalRatio second(g);
    for (EdgeId e : residual_edges) second.process(e, reduced[e]);
    base = second.unwind();
    rep.residual_solver = "local_ratio";
  }
  const Matching m1 = lr.unwind(base);
  const WapResult wres = wap.finalize();
  const Matching& m2 = wres.matching;

  rep.m1_weight = m1.weight();
  rep.m2_weight = m2.weight();
  const bool take_m2 = m2.weight() > m1.weight();
  rep.branch_chosen = take_m2 ? "M2" : "M1";
  rep.weight = take_m2 ? m2.weight() : m1.weight();
  rep.passes = session.passes();
  if (meter != nullptr) {
    rep.peak_edges = meter->peak();
    meter->release(static_cast<std::int64_t>(m0.size() + residual_edges.size()));
  }
  return {take_m2 ? m2 : m1, rep};
}

}  // namespace matchstream
