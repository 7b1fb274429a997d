#include "matchstream/local_ratio.hpp"

#include "matchstream/errors.hpp"
#include "matchstream/stream.hpp"

namespace matchstream {

LocalRatio::LocalRatio(const WeightedGraph& g, MemoryMeter* meter, std::string module)
    : g_(&g), meter_(meter), module_(std::move(module)), potential_(g.num_vertices(), 0) {}

LocalRatio::~LocalRatio() {
  if (meter_ != nullptr) meter_->release(static_cast<std::int64_t>(stack_.size()));
}

bool LocalRatio::process(EdgeId e, Weight w) {
  if (frozen_) throw StructuralError("local ratio potentials are frozen");
  const Edge& ed = g_->edge(e);
  const Weight r = w - potential_[ed.u] - potential_[ed.v];
  if (r <= 0) return false;
  if (meter_ != nullptr) meter_->charge(1, module_);
  potential_[ed.u] = checked_add(potential_[ed.u], r);
  potential_[ed.v] = checked_add(potential_[ed.v], r);
  stack_.push_back({e, r});
  return true;
}

Weight LocalRatio::residual(EdgeId e, Weight w) const {
  const Edge& ed = g_->edge(e);
  return w - potential_[ed.u] - potential_[ed.v];
}

Matching LocalRatio::unwind(const Matching& base) const {
  Matching m = base;
  for (auto it = stack_.rbegin(); it != stack_.rend(); ++it)
    if (m.can_add(it->edge)) m.add(it->edge);
  return m;
}

}  // namespace matchstream
