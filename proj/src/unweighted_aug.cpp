#include "matchstream/unweighted_aug.hpp"

#include <cmath>
#include <limits>

#include "matchstream/errors.hpp"
#include "matchstream/oracles.hpp"
#include "matchstream/stream.hpp"

namespace matchstream {

UnwAugPath::UnwAugPath(const Matching& m, double beta, MemoryMeter* meter, std::string module)
    : m_(m), meter_(meter), module_(std::move(module)) {
  if (!(beta > 0.0 && beta <= 1.0)) throw ParameterError("beta must lie in (0, 1]");
  lambda_ = static_cast<int>(std::ceil(8.0 / beta));
  const Vertex n = m.graph().num_vertices();
  free_degree_.assign(n, 0);
  at_matched_.resize(n);
}

UnwAugPath::~UnwAugPath() {
  if (meter_ != nullptr) meter_->release(static_cast<std::int64_t>(support_.size()));
}

bool UnwAugPath::feed(EdgeId e) {
  const Edge& ed = m_.graph().edge(e);
  Vertex a = ed.u, u = ed.v;
  if (m_.is_matched(a)) std::swap(a, u);
  if (m_.is_matched(a) || !m_.is_matched(u)) return false;
  if (free_degree_[a] >= lambda_ || at_matched_[u].size() >= 2) return false;
  if (meter_ != nullptr) meter_->charge(1, module_);
  ++free_degree_[a];
  at_matched_[u].push_back(e);
  support_.push_back(e);
  return true;
}

std::vector<ThreeAugPath> UnwAugPath::finalize() const {
  const WeightedGraph& g = m_.graph();
  std::vector<char> used(g.num_vertices(), 0);
  std::vector<ThreeAugPath> out;
  for (EdgeId e : support_) {
    const Edge& ed = g.edge(e);
    const Vertex u = m_.is_matched(ed.u) ? ed.u : ed.v;
    const Vertex a = g.other(e, u);
    const Vertex v = m_.mate(u);
    if (used[a] || used[u] || used[v]) continue;
    for (EdgeId f : at_matched_[v]) {
      const Vertex b = g.other(f, v);
      if (b == a || used[b]) continue;
      out.push_back({a, u, v, b, e, m_.mate_edge(u), f});
      used[a] = used[u] = used[v] = used[b] = 1;
      break;
    }
  }
  return out;
}

Matching apply_three_paths(const Matching& m, const std::vector<ThreeAugPath>& paths) {
  Matching out = m;
  for (const ThreeAugPath& p : paths) {
    out.remove(p.middle);
    out.add(p.left);
    out.add(p.right);
  }
  return out;
}

const char* branch_name(UnweightedBranch b) {
  switch (b) {
    case UnweightedBranch::TopUp: return "top_up";
    case UnweightedBranch::Greedy: return "greedy";
    case UnweightedBranch::Augment: return "augment";
  }
  return "?";
}

UnweightedResult random_arrival_unweighted(StreamSession& session, double p, double beta, MemoryMeter* meter) {
  if (!(p >= 0.0 && p <= 1.0)) throw ParameterError("p must lie in [0, 1]");
  const WeightedGraph& g = session.graph();
  const auto stream = session.next_pass();
  const std::size_t prefix = static_cast<std::size_t>(std::floor(p * static_cast<double>(stream.size())));
  const std::string module = "unweighted";

  Matching m0(g);
  for (std::size_t i = 0; i < prefix; ++i)
    if (m0.can_add(stream[i])) m0.add(stream[i]);
  if (meter != nullptr) meter->charge(static_cast<std::int64_t>(m0.size()), module);

  Matching grown = m0;
  std::vector<Edge> s1;
  UnwAugPath aug(m0, beta, meter, module);
  for (std::size_t i = prefix; i < stream.size(); ++i) {
    const EdgeId e = stream[i];
    const Edge& ed = g.edge(e);
    if (!m0.is_matched(ed.u) && !m0.is_matched(ed.v)) {
      s1.push_back(ed);
      if (meter != nullptr) meter->charge(1, module);
    }
    if (grown.can_add(e)) {
      grown.add(e);
      if (meter != nullptr) meter->charge(1, module);
    }
    aug.feed(e);
  }

  Matching topped = m0;
  {
    WeightedGraph sub(g.num_vertices(), s1, GraphLimits{std::numeric_limits<Weight>::min(), 64});
    Matching extra = max_cardinality_matching(sub);
    for (EdgeId e : extra.edges()) topped.add(g.find_edge(sub.edge(e).u, sub.edge(e).v));
  }
  std::vector<ThreeAugPath> paths = aug.finalize();
  Matching augmented = apply_three_paths(m0, paths);

  UnweightedResult r{topped, UnweightedBranch::TopUp};
  r.m0_size = m0.size();
  r.branch_sizes[0] = topped.size();
  r.branch_sizes[1] = grown.size();
  r.branch_sizes[2] = augmented.size();
  r.prefix_edges = prefix;
  r.support_edges = aug.support().size();
  r.s1_edges = s1.size();
  if (grown.size() > r.matching.size()) {
    r.matching = grown;
    r.branch = UnweightedBranch::Greedy;
  }
  if (augmented.size() > r.matching.size()) {
    r.matching = augmented;
    r.branch = UnweightedBranch::Augment;
  }
  if (meter != nullptr) {
    meter->release(static_cast<std::int64_t>(m0.size() + s1.size() + (grown.size() - m0.size())));
  }
  return r;
}

}  // namespace matchstream
