#include "matchstream/wgt_aug_paths.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

#include "matchstream/errors.hpp"
#include "matchstream/random.hpp"
#include "matchstream/stream.hpp"

namespace matchstream {

namespace {
const char* kModule = "wgt_aug_paths";
}

int weight_class(Weight w) {
  if (w <= 0) return 0;
  return static_cast<int>(std::bit_width(static_cast<std::uint64_t>(w)));
}

std::vector<EdgeId> sample_marked(const Matching& m0, std::uint64_t seed) {
  SplitMix64 rng(seed);
  std::vector<EdgeId> out;
  for (EdgeId e : m0.edges())
    if (rng.coin()) out.push_back(e);
  return out;
}

WeightedAugPaths::WeightedAugPaths(const Matching& m0, std::uint64_t seed, WapParams params, MemoryMeter* meter)
    : m0_(m0), params_(params), meter_(meter), excess_(m0.graph(), meter, kModule) {
  init(sample_marked(m0, seed));
}

WeightedAugPaths::WeightedAugPaths(const Matching& m0, const std::vector<EdgeId>& marked, WapParams params,
                                   MemoryMeter* meter)
    : m0_(m0), params_(params), meter_(meter), excess_(m0.graph(), meter, kModule) {
  init(marked);
}

WeightedAugPaths::~WeightedAugPaths() {
  if (meter_ == nullptr) return;
  for (auto& [j, cs] : classes_) meter_->release(static_cast<std::int64_t>(cs.stored.size()));
}

void WeightedAugPaths::init(const std::vector<EdgeId>& marked) {
  if (!(params_.alpha > 0.0 && params_.alpha < 1.0)) throw ParameterError("alpha must lie in (0, 1)");
  if (!(params_.beta > 0.0 && params_.beta <= 1.0)) throw ParameterError("beta must lie in (0, 1]");
  const WeightedGraph& g = m0_.graph();
  marked_.assign(g.num_edges(), 0);
  routed_.assign(g.num_edges(), 0);
  for (EdgeId e : marked) {
    if (!m0_.contains(e)) throw StructuralError("marked edge is not in the base matching");
    marked_[e] = 1;
  }
  small_threshold_ = static_cast<std::size_t>(std::ceil(100.0 / params_.beta));
  for (EdgeId e : m0_.edges()) {
    const int j = weight_class(g.weight(e));
    if (j == 0) continue;
    ClassState& cs = classes_[j];
    ++cs.class_size;
    if (marked_[e]) cs.middles.push_back(e);
  }
  for (auto it = classes_.begin(); it != classes_.end();) {
    ClassState& cs = it->second;
    if (cs.middles.empty()) {
      it = classes_.erase(it);
      continue;
    }
    cs.small = cs.class_size < small_threshold_;
    if (cs.small) {
      cs.cap = 4 * small_threshold_ * static_cast<std::size_t>(g.num_vertices());
    } else {
      cs.online.emplace(matching_from_edges(g, cs.middles), params_.beta, meter_, kModule);
    }
    ++it;
  }
}

void WeightedAugPaths::feed(EdgeId e) {
  const WeightedGraph& g = m0_.graph();
  const Edge& ed = g.edge(e);
  const MateEdge mu = m0_.at(ed.u), mv = m0_.at(ed.v);
  if (mu.id == e) return;
  const Weight base = mu.w + mv.w;
  if (ed.w >= base) excess_.process(e, ed.w - base);

  const bool mark_u = mu.id != kNoEdge && marked_[mu.id];
  const bool mark_v = mv.id != kNoEdge && marked_[mv.id];
  if (mark_u == mark_v) return;
  const long double a = params_.alpha;
  if (static_cast<long double>(ed.w) > (1 + a) * static_cast<long double>(base)) return;
  const MateEdge& mid = mark_u ? mu : mv;
  const MateEdge& wing = mark_u ? mv : mu;
  const long double need = (1 + 2 * a) * (static_cast<long double>(mid.w) / 2 + static_cast<long double>(wing.w));
  if (static_cast<long double>(ed.w) < need) return;
  const int j = weight_class(mid.w);
  auto it = classes_.find(j);
  if (it == classes_.end()) return;
  ClassState& cs = it->second;
  routed_[e] = j;
  if (cs.small) {
    if (cs.stored.size() >= cs.cap) return;
    if (meter_ != nullptr) meter_->charge(1, kModule);
    cs.stored.push_back(e);
  } else {
    cs.online->feed(e);
  }
}

int WeightedAugPaths::routed_class(EdgeId e) const { return routed_[e]; }

std::vector<ThreeAugPath> WeightedAugPaths::offline_paths(const ClassState& cs) const {
  const WeightedGraph& g = m0_.graph();
  std::map<Vertex, std::vector<EdgeId>> at;
  for (EdgeId e : cs.stored) {
    const Edge& ed = g.edge(e);
    const Vertex mid_end = (m0_.is_matched(ed.u) && marked_[m0_.mate_edge(ed.u)]) ? ed.u : ed.v;
    at[mid_end].push_back(e);
  }
  std::vector<char> used(g.num_vertices(), 0);
  std::vector<ThreeAugPath> out;
  std::vector<EdgeId> middles = cs.middles;
  sort_canonical(g, middles);
  for (EdgeId mid : middles) {
    const Vertex u = g.edge(mid).u, v = g.edge(mid).v;
    if (used[u] || used[v]) continue;
    auto iu = at.find(u), iv = at.find(v);
    if (iu == at.end() || iv == at.end()) continue;
    bool done = false;
    for (EdgeId o1 : iu->second) {
      const Vertex a = g.other(o1, u);
      if (used[a]) continue;
      for (EdgeId o2 : iv->second) {
        const Vertex b = g.other(o2, v);
        if (b == a || used[b]) continue;
        out.push_back({a, u, v, b, o1, mid, o2});
        used[a] = used[u] = used[v] = used[b] = 1;
        done = true;
        break;
      }
      if (done) break;
    }
  }
  return out;
}

WapResult WeightedAugPaths::finalize() const {
  const WeightedGraph& g = m0_.graph();
  Matching patched = m0_;
  for (EdgeId e : excess_.unwind().edges()) {
    const Edge& ed = g.edge(e);
    for (Vertex x : {ed.u, ed.v}) {
      EdgeId old = patched.mate_edge(x);
      if (old != kNoEdge) patched.remove(old);
    }
    patched.add(e);
  }

  Matching augmented = m0_;
  std::vector<char> touched(g.num_vertices(), 0);
  std::size_t applied = 0, skipped = 0;
  std::map<int, std::size_t> found;
  for (auto it = classes_.rbegin(); it != classes_.rend(); ++it) {
    const ClassState& cs = it->second;
    std::vector<ThreeAugPath> paths = cs.small ? offline_paths(cs) : cs.online->finalize();
    found[it->first] = paths.size();
    for (const ThreeAugPath& p : paths) {
      Augmentation aug = make_path(g, {p.a, p.u, p.v, p.b});
      std::vector<Vertex> span = touched_vertices(aug, augmented);
      if (std::any_of(span.begin(), span.end(), [&](Vertex x) { return touched[x] != 0; })) {
        ++skipped;
        continue;
      }
      const Weight delta = gain(aug, augmented);
      if (delta <= 0) throw std::logic_error("class 3-augmentation with non-positive gain");
      augmented = apply_augmentation(augmented, aug);
      for (Vertex x : span) touched[x] = 1;
      ++applied;
    }
  }

  WapResult r{patched, patched, augmented};
  r.augmentations_applied = applied;
  r.augmentations_skipped = skipped;
  r.found_per_class = std::move(found);
  if (augmented.weight() > patched.weight()) {
    r.matching = augmented;
    r.chose_augmented = true;
  }
  return r;
}

}  // namespace matchstream
