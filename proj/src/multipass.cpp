#include "matchstream/multipass.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "matchstream/errors.hpp"
#include "matchstream/parallel.hpp"
#include "matchstream/random.hpp"
#include "matchstream/stream.hpp"

namespace matchstream {

MatcherPlugin exact_matcher() {
  return {"hopcroft_karp",
          [](const BipartiteGraph& b, const CardinalityMatching& hint) { return hopcroft_karp(b, &hint); }, 1};
}

MultipassConfig relaxed_config() { return MultipassConfig{}; }

MultipassConfig faithful_config(double eps) {
  if (!(eps > 0 && eps < 1.0 / 16.0)) throw ParameterError("paper-faithful mode needs 0 < eps < 1/16");
  MultipassConfig c;
  c.eps = eps;
  c.g = std::pow(static_cast<long double>(eps), 12.0L);
  c.k_max = static_cast<int>(std::min<std::int64_t>(max_pair_length(eps), 1 << 20));
  c.faithful = true;
  return c;
}

long double success_probability_floor(double eps) {
  const long double e = eps;
  return std::pow(e, 28.0L + 900.0L / (e * e));
}

int max_scale_index(double eps, Weight max_weight) {
  if (max_weight <= 0) return 0;
  const long double e = eps;
  const long double top = (64.0L / (e * e) + 1) * static_cast<long double>(max_weight);
  return static_cast<int>(std::ceil(std::log(top) / std::log1p(e * e * e * e)));
}

PairSearch search_pair(const Matching& m, const Parametrization& p, const GoodPair& pair, long double g,
                       long double W, double eps, const MatcherPlugin& matcher) {
  PairSearch out;
  const LayeredGraph lg = build_layered(m, p, pair, g, W);
  out.layered_edges = lg.edges.size();
  const int last = lg.layers;
  const std::size_t copies = lg.vertices.size();

  // Sides of L' get independent indices; first and last X layers are left out.
  std::vector<int> idx(copies, -1);
  std::vector<int> left_copy, right_copy;
  for (std::size_t c = 0; c < copies; ++c) {
    if (lg.side[c] == Side::L) {
      idx[c] = static_cast<int>(left_copy.size());
      left_copy.push_back(static_cast<int>(c));
    } else {
      idx[c] = static_cast<int>(right_copy.size());
      right_copy.push_back(static_cast<int>(c));
    }
  }
  BipartiteGraph b;
  b.left = static_cast<int>(left_copy.size());
  b.right = static_cast<int>(right_copy.size());
  CardinalityMatching hint;
  hint.mate_left.assign(b.left, -1);
  hint.mate_right.assign(b.right, -1);
  bool any_y = false;
  for (const LayeredEdge& e : lg.edges) {
    if (e.matched) {
      if (e.layer == 1 || e.layer == last) continue;
      b.edges.push_back({idx[e.from], idx[e.to]});
      hint.mate_left[idx[e.from]] = idx[e.to];
      hint.mate_right[idx[e.to]] = idx[e.from];
      ++hint.size;
    } else {
      any_y = true;
      b.edges.push_back({idx[e.to], idx[e.from]});
    }
  }
  if (!any_y) return out;
  const CardinalityMatching found = matcher.run(b, hint);
  if (static_cast<int>(found.mate_left.size()) != b.left || static_cast<int>(found.mate_right.size()) != b.right)
    throw std::logic_error("matcher returned arrays of the wrong size");

  auto partner = [&](const CardinalityMatching& cm, int c) {
    if (lg.side[c] == Side::L) {
      const int r = cm.mate_left[idx[c]];
      return r < 0 ? -1 : right_copy[r];
    }
    const int l = cm.mate_right[idx[c]];
    return l < 0 ? -1 : left_copy[l];
  };

  const WeightedGraph& gr = m.graph();
  const std::vector<int> x_of = lg.x_partner();
  const long double unit = g * W;
  std::vector<char> seen(copies, 0);
  std::vector<char> used(gr.num_vertices(), 0);
  for (std::size_t s = 0; s < copies; ++s) {
    const int start = static_cast<int>(s);
    if (seen[start] || partner(hint, start) != -1 || partner(found, start) == -1) continue;
    std::vector<int> nodes{start};
    seen[start] = 1;
    int cur = start;
    bool use_found = true;
    while (true) {
      const int nxt = partner(use_found ? found : hint, cur);
      if (nxt == -1 || (!use_found && partner(found, cur) == nxt)) break;
      nodes.push_back(nxt);
      seen[nxt] = 1;
      cur = nxt;
      use_found = !use_found;
    }
    // Augmenting iff it ends on an edge of the new matching at a vertex the hint leaves free.
    if (use_found || partner(hint, cur) != -1) continue;
    ++out.paths;
    if (lg.vertices[nodes.front()].layer != 1) std::reverse(nodes.begin(), nodes.end());
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      const int expect = static_cast<int>(i + 1) / 2 + 1;
      if (lg.vertices[nodes[i]].layer != expect)
        throw std::logic_error("augmenting path in the layered graph skips a layer");
    }
    if (lg.vertices[nodes.back()].layer != last) throw std::logic_error("augmenting path stops before the last layer");

    std::vector<Vertex> walk;
    if (x_of[nodes.front()] >= 0) walk.push_back(lg.vertices[x_of[nodes.front()]].v);
    for (int c : nodes) walk.push_back(lg.vertices[c].v);
    if (x_of[nodes.back()] >= 0) walk.push_back(lg.vertices[x_of[nodes.back()]].v);

    std::vector<Augmentation> parts = decompose_alternating_walk(m, p.side, walk);
    std::size_t best = 0;
    Weight best_gain = gain(parts[0], m);
    for (std::size_t i = 1; i < parts.size(); ++i) {
      const Weight gi = gain(parts[i], m);
      if (gi > best_gain) {
        best = i;
        best_gain = gi;
      }
    }
    if (static_cast<long double>(best_gain) < unit * (1 - 1e-9L))
      throw std::logic_error("layered path decomposes without a piece of gain g*W");
    const Augmentation& aug = parts[best];
    if (!in_augmentation_class(aug, m, W, eps)) {
      ++out.out_of_class;
      continue;
    }
    const std::vector<Vertex> span = touched_vertices(aug, m);
    if (std::any_of(span.begin(), span.end(), [&](Vertex x) { return used[x] != 0; })) {
      ++out.conflicts;
      continue;
    }
    for (Vertex x : span) used[x] = 1;
    out.total_gain += best_gain;
    out.augmentations.push_back(canonical(aug));
  }
  return out;
}

WeightBatch find_augmentations_for_weight(const Matching& m, int w_index, const MultipassConfig& cfg,
                                          const MatcherPlugin& matcher, std::uint64_t split_seed) {
  const WeightedGraph& gr = m.graph();
  WeightBatch batch;
  batch.w_index = w_index;
  batch.W = weight_scale(cfg.eps, w_index);
  const long double unit = cfg.g * batch.W;
  const Parametrization p = random_bipartition(m, split_seed);
  std::set<std::int64_t> a_set, b_set;
  for (EdgeId e : p.a_edges) a_set.insert(ceil_units(static_cast<long double>(gr.weight(e)), unit));
  for (EdgeId e : p.b_edges) b_set.insert(floor_units(static_cast<long double>(gr.weight(e)), unit));
  const std::vector<std::int64_t> a_values(a_set.begin(), a_set.end());
  const std::vector<std::int64_t> b_values(b_set.begin(), b_set.end());
  PairSpace space;
  space.eps = cfg.eps;
  space.g = cfg.g;
  space.k_max = cfg.k_max;
  space.cap = cfg.pair_cap;
  for_each_restricted_pair(space, a_values, b_values, [&](const GoodPair& pair) {
    PairSearch r = search_pair(m, p, pair, cfg.g, batch.W, cfg.eps, matcher);
    ++batch.pairs_tried;
    batch.max_layered_edges = std::max(batch.max_layered_edges, r.layered_edges);
    batch.total_layered_edges += r.layered_edges;
    if (r.total_gain > batch.total_gain) {
      batch.total_gain = r.total_gain;
      batch.augmentations = std::move(r.augmentations);
    }
    return true;
  });
  return batch;
}

Admission admit_greedy(const Matching& m, const std::vector<WeightBatch>& batches) {
  const WeightedGraph& gr = m.graph();
  Admission out;
  std::vector<char> used(gr.num_vertices(), 0);
  std::vector<std::vector<std::vector<Vertex>>> spans(batches.size());
  for (std::size_t i = 0; i < batches.size(); ++i)
    for (const Augmentation& a : batches[i].augmentations) spans[i].push_back(touched_vertices(a, m));
  std::vector<char> mine(gr.num_vertices(), 0);
  for (std::size_t i = batches.size(); i-- > 0;) {
    for (std::size_t k = 0; k < batches[i].augmentations.size(); ++k) {
      const auto& span = spans[i][k];
      if (std::any_of(span.begin(), span.end(), [&](Vertex x) { return used[x] != 0; })) {
        ++out.blocked;
        continue;
      }
      for (Vertex x : span) used[x] = 1;
      out.admitted.push_back(&batches[i].augmentations[k]);
      for (Vertex x : span) mine[x] = 1;
      for (std::size_t j = 0; j < i; ++j) {
        std::size_t hit = 0;
        for (const auto& other : spans[j])
          if (std::any_of(other.begin(), other.end(), [&](Vertex x) { return mine[x] != 0; })) ++hit;
        out.max_blocked_per_scale = std::max(out.max_blocked_per_scale, hit);
      }
      for (Vertex x : span) mine[x] = 0;
    }
  }
  return out;
}

IterationResult improve_matching(const Matching& m, const MultipassConfig& cfg, const MatcherPlugin& matcher,
                                 int iteration) {
  const WeightedGraph& gr = m.graph();
  const int top = max_scale_index(cfg.eps, gr.max_weight());
  std::vector<WeightBatch> batches(static_cast<std::size_t>(top) + 1);
  const std::uint64_t iter_seed = mix_seed(cfg.seed, static_cast<std::uint64_t>(iteration));
  parallel_for(batches.size(), [&](std::size_t i) {
    batches[i] = find_augmentations_for_weight(m, static_cast<int>(i), cfg, matcher, mix_seed(iter_seed, i));
  });

  IterationResult r{m};
  std::size_t total_edges = 0, max_edges = 0;
  for (const WeightBatch& b : batches) {
    total_edges += b.total_layered_edges;
    max_edges = std::max(max_edges, b.max_layered_edges);
  }
  const Admission adm = admit_greedy(m, batches);
  const std::vector<const Augmentation*>& admitted = adm.admitted;
  r.blocked = adm.blocked;
  r.max_blocked_per_scale = adm.max_blocked_per_scale;
  const long double e = cfg.eps;
  if (static_cast<long double>(r.max_blocked_per_scale) > 64.0L / (e * e) + 1)
    throw std::logic_error("an admitted augmentation blocks more than 64/eps^2 + 1 lower-scale ones");

  Weight expected = 0;
  for (const Augmentation* a : admitted) {
    const Weight delta = gain(*a, r.matching);
    if (delta <= 0) throw std::logic_error("admitted augmentation lost its gain");
    expected += delta;
    r.matching = apply_augmentation(r.matching, *a);
  }
  r.admitted = admitted.size();
  r.gain = r.matching.weight() - m.weight();
  if (r.gain != expected) throw std::logic_error("applied gains do not add up");

  const std::int64_t budget = std::max<std::int64_t>(1, memory_budget(gr.num_vertices(), cfg.mem_c, cfg.mem_logk));
  const std::int64_t groups =
      std::max<std::int64_t>(1, (static_cast<std::int64_t>(total_edges) + budget - 1) / budget);
  r.passes = 1 + matcher.passes * static_cast<int>(groups);
  r.peak_edges = static_cast<std::int64_t>(m.size() + max_edges);
  return r;
}

MultipassResult solve(const WeightedGraph& g, const MultipassConfig& cfg, const MatcherPlugin& matcher,
                      const Matching* initial) {
  if (!(cfg.eps > 0 && cfg.eps < 1)) throw ParameterError("eps must lie in (0, 1)");
  if (!(cfg.g > 0 && cfg.g <= 1)) throw ParameterError("granularity must lie in (0, 1]");
  if (cfg.k_max < 2) throw ParameterError("k_max must be at least 2");
  if (cfg.iters < 0) throw ParameterError("iteration count must be non-negative");
  MultipassResult res{initial != nullptr ? *initial : Matching(g), {}};
  for (int it = 0; it < cfg.iters; ++it) {
    IterationResult step = improve_matching(res.matching, cfg, matcher, it);
    ++res.report.iterations_run;
    res.report.passes += step.passes;
    res.report.peak_edges = std::max(res.report.peak_edges, step.peak_edges);
    res.report.max_blocked_per_scale = std::max(res.report.max_blocked_per_scale, step.max_blocked_per_scale);
    if (step.gain <= 0) break;
    res.report.per_iteration_gains.push_back(step.gain);
    res.matching = std::move(step.matching);
  }
  res.report.final_weight = res.matching.weight();
  return res;
}

}  // namespace matchstream
