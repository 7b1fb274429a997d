#pragma once

// Brute-force references shared by the tests. Nothing here calls the library's solvers.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "matchstream/graph.hpp"

namespace testsupport {

using namespace matchstream;

inline WeightedGraph random_graph(Vertex n, EdgeId m, Weight wmax, std::mt19937_64& rng) {
  std::vector<std::pair<Vertex, Vertex>> all;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v) all.push_back({u, v});
  std::shuffle(all.begin(), all.end(), rng);
  if (m > static_cast<EdgeId>(all.size())) m = static_cast<EdgeId>(all.size());
  const Weight cap = static_cast<Weight>(n) * n * n * n;
  std::uniform_int_distribution<Weight> wd(1, std::min(wmax, cap));
  std::vector<Edge> edges;
  for (EdgeId i = 0; i < m; ++i) {
    auto [u, v] = all[i];
    if (rng() & 1) std::swap(u, v);
    edges.push_back({u, v, wd(rng)});
  }
  return WeightedGraph(n, std::move(edges));
}

inline std::pair<Vertex, Vertex> key(const WeightedGraph& g, EdgeId e) {
  return std::minmax(g.edge(e).u, g.edge(e).v);
}

struct BruteBest {
  Weight weight = 0;
  std::vector<std::pair<Vertex, Vertex>> edges;  // sorted canonical keys
};

// Every matching over the positive-weight edges; best weight, then lexicographically smallest key list.
inline BruteBest brute_force_mwm(const WeightedGraph& g, const std::function<Weight(EdgeId)>& w) {
  std::vector<EdgeId> ids;
  for (EdgeId e = 0; e < g.num_edges(); ++e)
    if (w(e) > 0) ids.push_back(e);
  std::sort(ids.begin(), ids.end(), [&](EdgeId a, EdgeId b) { return key(g, a) < key(g, b); });
  BruteBest best;
  std::vector<char> used(g.num_vertices(), 0);
  std::vector<std::pair<Vertex, Vertex>> cur;
  std::function<void(std::size_t, Weight)> rec = [&](std::size_t i, Weight total) {
    if (i == ids.size()) {
      if (total > best.weight || (total == best.weight && cur < best.edges)) {
        best.weight = total;
        best.edges = cur;
      }
      return;
    }
    rec(i + 1, total);
    const Edge& ed = g.edge(ids[i]);
    if (!used[ed.u] && !used[ed.v]) {
      used[ed.u] = used[ed.v] = 1;
      cur.push_back(key(g, ids[i]));
      rec(i + 1, total + w(ids[i]));
      cur.pop_back();
      used[ed.u] = used[ed.v] = 0;
    }
  };
  rec(0, 0);
  return best;
}

inline BruteBest brute_force_mwm(const WeightedGraph& g) {
  return brute_force_mwm(g, [&g](EdgeId e) { return g.weight(e); });
}

inline std::size_t brute_force_mcm(const WeightedGraph& g) {
  std::size_t best = 0;
  std::vector<char> used(g.num_vertices(), 0);
  std::function<void(EdgeId, std::size_t)> rec = [&](EdgeId i, std::size_t size) {
    if (size + static_cast<std::size_t>(g.num_edges() - i) <= best) return;
    if (i == g.num_edges()) {
      best = std::max(best, size);
      return;
    }
    const Edge& ed = g.edge(i);
    if (!used[ed.u] && !used[ed.v]) {
      used[ed.u] = used[ed.v] = 1;
      rec(i + 1, size + 1);
      used[ed.u] = used[ed.v] = 0;
    }
    rec(i + 1, size);
  };
  rec(0, 0);
  return best;
}

// Smallest vertex cover by subset enumeration.
inline std::size_t brute_force_vertex_cover(const WeightedGraph& g) {
  const Vertex n = g.num_vertices();
  std::size_t best = static_cast<std::size_t>(n);
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    bool ok = true;
    for (const Edge& e : g.edges())
      if (!((mask >> e.u) & 1) && !((mask >> e.v) & 1)) {
        ok = false;
        break;
      }
    if (ok) best = std::min<std::size_t>(best, static_cast<std::size_t>(__builtin_popcount(mask)));
  }
  return best;
}

inline bool is_matching(const WeightedGraph& g, const std::vector<EdgeId>& ids) {
  std::vector<char> used(g.num_vertices(), 0);
  for (EdgeId e : ids) {
    const Edge& ed = g.edge(e);
    if (used[ed.u] || used[ed.v]) return false;
    used[ed.u] = used[ed.v] = 1;
  }
  return true;
}

inline Weight recompute_weight(const Matching& m) {
  Weight total = 0;
  for (Vertex v = 0; v < m.graph().num_vertices(); ++v) {
    const EdgeId e = m.mate_edge(v);
    if (e != kNoEdge && m.graph().other(e, v) > v) total += m.graph().weight(e);
  }
  return total;
}

struct EdgeSetAug {
  std::vector<EdgeId> edges;
  Weight gain;
};

// Best-gain alternating path or cycle with at most max_edges edges, by enumerating edge subsets
// and checking the shape directly.
inline std::optional<EdgeSetAug> brute_best_short_aug(const Matching& m, int max_edges) {
  const WeightedGraph& g = m.graph();
  const EdgeId total = g.num_edges();
  std::optional<EdgeSetAug> best;
  std::vector<EdgeId> pick;
  auto evaluate = [&]() {
    std::map<Vertex, std::vector<EdgeId>> inc;
    for (EdgeId e : pick) {
      inc[g.edge(e).u].push_back(e);
      inc[g.edge(e).v].push_back(e);
    }
    for (auto& [v, es] : inc) {
      if (es.size() > 2) return;
      if (es.size() == 2 && m.contains(es[0]) == m.contains(es[1])) return;
    }
    // Connected?
    std::set<Vertex> seen;
    std::vector<Vertex> stack{inc.begin()->first};
    while (!stack.empty()) {
      Vertex v = stack.back();
      stack.pop_back();
      if (!seen.insert(v).second) continue;
      for (EdgeId e : inc[v]) stack.push_back(g.other(e, v));
    }
    if (seen.size() != inc.size()) return;
    const bool cycle = inc.size() == pick.size();
    if (cycle && pick.size() % 2 != 0) return;
    Weight gain = 0;
    std::set<EdgeId> nb;
    for (EdgeId e : pick)
      if (!m.contains(e)) gain += g.weight(e);
    for (auto& [v, es] : inc) {
      (void)es;
      if (m.mate_edge(v) != kNoEdge) nb.insert(m.mate_edge(v));
    }
    for (EdgeId e : nb) gain -= g.weight(e);
    if (!best || gain > best->gain) best = EdgeSetAug{pick, gain};
  };
  std::function<void(EdgeId)> rec = [&](EdgeId from) {
    if (!pick.empty()) evaluate();
    if (static_cast<int>(pick.size()) == max_edges) return;
    for (EdgeId e = from; e < total; ++e) {
      pick.push_back(e);
      rec(e + 1);
      pick.pop_back();
    }
  };
  rec(0);
  return best;
}

// k matched edges (4i+1, 4i+2), listed first, with free ends 4i and 4i+3, plus `extra` noise
// edges among the matched vertices. The first `planted` paths get both wing edges, which come
// right after the matched ones.
inline WeightedGraph plant_three_paths(int k, int planted, int extra, std::mt19937_64& rng) {
  std::vector<Edge> edges;
  for (int i = 0; i < k; ++i) edges.push_back({4 * i + 1, 4 * i + 2, 1});
  for (int i = 0; i < planted; ++i) {
    edges.push_back({4 * i, 4 * i + 1, 1});
    edges.push_back({4 * i + 2, 4 * i + 3, 1});
  }
  std::set<std::pair<Vertex, Vertex>> have;
  for (const Edge& e : edges) have.insert(std::minmax(e.u, e.v));
  for (int t = 0; t < extra; ++t) {
    Vertex x = 4 * static_cast<Vertex>(rng() % k) + 1 + static_cast<Vertex>(rng() % 2);
    Vertex y = 4 * static_cast<Vertex>(rng() % k) + 1 + static_cast<Vertex>(rng() % 2);
    if (x == y || !have.insert(std::minmax(x, y)).second) continue;
    edges.push_back({x, y, 1});
  }
  return WeightedGraph(4 * k, edges);
}

inline Matching first_edges_matching(const WeightedGraph& g, int k) {
  Matching m(g);
  for (EdgeId e = 0; e < k; ++e) m.add(e);
  return m;
}

// Applies an edge-set augmentation found by brute_best_short_aug.
inline Matching apply_edge_set(const Matching& m, const std::vector<EdgeId>& edges) {
  Matching out = m;
  std::set<EdgeId> nb;
  for (EdgeId e : edges)
    for (Vertex x : {m.graph().edge(e).u, m.graph().edge(e).v})
      if (m.mate_edge(x) != kNoEdge) nb.insert(m.mate_edge(x));
  for (EdgeId e : nb) out.remove(e);
  for (EdgeId e : edges)
    if (!m.contains(e)) out.add(e);
  return out;
}

}  // namespace testsupport
