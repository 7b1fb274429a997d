#include "matchstream/oracles.hpp"

#include <algorithm>
#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/max_cardinality_matching.hpp>
#include <boost/graph/maximum_weighted_matching.hpp>
#include <limits>
#include <queue>
#include <unordered_map>

#include "matchstream/errors.hpp"

namespace matchstream {

namespace {

struct LocalEdge {
  int to;
  Weight w;
  EdgeId id;
};

class SubsetSolver {
 public:
  explicit SubsetSolver(std::vector<std::vector<LocalEdge>> adj) : adj_(std::move(adj)) {}

  Weight best(std::uint32_t mask) {
    if (mask == 0) return 0;
    auto it = memo_.find(mask);
    if (it != memo_.end()) return it->second;
    const int v = __builtin_ctz(mask);
    const std::uint32_t rest = mask & ~(1u << v);
    Weight r = best(rest);
    for (const LocalEdge& e : adj_[v])
      if (rest & (1u << e.to)) r = std::max(r, e.w + best(rest & ~(1u << e.to)));
    memo_.emplace(mask, r);
    return r;
  }

  // Walks the lowest vertex first, matching it whenever some optimum does.
  std::vector<EdgeId> reconstruct(std::uint32_t mask) {
    std::vector<EdgeId> out;
    while (mask != 0) {
      const Weight target = best(mask);
      if (target == 0) break;
      const int v = __builtin_ctz(mask);
      const std::uint32_t rest = mask & ~(1u << v);
      bool matched = false;
      for (const LocalEdge& e : adj_[v]) {
        if (!(rest & (1u << e.to))) continue;
        const std::uint32_t after = rest & ~(1u << e.to);
        if (e.w + best(after) == target) {
          out.push_back(e.id);
          mask = after;
          matched = true;
          break;
        }
      }
      if (!matched) mask = rest;
    }
    return out;
  }

 private:
  std::vector<std::vector<LocalEdge>> adj_;
  std::unordered_map<std::uint32_t, Weight> memo_;
};

}  // namespace

ExactMatching exact_mwm(const WeightedGraph& g, const WeightFn& weight, OracleBudget budget) {
  std::vector<EdgeId> used;
  std::vector<Weight> wt(g.num_edges(), 0);
  std::vector<char> in_support(g.num_vertices(), 0);
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    wt[e] = weight(e);
    if (wt[e] > 0) {
      used.push_back(e);
      in_support[g.edge(e).u] = in_support[g.edge(e).v] = 1;
    }
  }
  std::vector<int> local(g.num_vertices(), -1);
  int k = 0;
  for (Vertex v = 0; v < g.num_vertices(); ++v)
    if (in_support[v]) local[v] = k++;
  const int vertex_cap = std::min(budget.max_vertices, 31);
  if (k > vertex_cap || static_cast<int>(used.size()) > budget.max_edges)
    throw OracleOversize("exact_mwm: " + std::to_string(k) + " vertices / " + std::to_string(used.size()) +
                         " edges exceeds budget " + std::to_string(budget.max_vertices) + " / " +
                         std::to_string(budget.max_edges));
  std::vector<std::vector<LocalEdge>> adj(k);
  for (EdgeId e : used) {
    const int a = local[g.edge(e).u], b = local[g.edge(e).v];
    adj[std::min(a, b)].push_back({std::max(a, b), wt[e], e});
  }
  for (auto& list : adj)
    std::sort(list.begin(), list.end(), [](const LocalEdge& x, const LocalEdge& y) { return x.to < y.to; });
  SubsetSolver solver(std::move(adj));
  const std::uint32_t all = k == 32 ? ~0u : ((1u << k) - 1);
  const Weight value = solver.best(all);
  std::vector<EdgeId> chosen = solver.reconstruct(all);
  return {matching_from_edges(g, chosen), value};
}

ExactMatching exact_mwm(const WeightedGraph& g, OracleBudget budget) {
  return exact_mwm(g, [&g](EdgeId e) { return g.weight(e); }, budget);
}

CardinalityMatching hopcroft_karp(const BipartiteGraph& b, const CardinalityMatching* init) {
  std::vector<std::vector<int>> adj(b.left);
  for (auto [l, r] : b.edges) {
    if (l < 0 || l >= b.left || r < 0 || r >= b.right) throw StructuralError("bipartite edge out of range");
    adj[l].push_back(r);
  }
  CardinalityMatching m;
  m.mate_left.assign(b.left, -1);
  m.mate_right.assign(b.right, -1);
  if (init != nullptr) {
    for (int l = 0; l < b.left && l < static_cast<int>(init->mate_left.size()); ++l) {
      int r = init->mate_left[l];
      if (r < 0) continue;
      if (r >= b.right || m.mate_right[r] != -1) throw StructuralError("warm-start matching is not valid");
      m.mate_left[l] = r;
      m.mate_right[r] = l;
      ++m.size;
    }
  }
  const int inf = std::numeric_limits<int>::max();
  std::vector<int> dist(b.left);
  std::vector<std::size_t> it(b.left);

  auto bfs = [&]() {
    std::queue<int> q;
    bool found = false;
    for (int l = 0; l < b.left; ++l) {
      if (m.mate_left[l] == -1) {
        dist[l] = 0;
        q.push(l);
      } else {
        dist[l] = inf;
      }
    }
    while (!q.empty()) {
      int l = q.front();
      q.pop();
      for (int r : adj[l]) {
        int l2 = m.mate_right[r];
        if (l2 == -1) {
          found = true;
        } else if (dist[l2] == inf) {
          dist[l2] = dist[l] + 1;
          q.push(l2);
        }
      }
    }
    return found;
  };

  // Iterative DFS along the BFS layering.
  auto dfs = [&](int root) {
    std::vector<int> stack{root};
    std::vector<int> via;  // right vertex taken from stack[i] to reach stack[i+1]
    while (!stack.empty()) {
      int l = stack.back();
      bool advanced = false;
      while (it[l] < adj[l].size()) {
        int r = adj[l][it[l]++];
        int l2 = m.mate_right[r];
        if (l2 == -1) {
          via.push_back(r);
          for (std::size_t i = 0; i < stack.size(); ++i) {
            m.mate_left[stack[i]] = via[i];
            m.mate_right[via[i]] = stack[i];
          }
          return true;
        }
        if (dist[l2] == dist[l] + 1) {
          via.push_back(r);
          stack.push_back(l2);
          advanced = true;
          break;
        }
      }
      if (!advanced) {
        dist[l] = inf;
        stack.pop_back();
        if (!via.empty()) via.pop_back();
      }
    }
    return false;
  };

  while (bfs()) {
    std::fill(it.begin(), it.end(), 0);
    for (int l = 0; l < b.left; ++l)
      if (m.mate_left[l] == -1 && dfs(l)) ++m.size;
  }
  return m;
}

Matching exact_mcm_bipartite(const WeightedGraph& g) {
  const Vertex n = g.num_vertices();
  std::vector<int> color(n, -1);
  for (Vertex s = 0; s < n; ++s) {
    if (color[s] != -1) continue;
    color[s] = 0;
    std::queue<Vertex> q;
    q.push(s);
    while (!q.empty()) {
      Vertex v = q.front();
      q.pop();
      for (EdgeId e : g.incident(v)) {
        Vertex u = g.other(e, v);
        if (color[u] == -1) {
          color[u] = 1 - color[v];
          q.push(u);
        } else if (color[u] == color[v]) {
          throw StructuralError("graph is not bipartite (odd cycle through vertex " + std::to_string(v) + ")");
        }
      }
    }
  }
  std::vector<int> index(n);
  BipartiteGraph b;
  std::vector<Vertex> left_of, right_of;
  for (Vertex v = 0; v < n; ++v) {
    if (color[v] == 0) {
      index[v] = b.left++;
      left_of.push_back(v);
    } else {
      index[v] = b.right++;
      right_of.push_back(v);
    }
  }
  for (const Edge& e : g.edges()) {
    Vertex l = color[e.u] == 0 ? e.u : e.v;
    Vertex r = color[e.u] == 0 ? e.v : e.u;
    b.edges.push_back({index[l], index[r]});
  }
  CardinalityMatching cm = hopcroft_karp(b);
  Matching out(g);
  for (int l = 0; l < b.left; ++l)
    if (cm.mate_left[l] != -1) out.add(g.find_edge(left_of[l], right_of[cm.mate_left[l]]));
  return out;
}

Matching max_cardinality_matching(const WeightedGraph& g) {
  using BGraph = boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS>;
  BGraph bg(g.num_vertices());
  for (const Edge& e : g.edges()) boost::add_edge(e.u, e.v, bg);
  std::vector<boost::graph_traits<BGraph>::vertex_descriptor> mate(g.num_vertices());
  boost::edmonds_maximum_cardinality_matching(bg, &mate[0]);
  Matching out(g);
  const auto null_v = boost::graph_traits<BGraph>::null_vertex();
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    if (mate[v] != null_v && static_cast<Vertex>(mate[v]) > v) out.add(g.find_edge(v, static_cast<Vertex>(mate[v])));
  }
  return out;
}

Weight reference_mwm_weight(const WeightedGraph& g) {
  using BGraph = boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS, boost::no_property,
                                       boost::property<boost::edge_weight_t, Weight>>;
  BGraph bg(g.num_vertices());
  for (const Edge& e : g.edges()) boost::add_edge(e.u, e.v, e.w, bg);
  std::vector<boost::graph_traits<BGraph>::vertex_descriptor> mate(g.num_vertices());
  boost::maximum_weighted_matching(bg, &mate[0]);
  Weight total = 0;
  const auto null_v = boost::graph_traits<BGraph>::null_vertex();
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    if (mate[v] != null_v && static_cast<Vertex>(mate[v]) > v)
      total = checked_add(total, g.weight(g.find_edge(v, static_cast<Vertex>(mate[v]))));
  }
  return total;
}

namespace {

class ShortAugSearch {
 public:
  ShortAugSearch(const Matching& m, int max_edges) : m_(m), g_(m.graph()), max_edges_(max_edges) {
    on_path_.assign(g_.num_vertices(), 0);
  }

  std::optional<Augmentation> run() {
    for (Vertex s = 0; s < g_.num_vertices() && !found_; ++s) {
      path_ = {s};
      on_path_[s] = 1;
      extend(-1);
      on_path_[s] = 0;
    }
    return found_;
  }

 private:
  // last_matched: -1 at the start, otherwise whether the previous edge is in M.
  void extend(int last_matched) {
    if (found_) return;
    const int len = static_cast<int>(path_.size()) - 1;
    if (len >= 1) {
      Augmentation p = make_path(g_, path_);
      if (gain(p, m_) > 0) {
        found_ = p;
        return;
      }
      if (len >= 3 && len + 1 <= max_edges_) {
        EdgeId close = g_.find_edge(path_.back(), path_.front());
        EdgeId first = g_.find_edge(path_[0], path_[1]);
        if (close != kNoEdge && m_.contains(close) != static_cast<bool>(last_matched) &&
            m_.contains(close) != m_.contains(first)) {
          Augmentation c = make_cycle(g_, path_);
          if (gain(c, m_) > 0) {
            found_ = c;
            return;
          }
        }
      }
    }
    if (len >= max_edges_) return;
    const Vertex cur = path_.back();
    for (EdgeId e : g_.incident(cur)) {
      const int matched = m_.contains(e) ? 1 : 0;
      if (last_matched != -1 && matched == last_matched) continue;
      const Vertex nxt = g_.other(e, cur);
      if (on_path_[nxt]) continue;
      on_path_[nxt] = 1;
      path_.push_back(nxt);
      extend(matched);
      path_.pop_back();
      on_path_[nxt] = 0;
      if (found_) return;
    }
  }

  const Matching& m_;
  const WeightedGraph& g_;
  int max_edges_;
  std::vector<Vertex> path_;
  std::vector<char> on_path_;
  std::optional<Augmentation> found_;
};

}  // namespace

std::optional<Augmentation> find_short_augmentation(const Matching& m, int ell, OracleBudget budget) {
  if (ell < 1) throw ParameterError("augmentation length parameter must be at least 1");
  if (m.graph().num_vertices() > budget.max_vertices)
    throw OracleOversize("short-augmentation search: graph has " + std::to_string(m.graph().num_vertices()) +
                         " vertices, budget " + std::to_string(budget.max_vertices));
  ShortAugSearch search(m, 2 * ell - 1);
  return search.run();
}

bool has_short_augmentation(const Matching& m, int ell, OracleBudget budget) {
  return find_short_augmentation(m, ell, budget).has_value();
}

}  // namespace matchstream
