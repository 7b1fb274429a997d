#include "matchstream/graph.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "matchstream/errors.hpp"

namespace matchstream {

namespace {

std::uint64_t pair_key(Vertex u, Vertex v) {
  if (u > v) std::swap(u, v);
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(u)) << 32) | static_cast<std::uint32_t>(v);
}

Weight saturating_pow(Weight base, int exp) {
  Weight r = 1;
  for (int i = 0; i < exp; ++i) {
    if (base != 0 && r > std::numeric_limits<Weight>::max() / base) return std::numeric_limits<Weight>::max();
    r *= base;
  }
  return r;
}

std::string edge_str(const Edge& e) {
  std::ostringstream os;
  os << "(" << e.u << "," << e.v << ")";
  return os.str();
}

}  // namespace

Weight checked_add(Weight a, Weight b) {
  Weight r;
  if (__builtin_add_overflow(a, b, &r)) throw ParameterError("weight sum overflows 64 bits");
  return r;
}

WeightedGraph::WeightedGraph(Vertex n, std::vector<Edge> edges, GraphLimits limits)
    : n_(n), edges_(std::move(edges)) {
  if (n < 0) throw ParameterError("negative vertex count");
  if (edges_.size() > static_cast<std::size_t>(std::numeric_limits<EdgeId>::max()))
    throw ParameterError("too many edges");
  const Weight max_allowed = saturating_pow(std::max<Weight>(n, 2), limits.weight_exponent);
  std::vector<std::size_t> deg(static_cast<std::size_t>(n) + 1, 0);
  index_.reserve(edges_.size() * 2);
  for (EdgeId id = 0; id < num_edges(); ++id) {
    const Edge& e = edges_[id];
    if (e.u < 0 || e.v < 0 || e.u >= n || e.v >= n)
      throw StructuralError("edge " + edge_str(e) + " has an endpoint outside [0, n)");
    if (e.u == e.v) throw StructuralError("self-loop at vertex " + std::to_string(e.u));
    if (e.w < limits.min_weight || e.w > max_allowed)
      throw StructuralError("edge " + edge_str(e) + " weight " + std::to_string(e.w) + " out of range");
    if (!index_.emplace(pair_key(e.u, e.v), id).second)
      throw StructuralError("parallel edge " + edge_str(e));
    ++deg[e.u];
    ++deg[e.v];
    max_weight_ = std::max(max_weight_, e.w);
  }
  offsets_.assign(static_cast<std::size_t>(n) + 1, 0);
  for (Vertex v = 0; v < n; ++v) offsets_[v + 1] = offsets_[v] + deg[v];
  adj_.resize(offsets_[n]);
  std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
  for (EdgeId id = 0; id < num_edges(); ++id) {
    adj_[fill[edges_[id].u]++] = id;
    adj_[fill[edges_[id].v]++] = id;
  }
}

EdgeId WeightedGraph::find_edge(Vertex u, Vertex v) const {
  auto it = index_.find(pair_key(u, v));
  return it == index_.end() ? kNoEdge : it->second;
}

bool canonical_less(const WeightedGraph& g, EdgeId a, EdgeId b) {
  const Edge& x = g.edge(a);
  const Edge& y = g.edge(b);
  auto kx = std::minmax(x.u, x.v);
  auto ky = std::minmax(y.u, y.v);
  return kx < ky;
}

void sort_canonical(const WeightedGraph& g, std::vector<EdgeId>& ids) {
  std::sort(ids.begin(), ids.end(), [&](EdgeId a, EdgeId b) { return canonical_less(g, a, b); });
}

WeightedGraph read_graph(std::istream& in, GraphLimits limits) {
  std::string line;
  std::size_t lineno = 0;
  auto next_line = [&]() -> bool {
    if (!std::getline(in, line)) return false;
    ++lineno;
    if (!line.empty() && line.back() == '\r') throw InputError("line " + std::to_string(lineno) + ": CR line ending");
    return true;
  };
  auto fail = [&](const std::string& what) { throw InputError("line " + std::to_string(lineno) + ": " + what); };

  if (!next_line()) throw InputError("empty graph file");
  long long n = 0, m = 0;
  {
    std::istringstream hs(line);
    std::string rest;
    if (!(hs >> n >> m) || (hs >> rest)) fail("expected 'n m'");
    if (n < 0 || m < 0) fail("negative count");
    if (n > std::numeric_limits<Vertex>::max()) fail("vertex count too large");
  }
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(m));
  for (long long i = 0; i < m; ++i) {
    if (!next_line()) throw InputError("expected " + std::to_string(m) + " edges, got " + std::to_string(i));
    std::istringstream es(line);
    long long u, v, w;
    std::string rest;
    if (!(es >> u >> v >> w) || (es >> rest)) fail("expected 'u v w'");
    if (u < 0 || v < 0 || u >= n || v >= n) fail("vertex out of range");
    edges.push_back({static_cast<Vertex>(u), static_cast<Vertex>(v), static_cast<Weight>(w)});
  }
  while (next_line()) {
    if (line.find_first_not_of(" \t") != std::string::npos) fail("trailing content after edge list");
  }
  return WeightedGraph(static_cast<Vertex>(n), std::move(edges), limits);
}

WeightedGraph read_graph_file(const std::string& path, GraphLimits limits) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  try {
    return read_graph(in, limits);
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
}

void write_graph(std::ostream& out, const WeightedGraph& g) {
  out << g.num_vertices() << ' ' << g.num_edges() << '\n';
  for (const Edge& e : g.edges()) out << e.u << ' ' << e.v << ' ' << e.w << '\n';
}

Matching::Matching(const WeightedGraph& g) : g_(&g), mate_(g.num_vertices(), kNoEdge) {}

bool Matching::contains(EdgeId e) const {
  const Edge& ed = g_->edge(e);
  return mate_[ed.u] == e;
}

bool Matching::can_add(EdgeId e) const {
  const Edge& ed = g_->edge(e);
  return mate_[ed.u] == kNoEdge && mate_[ed.v] == kNoEdge;
}

void Matching::add(EdgeId e) {
  const Edge& ed = g_->edge(e);
  if (!can_add(e)) throw StructuralError("edge " + edge_str(ed) + " conflicts with the matching");
  mate_[ed.u] = e;
  mate_[ed.v] = e;
  ++size_;
  weight_ = checked_add(weight_, ed.w);
}

void Matching::remove(EdgeId e) {
  const Edge& ed = g_->edge(e);
  if (!contains(e)) throw StructuralError("edge " + edge_str(ed) + " is not matched");
  mate_[ed.u] = kNoEdge;
  mate_[ed.v] = kNoEdge;
  --size_;
  weight_ -= ed.w;
}

std::vector<EdgeId> Matching::edges() const {
  std::vector<EdgeId> out;
  out.reserve(size_);
  for (Vertex v = 0; v < static_cast<Vertex>(mate_.size()); ++v) {
    EdgeId e = mate_[v];
    if (e != kNoEdge && g_->other(e, v) > v) out.push_back(e);
  }
  return out;  // already canonical: scanned by smaller endpoint, one edge per vertex
}

Matching matching_from_edges(const WeightedGraph& g, std::span<const EdgeId> ids) {
  Matching m(g);
  for (EdgeId e : ids) m.add(e);
  return m;
}

namespace {

Augmentation make_walk(const WeightedGraph& g, std::vector<Vertex> vs, AugKind kind) {
  Augmentation a;
  a.kind = kind;
  std::vector<Vertex> sorted = vs;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw StructuralError("augmentation repeats a vertex");
  std::size_t steps = vs.size() < 2 ? 0 : (kind == AugKind::Cycle ? vs.size() : vs.size() - 1);
  if (kind == AugKind::Cycle && !vs.empty() && vs.size() < 4)
    throw StructuralError("alternating cycle needs at least 4 vertices");
  for (std::size_t i = 0; i < steps; ++i) {
    Vertex x = vs[i], y = vs[(i + 1) % vs.size()];
    EdgeId e = g.find_edge(x, y);
    if (e == kNoEdge) throw StructuralError("no edge between " + std::to_string(x) + " and " + std::to_string(y));
    a.edges.push_back(e);
  }
  a.vertices = std::move(vs);
  return a;
}

}  // namespace

Augmentation make_path(const WeightedGraph& g, std::vector<Vertex> vertices) {
  return make_walk(g, std::move(vertices), AugKind::Path);
}

Augmentation make_cycle(const WeightedGraph& g, std::vector<Vertex> vertices) {
  return make_walk(g, std::move(vertices), AugKind::Cycle);
}

void check_alternating(const Augmentation& aug, const Matching& m) {
  const std::size_t k = aug.edges.size();
  for (std::size_t i = 0; i + 1 < k; ++i) {
    if (m.contains(aug.edges[i]) == m.contains(aug.edges[i + 1]))
      throw StructuralError("augmentation is not alternating at position " + std::to_string(i));
  }
  if (aug.kind == AugKind::Cycle && k > 0) {
    if (k % 2 != 0 || m.contains(aug.edges[0]) == m.contains(aug.edges[k - 1]))
      throw StructuralError("alternating cycle must have even length");
  }
}

std::vector<EdgeId> neighborhood(const Augmentation& aug, const Matching& m) {
  std::vector<EdgeId> out;
  for (Vertex v : aug.vertices) {
    EdgeId e = m.mate_edge(v);
    if (e != kNoEdge) out.push_back(e);
  }
  sort_canonical(m.graph(), out);
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<Vertex> touched_vertices(const Augmentation& aug, const Matching& m) {
  std::vector<Vertex> out = aug.vertices;
  for (Vertex v : aug.vertices) {
    Vertex u = m.mate(v);
    if (u != kNoVertex) out.push_back(u);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Weight gain(const Augmentation& aug, const Matching& m) {
  check_alternating(aug, m);
  const WeightedGraph& g = m.graph();
  Weight added = 0, removed = 0;
  for (EdgeId e : aug.edges)
    if (!m.contains(e)) added = checked_add(added, g.weight(e));
  for (EdgeId e : neighborhood(aug, m)) removed = checked_add(removed, g.weight(e));
  return added - removed;
}

Matching apply_augmentation(const Matching& m, const Augmentation& aug) {
  check_alternating(aug, m);
  Matching out = m;
  for (EdgeId e : neighborhood(aug, m)) out.remove(e);
  for (EdgeId e : aug.edges)
    if (!m.contains(e)) out.add(e);
  return out;
}

Augmentation canonical(const Augmentation& aug) {
  Augmentation a = aug;
  auto& vs = a.vertices;
  if (vs.size() < 2) return a;
  if (a.kind == AugKind::Path) {
    if (vs.front() > vs.back()) {
      std::reverse(vs.begin(), vs.end());
      std::reverse(a.edges.begin(), a.edges.end());
    }
    return a;
  }
  const std::size_t k = vs.size();
  std::size_t s = std::min_element(vs.begin(), vs.end()) - vs.begin();
  // edges[i] joins vs[i] and vs[i+1]; rotate so vs[s] comes first.
  std::rotate(vs.begin(), vs.begin() + s, vs.end());
  std::rotate(a.edges.begin(), a.edges.begin() + s, a.edges.end());
  if (vs[k - 1] < vs[1]) {
    std::reverse(vs.begin() + 1, vs.end());
    std::reverse(a.edges.begin(), a.edges.end());
  }
  return a;
}

std::vector<Augmentation> symmetric_difference_augmentations(const Matching& m, const Matching& other) {
  const WeightedGraph& g = m.graph();
  if (&g != &other.graph()) throw StructuralError("matchings belong to different graphs");
  const Vertex n = g.num_vertices();
  // Each vertex has at most one edge from each side of the difference.
  auto diff_edges = [&](Vertex v) {
    std::pair<EdgeId, EdgeId> r{kNoEdge, kNoEdge};
    EdgeId a = m.mate_edge(v), b = other.mate_edge(v);
    if (a != b) {
      r.first = a;
      r.second = b;
    }
    return r;
  };
  auto degree = [&](Vertex v) {
    auto [a, b] = diff_edges(v);
    return (a != kNoEdge) + (b != kNoEdge);
  };
  std::vector<char> seen(n, 0);
  std::vector<Augmentation> out;
  auto walk = [&](Vertex start, AugKind kind) {
    std::vector<Vertex> vs{start};
    seen[start] = 1;
    EdgeId prev = kNoEdge;
    Vertex cur = start;
    while (true) {
      auto [a, b] = diff_edges(cur);
      EdgeId next = (a != kNoEdge && a != prev) ? a : (b != kNoEdge && b != prev ? b : kNoEdge);
      if (next == kNoEdge) break;
      Vertex nxt = g.other(next, cur);
      if (nxt == start) break;
      vs.push_back(nxt);
      seen[nxt] = 1;
      prev = next;
      cur = nxt;
    }
    out.push_back(canonical(kind == AugKind::Path ? make_path(g, std::move(vs)) : make_cycle(g, std::move(vs))));
  };
  for (Vertex v = 0; v < n; ++v)
    if (!seen[v] && degree(v) == 1) walk(v, AugKind::Path);
  for (Vertex v = 0; v < n; ++v)
    if (!seen[v] && degree(v) == 2) walk(v, AugKind::Cycle);
  std::sort(out.begin(), out.end(), [](const Augmentation& x, const Augmentation& y) {
    return *std::min_element(x.vertices.begin(), x.vertices.end()) <
           *std::min_element(y.vertices.begin(), y.vertices.end());
  });
  return out;
}

}  // namespace matchstream
