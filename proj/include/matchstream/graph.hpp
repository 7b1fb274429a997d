#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace matchstream {

using Vertex = std::int32_t;
using EdgeId = std::int32_t;
using Weight = std::int64_t;

inline constexpr EdgeId kNoEdge = -1;
inline constexpr Vertex kNoVertex = -1;

struct Edge {
  Vertex u;
  Vertex v;
  Weight w;
};

// Weights must lie in [min_weight, n^weight_exponent].
struct GraphLimits {
  Weight min_weight = 1;
  int weight_exponent = 4;
};

Weight checked_add(Weight a, Weight b);

class WeightedGraph {
 public:
  WeightedGraph() = default;
  WeightedGraph(Vertex n, std::vector<Edge> edges, GraphLimits limits = {});

  Vertex num_vertices() const { return n_; }
  EdgeId num_edges() const { return static_cast<EdgeId>(edges_.size()); }
  const Edge& edge(EdgeId e) const { return edges_[e]; }
  const std::vector<Edge>& edges() const { return edges_; }
  Weight weight(EdgeId e) const { return edges_[e].w; }
  Vertex other(EdgeId e, Vertex v) const { return edges_[e].u == v ? edges_[e].v : edges_[e].u; }
  std::span<const EdgeId> incident(Vertex v) const {
    return {adj_.data() + offsets_[v], adj_.data() + offsets_[v + 1]};
  }
  // kNoEdge when u and v are not adjacent.
  EdgeId find_edge(Vertex u, Vertex v) const;
  Weight max_weight() const { return max_weight_; }

 private:
  Vertex n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_{0};
  std::vector<EdgeId> adj_;
  std::unordered_map<std::uint64_t, EdgeId> index_;
  Weight max_weight_ = 0;
};

// Orders edges by (min endpoint, max endpoint).
bool canonical_less(const WeightedGraph& g, EdgeId a, EdgeId b);
void sort_canonical(const WeightedGraph& g, std::vector<EdgeId>& ids);

WeightedGraph read_graph(std::istream& in, GraphLimits limits = {});
WeightedGraph read_graph_file(const std::string& path, GraphLimits limits = {});
void write_graph(std::ostream& out, const WeightedGraph& g);

// Matched edge of a vertex; an unmatched vertex reports the zero-weight sentinel.
struct MateEdge {
  EdgeId id = kNoEdge;
  Weight w = 0;
};

class Matching {
 public:
  explicit Matching(const WeightedGraph& g);

  const WeightedGraph& graph() const { return *g_; }
  bool contains(EdgeId e) const;
  bool is_matched(Vertex v) const { return mate_[v] != kNoEdge; }
  EdgeId mate_edge(Vertex v) const { return mate_[v]; }
  Vertex mate(Vertex v) const { return mate_[v] == kNoEdge ? kNoVertex : g_->other(mate_[v], v); }
  MateEdge at(Vertex v) const {
    return mate_[v] == kNoEdge ? MateEdge{} : MateEdge{mate_[v], g_->weight(mate_[v])};
  }
  bool can_add(EdgeId e) const;
  void add(EdgeId e);
  void remove(EdgeId e);
  Weight weight() const { return weight_; }
  std::size_t size() const { return size_; }
  // Matched edges in canonical order.
  std::vector<EdgeId> edges() const;

  friend bool operator==(const Matching& a, const Matching& b) { return a.mate_ == b.mate_; }

 private:
  const WeightedGraph* g_;
  std::vector<EdgeId> mate_;
  std::size_t size_ = 0;
  Weight weight_ = 0;
};

// Throws StructuralError when the edge set is not a matching of g.
Matching matching_from_edges(const WeightedGraph& g, std::span<const EdgeId> ids);

enum class AugKind { Path, Cycle };

// A path lists k+1 vertices for k edges; a cycle lists k vertices and closes back to the first.
struct Augmentation {
  AugKind kind = AugKind::Path;
  std::vector<Vertex> vertices;
  std::vector<EdgeId> edges;

  friend bool operator==(const Augmentation&, const Augmentation&) = default;
};

Augmentation make_path(const WeightedGraph& g, std::vector<Vertex> vertices);
Augmentation make_cycle(const WeightedGraph& g, std::vector<Vertex> vertices);

// Throws StructuralError unless the edges alternate between M and non-M edges.
void check_alternating(const Augmentation& aug, const Matching& m);
// M-edges touching any vertex of the augmentation, canonical order.
std::vector<EdgeId> neighborhood(const Augmentation& aug, const Matching& m);
// Vertices of the augmentation plus the far ends of its matched neighborhood, sorted.
std::vector<Vertex> touched_vertices(const Augmentation& aug, const Matching& m);
Weight gain(const Augmentation& aug, const Matching& m);
Matching apply_augmentation(const Matching& m, const Augmentation& aug);
Augmentation canonical(const Augmentation& aug);

// Maximal alternating paths and cycles of m xor other, as augmentations of m.
std::vector<Augmentation> symmetric_difference_augmentations(const Matching& m, const Matching& other);

}  // namespace matchstream
