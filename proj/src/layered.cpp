#include "matchstream/layered.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <queue>
#include <sstream>

#include "matchstream/errors.hpp"
#include "matchstream/random.hpp"

namespace matchstream {

Parametrization parametrization_from_sides(const Matching& m, std::vector<Side> side) {
  const WeightedGraph& g = m.graph();
  if (static_cast<Vertex>(side.size()) != g.num_vertices()) throw ParameterError("side vector has the wrong size");
  Parametrization p;
  p.side = std::move(side);
  std::vector<EdgeId> ids(g.num_edges());
  for (EdgeId e = 0; e < g.num_edges(); ++e) ids[e] = e;
  sort_canonical(g, ids);
  for (EdgeId e : ids) {
    const Edge& ed = g.edge(e);
    if (p.side[ed.u] == p.side[ed.v]) continue;
    (m.contains(e) ? p.a_edges : p.b_edges).push_back(e);
  }
  return p;
}

Parametrization random_bipartition(const Matching& m, std::uint64_t seed) {
  SplitMix64 rng(seed);
  std::vector<Side> side(m.graph().num_vertices());
  for (auto& s : side) s = rng.coin() ? Side::R : Side::L;
  return parametrization_from_sides(m, std::move(side));
}

std::string to_string(const GoodPair& p) {
  std::ostringstream os;
  os << "tauA=(";
  for (std::size_t i = 0; i < p.tau_a.size(); ++i) os << (i ? "," : "") << p.tau_a[i];
  os << ") tauB=(";
  for (std::size_t i = 0; i < p.tau_b.size(); ++i) os << (i ? "," : "") << p.tau_b[i];
  os << ")";
  return os.str();
}

std::int64_t max_pair_length(double eps) {
  return static_cast<std::int64_t>(std::floor((2.0 / eps) * (16.0 / eps) + 1e-9)) + 1;
}

std::int64_t max_b_units(long double sum_b_max, long double g) {
  if (!(g > 0)) throw ParameterError("granularity must be positive");
  return static_cast<std::int64_t>(std::floor(sum_b_max / g + 1e-9L));
}

namespace {

long double eps4(double eps) {
  const long double e = eps;
  return e * e * e * e;
}

}  // namespace

bool is_good_pair(const GoodPair& p, double eps, long double g) {
  const std::size_t len = p.tau_a.size();
  if (p.tau_b.size() + 1 != len) return false;
  if (static_cast<std::int64_t>(len) > max_pair_length(eps)) return false;
  std::int64_t sum_a = 0, sum_b = 0;
  for (std::size_t i = 0; i < len; ++i) {
    const std::int64_t x = p.tau_a[i];
    if (x < 0) return false;
    if (i > 0 && i + 1 < len && x < 2) return false;
    sum_a += x;
  }
  for (std::int64_t x : p.tau_b) {
    if (x < 2) return false;
    sum_b += x;
  }
  if (sum_b > max_b_units(1 + eps4(eps), g)) return false;
  return sum_b - sum_a >= 1;
}

bool is_good_pair(std::span<const double> tau_a, std::span<const double> tau_b, double eps, double g) {
  auto to_units = [g](std::span<const double> xs, std::vector<std::int64_t>& out) {
    for (double x : xs) {
      const double k = std::round(x / g);
      if (std::fabs(k * g - x) > 1e-9 * std::max(1.0, std::fabs(x))) return false;
      out.push_back(static_cast<std::int64_t>(k));
    }
    return true;
  };
  GoodPair p;
  if (!to_units(tau_a, p.tau_a) || !to_units(tau_b, p.tau_b)) return false;
  return is_good_pair(p, eps, static_cast<long double>(g));
}

long double PairSpace::b_limit() const { return sum_b_max < 0 ? 1 + eps4(eps) : sum_b_max; }

namespace {

long double binom(long double n, int k) {
  if (k < 0 || n < k) return 0;
  long double r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

int longest(const PairSpace& s) {
  return static_cast<int>(std::min<std::int64_t>(s.k_max, max_pair_length(s.eps)));
}

class PairWalker {
 public:
  PairWalker(const PairSpace& space, std::vector<std::int64_t> boundary, std::vector<std::int64_t> interior,
             std::vector<std::int64_t> bvals, const std::function<bool(const GoodPair&)>& visit)
      : space_(space),
        boundary_(std::move(boundary)),
        interior_(std::move(interior)),
        bvals_(std::move(bvals)),
        visit_(visit),
        sb_(max_b_units(space.b_limit(), space.g)) {}

  void run() {
    if (bvals_.empty()) return;
    const int top = longest(space_);
    for (int len = 2; len <= top && !stop_; ++len) {
      // Every tau_b entry is at least the smallest allowed value.
      if ((len - 1) * bvals_.front() > sb_) break;
      if (len > 2 && interior_.empty()) break;
      pair_.tau_a.assign(len, 0);
      pair_.tau_b.assign(len - 1, 0);
      sum_a_ = 0;
      walk_a(0);
    }
  }

 private:
  std::int64_t min_rest_a(int pos) const {
    const int len = static_cast<int>(pair_.tau_a.size());
    std::int64_t r = 0;
    for (int i = pos; i < len; ++i) r += (i == 0 || i == len - 1) ? boundary_.front() : interior_.front();
    return r;
  }

  void walk_a(int pos) {
    const int len = static_cast<int>(pair_.tau_a.size());
    if (pos == len) {
      sum_b_ = 0;
      walk_b(0);
      return;
    }
    const auto& vals = (pos == 0 || pos == len - 1) ? boundary_ : interior_;
    const std::int64_t rest = pos + 1 < len ? min_rest_a(pos + 1) : 0;
    for (std::int64_t v : vals) {
      if (sum_a_ + v + rest > sb_ - 1) break;
      pair_.tau_a[pos] = v;
      sum_a_ += v;
      walk_a(pos + 1);
      sum_a_ -= v;
      if (stop_) return;
    }
  }

  void walk_b(int pos) {
    const int nb = static_cast<int>(pair_.tau_b.size());
    if (pos == nb) {
      if (sum_b_ - sum_a_ < 1) return;
      if (++count_ > space_.cap)
        throw EnumerationGuard("more than " + std::to_string(space_.cap) + " good pairs; raise the cap or coarsen g");
      if (!visit_(pair_)) stop_ = true;
      return;
    }
    const std::int64_t rest = static_cast<std::int64_t>(nb - pos - 1) * bvals_.front();
    for (std::int64_t v : bvals_) {
      if (sum_b_ + v + rest > sb_) break;
      if (pos == nb - 1 && sum_b_ + v < sum_a_ + 1) continue;
      pair_.tau_b[pos] = v;
      sum_b_ += v;
      walk_b(pos + 1);
      sum_b_ -= v;
      if (stop_) return;
    }
  }

  const PairSpace& space_;
  std::vector<std::int64_t> boundary_, interior_, bvals_;
  const std::function<bool(const GoodPair&)>& visit_;
  std::int64_t sb_;
  GoodPair pair_;
  std::int64_t sum_a_ = 0, sum_b_ = 0;
  std::uint64_t count_ = 0;
  bool stop_ = false;
};

}  // namespace

std::uint64_t count_good_pairs(const PairSpace& space) {
  const std::int64_t sb = max_b_units(space.b_limit(), space.g);
  const int top = longest(space);
  long double total = 0;
  const long double limit = static_cast<long double>(space.cap);
  for (int nb = 1; nb + 1 <= top; ++nb) {
    for (std::int64_t s = 2 * nb; s <= sb; ++s) {
      // tau_b: nb parts >= 2 summing to s; tau_a: nb-1 interior parts >= 2 and two free ends, sum <= s-1.
      const long double ways_b = binom(static_cast<long double>(s - nb - 1), nb - 1);
      const std::int64_t slack = s - 1 - 2 * (nb - 1);
      const long double ways_a = slack < 0 ? 0 : binom(static_cast<long double>(slack + nb + 1), nb + 1);
      total += ways_b * ways_a;
      if (total > limit) return space.cap + 1;
    }
  }
  return static_cast<std::uint64_t>(std::llround(total));
}

std::vector<GoodPair> enumerate_good_pairs(const PairSpace& space) {
  if (count_good_pairs(space) > space.cap)
    throw EnumerationGuard("more than " + std::to_string(space.cap) + " good pairs; raise the cap or coarsen g");
  const std::int64_t sb = max_b_units(space.b_limit(), space.g);
  std::vector<std::int64_t> boundary, interior, bvals;
  for (std::int64_t v = 0; v <= sb; ++v) {
    boundary.push_back(v);
    if (v >= 2) {
      interior.push_back(v);
      bvals.push_back(v);
    }
  }
  std::vector<GoodPair> out;
  std::function<bool(const GoodPair&)> visit = [&out](const GoodPair& p) {
    out.push_back(p);
    return true;
  };
  PairWalker(space, boundary, interior, bvals, visit).run();
  return out;
}

void for_each_restricted_pair(const PairSpace& space, const std::vector<std::int64_t>& a_values,
                              const std::vector<std::int64_t>& b_values,
                              const std::function<bool(const GoodPair&)>& visit) {
  std::vector<std::int64_t> boundary{0}, interior, bvals;
  for (std::int64_t v : a_values) {
    if (v > 0) boundary.push_back(v);
    if (v >= 2) interior.push_back(v);
  }
  for (std::int64_t v : b_values)
    if (v >= 2) bvals.push_back(v);
  std::sort(boundary.begin(), boundary.end());
  boundary.erase(std::unique(boundary.begin(), boundary.end()), boundary.end());
  std::sort(interior.begin(), interior.end());
  interior.erase(std::unique(interior.begin(), interior.end()), interior.end());
  std::sort(bvals.begin(), bvals.end());
  bvals.erase(std::unique(bvals.begin(), bvals.end()), bvals.end());
  PairWalker(space, boundary, interior, bvals, visit).run();
}

std::int64_t ceil_units(long double w, long double unit) {
  std::int64_t k = static_cast<std::int64_t>(std::ceil(w / unit));
  while (static_cast<long double>(k - 1) * unit >= w) --k;
  while (static_cast<long double>(k) * unit < w) ++k;
  return k;
}

std::int64_t floor_units(long double w, long double unit) {
  std::int64_t k = static_cast<std::int64_t>(std::floor(w / unit));
  while (static_cast<long double>(k) * unit > w) --k;
  while (static_cast<long double>(k + 1) * unit <= w) ++k;
  return k;
}

long double weight_scale(double eps, int i) { return std::pow(1 + eps4(eps), static_cast<long double>(i)); }

int LayeredGraph::index(Vertex v, int layer) const {
  auto it = std::lower_bound(vertices.begin(), vertices.end(), LayeredVertex{v, layer},
                             [](const LayeredVertex& a, const LayeredVertex& b) {
                               return a.layer != b.layer ? a.layer < b.layer : a.v < b.v;
                             });
  if (it == vertices.end() || it->v != v || it->layer != layer) return -1;
  return static_cast<int>(it - vertices.begin());
}

std::vector<int> LayeredGraph::x_partner() const {
  std::vector<int> out(vertices.size(), -1);
  for (const LayeredEdge& e : edges) {
    if (!e.matched) continue;
    out[e.from] = e.to;
    out[e.to] = e.from;
  }
  return out;
}

LayeredGraph build_layered(const Matching& m, const Parametrization& p, const GoodPair& pair, long double g,
                           long double W) {
  const WeightedGraph& gr = m.graph();
  const int layers = pair.layers();
  if (layers < 1 || pair.tau_b.size() + 1 != pair.tau_a.size()) throw ParameterError("malformed threshold pair");
  const long double unit = g * W;
  std::map<std::int64_t, std::vector<EdgeId>> a_by, b_by;
  for (EdgeId e : p.a_edges) a_by[ceil_units(static_cast<long double>(gr.weight(e)), unit)].push_back(e);
  for (EdgeId e : p.b_edges) b_by[floor_units(static_cast<long double>(gr.weight(e)), unit)].push_back(e);
  auto lr = [&](EdgeId e) {
    const Edge& ed = gr.edge(e);
    return p.side[ed.u] == Side::L ? std::make_pair(ed.u, ed.v) : std::make_pair(ed.v, ed.u);
  };
  static const std::vector<EdgeId> none;
  auto group = [](const std::map<std::int64_t, std::vector<EdgeId>>& by, std::int64_t k) -> const std::vector<EdgeId>& {
    auto it = by.find(k);
    return it == by.end() ? none : it->second;
  };

  LayeredGraph lg;
  lg.layers = layers;
  for (int t = 1; t <= layers; ++t) {
    std::vector<LayeredVertex> here;
    for (EdgeId e : group(a_by, pair.tau_a[t - 1])) {
      auto [l, r] = lr(e);
      here.push_back({l, t});
      here.push_back({r, t});
    }
    if (t == 1 && pair.tau_a[0] == 0) {
      for (Vertex v = 0; v < gr.num_vertices(); ++v)
        if (p.side[v] == Side::R && !m.is_matched(v)) here.push_back({v, t});
    }
    if (t == layers && pair.tau_a[layers - 1] == 0) {
      for (Vertex v = 0; v < gr.num_vertices(); ++v)
        if (p.side[v] == Side::L && !m.is_matched(v)) here.push_back({v, t});
    }
    std::sort(here.begin(), here.end(), [](const LayeredVertex& a, const LayeredVertex& b) { return a.v < b.v; });
    here.erase(std::unique(here.begin(), here.end(),
                           [](const LayeredVertex& a, const LayeredVertex& b) { return a.v == b.v; }),
               here.end());
    lg.vertices.insert(lg.vertices.end(), here.begin(), here.end());
  }
  lg.side.reserve(lg.vertices.size());
  for (const LayeredVertex& x : lg.vertices) lg.side.push_back(p.side[x.v]);

  for (int t = 1; t <= layers; ++t) {
    for (EdgeId e : group(a_by, pair.tau_a[t - 1])) {
      auto [l, r] = lr(e);
      lg.edges.push_back({lg.index(l, t), lg.index(r, t), e, t, true});
    }
    if (t == layers) break;
    for (EdgeId e : group(b_by, pair.tau_b[t - 1])) {
      auto [l, r] = lr(e);
      const int from = lg.index(r, t), to = lg.index(l, t + 1);
      if (from >= 0 && to >= 0) lg.edges.push_back({from, to, e, t, false});
    }
  }
  return lg;
}

bool is_bipartite(const LayeredGraph& lg) {
  const int n = static_cast<int>(lg.vertices.size());
  std::vector<std::vector<int>> adj(n);
  for (const LayeredEdge& e : lg.edges) {
    adj[e.from].push_back(e.to);
    adj[e.to].push_back(e.from);
  }
  std::vector<int> color(n, -1);
  for (int s = 0; s < n; ++s) {
    if (color[s] != -1) continue;
    color[s] = 0;
    std::queue<int> q;
    q.push(s);
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      for (int u : adj[v]) {
        if (color[u] == -1) {
          color[u] = 1 - color[v];
          q.push(u);
        } else if (color[u] == color[v]) {
          return false;
        }
      }
    }
  }
  return true;
}

std::vector<Augmentation> decompose_alternating_walk(const Matching& m, std::span<const Side> side,
                                                     const std::vector<Vertex>& walk) {
  const WeightedGraph& g = m.graph();
  for (std::size_t i = 0; i + 1 < walk.size(); ++i) {
    const Vertex x = walk[i], y = walk[i + 1];
    const EdgeId e = g.find_edge(x, y);
    if (e == kNoEdge) throw StructuralError("walk step without an edge");
    const bool ok = m.contains(e) ? (side[x] == Side::L && side[y] == Side::R)
                                  : (side[x] == Side::R && side[y] == Side::L);
    if (!ok) throw StructuralError("walk step against the L/R orientation");
  }
  std::vector<Augmentation> out;
  std::vector<int> pos(g.num_vertices(), -1);
  std::vector<Vertex> stack;
  for (Vertex x : walk) {
    if (pos[x] >= 0) {
      const std::size_t i = static_cast<std::size_t>(pos[x]);
      std::vector<Vertex> cyc(stack.begin() + static_cast<std::ptrdiff_t>(i), stack.end());
      for (std::size_t j = i + 1; j < stack.size(); ++j) pos[stack[j]] = -1;
      stack.resize(i + 1);
      out.push_back(make_cycle(g, std::move(cyc)));
    } else {
      pos[x] = static_cast<int>(stack.size());
      stack.push_back(x);
    }
  }
  out.push_back(make_path(g, std::move(stack)));
  return out;
}

bool in_augmentation_class(const Augmentation& aug, const Matching& m, long double W, double eps) {
  const WeightedGraph& g = m.graph();
  const long double e = eps;
  const long double unit = std::pow(e, 12.0L) * W;
  for (EdgeId id : aug.edges) {
    const long double w = static_cast<long double>(g.weight(id));
    if (w < unit || w > 2 * W) return false;
  }
  if (static_cast<long double>(gain(aug, m)) > 2 * W) return false;
  long double rounded = 0;
  for (EdgeId id : aug.edges) {
    if (m.contains(id)) continue;
    const long double w = static_cast<long double>(g.weight(id));
    long double k = std::floor(w / unit);
    while (k * unit > w) k -= 1;
    while ((k + 1) * unit <= w) k += 1;
    rounded += k;
  }
  for (EdgeId id : neighborhood(aug, m)) {
    const long double w = static_cast<long double>(g.weight(id));
    long double k = std::ceil(w / unit);
    while ((k - 1) * unit >= w) k -= 1;
    while (k * unit < w) k += 1;
    rounded -= k;
  }
  if (rounded < 1) return false;
  return static_cast<long double>(aug.vertices.size()) <= 64.0L / (e * e) + 1;
}

Witness witness_for(const Augmentation& aug, const Matching& m, double eps, long double g) {
  check_alternating(aug, m);
  const WeightedGraph& gr = m.graph();
  if (aug.edges.empty()) throw ParameterError("empty augmentation has no witness");
  std::vector<Vertex> walk;
  if (aug.kind == AugKind::Cycle) {
    const std::size_t k = aug.vertices.size();
    const std::size_t start = m.contains(aug.edges[0]) ? 0 : 1;
    std::vector<Vertex> cyc(k);
    for (std::size_t i = 0; i < k; ++i) cyc[i] = aug.vertices[(start + i) % k];
    const int d = static_cast<int>(std::ceil(16.0 / eps - 1e-9));
    for (int r = 0; r < d; ++r) walk.insert(walk.end(), cyc.begin(), cyc.end());
    walk.push_back(cyc[0]);
    walk.push_back(cyc[1]);
  } else {
    walk = aug.vertices;
    if (!m.contains(aug.edges.front()) && m.is_matched(walk.front())) walk.insert(walk.begin(), m.mate(walk.front()));
    if (!m.contains(aug.edges.back()) && m.is_matched(walk.back())) walk.push_back(m.mate(walk.back()));
  }
  std::vector<Side> side(gr.num_vertices(), Side::L);
  const bool first_matched = m.contains(gr.find_edge(walk[0], walk[1]));
  for (std::size_t i = 0; i < walk.size(); ++i) {
    const bool even = i % 2 == 0;
    side[walk[i]] = (even == first_matched) ? Side::L : Side::R;
  }
  long double total = 0;
  std::vector<Weight> a_w, b_w;
  if (!first_matched) a_w.push_back(0);
  for (std::size_t i = 0; i + 1 < walk.size(); ++i) {
    const EdgeId e = gr.find_edge(walk[i], walk[i + 1]);
    total += static_cast<long double>(gr.weight(e));
    (m.contains(e) ? a_w : b_w).push_back(gr.weight(e));
  }
  if (!m.contains(gr.find_edge(walk[walk.size() - 2], walk.back()))) a_w.push_back(0);

  const long double base = 1 + eps4(eps);
  int i = static_cast<int>(std::floor(std::log(total) / std::log(base)));
  while (weight_scale(eps, i + 1) <= total) ++i;
  while (i > 0 && weight_scale(eps, i) > total) --i;
  Witness w{parametrization_from_sides(m, side), {}, weight_scale(eps, i), i, walk};
  const long double unit = g * w.W;
  for (Weight x : a_w) w.pair.tau_a.push_back(x == 0 ? 0 : ceil_units(static_cast<long double>(x), unit));
  for (Weight x : b_w) w.pair.tau_b.push_back(floor_units(static_cast<long double>(x), unit));
  return w;
}

}  // namespace matchstream
