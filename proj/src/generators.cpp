#include "matchstream/generators.hpp"

#include <algorithm>
#include <bit>
#include <unordered_set>

#include "matchstream/errors.hpp"
#include "matchstream/random.hpp"

namespace matchstream {

Family parse_family(const std::string& name) {
  if (name == "erdos_renyi") return Family::ErdosRenyi;
  if (name == "tight_half") return Family::TightHalf;
  if (name == "cycle_family") return Family::CycleFamily;
  if (name == "weight_classes") return Family::WeightClasses;
  throw ParameterError("unknown generator family '" + name + "'");
}

const char* family_name(Family f) {
  switch (f) {
    case Family::ErdosRenyi: return "erdos_renyi";
    case Family::TightHalf: return "tight_half";
    case Family::CycleFamily: return "cycle_family";
    case Family::WeightClasses: return "weight_classes";
  }
  return "?";
}

namespace {

std::vector<std::pair<Vertex, Vertex>> random_pairs(Vertex n, EdgeId m, SplitMix64& rng) {
  const std::uint64_t total = static_cast<std::uint64_t>(n) * static_cast<std::uint64_t>(n - 1) / 2;
  std::vector<std::pair<Vertex, Vertex>> out;
  if (2 * static_cast<std::uint64_t>(m) > total) {
    for (Vertex u = 0; u < n; ++u)
      for (Vertex v = u + 1; v < n; ++v) out.push_back({u, v});
    shuffle(out, rng);
    out.resize(m);
  } else {
    std::unordered_set<std::uint64_t> seen;
    while (static_cast<EdgeId>(out.size()) < m) {
      Vertex u = static_cast<Vertex>(rng.uniform(n));
      Vertex v = static_cast<Vertex>(rng.uniform(n));
      if (u == v) continue;
      if (u > v) std::swap(u, v);
      if (seen.insert((static_cast<std::uint64_t>(u) << 32) | static_cast<std::uint32_t>(v)).second)
        out.push_back({u, v});
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

WeightedGraph generate(const GeneratorSpec& spec) {
  const Vertex n = spec.n;
  if (n < 2) throw ParameterError("generator needs n >= 2");
  if (spec.weight_max < 1) throw ParameterError("weight_max must be at least 1");
  {
    const long double n4 = static_cast<long double>(n) * n * n * n;
    if (static_cast<long double>(spec.weight_max) > n4) throw ParameterError("weight_max exceeds n^4");
  }
  SplitMix64 rng(spec.seed);
  std::vector<Edge> edges;
  switch (spec.family) {
    case Family::ErdosRenyi:
    case Family::WeightClasses: {
      const std::uint64_t total = static_cast<std::uint64_t>(n) * static_cast<std::uint64_t>(n - 1) / 2;
      if (spec.m < 0 || static_cast<std::uint64_t>(spec.m) > total)
        throw ParameterError("m must lie in [0, n(n-1)/2]");
      const int top_class = static_cast<int>(std::bit_width(static_cast<std::uint64_t>(spec.weight_max) + 1)) - 1;
      for (auto [u, v] : random_pairs(n, spec.m, rng)) {
        Weight w;
        if (spec.family == Family::ErdosRenyi) {
          w = 1 + static_cast<Weight>(rng.uniform(static_cast<std::uint64_t>(spec.weight_max)));
        } else {
          const int j = static_cast<int>(rng.uniform(static_cast<std::uint64_t>(std::max(top_class, 1))));
          const Weight lo = Weight{1} << j;
          w = lo + static_cast<Weight>(rng.uniform(static_cast<std::uint64_t>(lo)));
        }
        edges.push_back({u, v, w});
      }
      break;
    }
    case Family::TightHalf: {
      if (n < 4) throw ParameterError("tight_half needs n >= 4");
      const Weight w = spec.weight_max;
      for (Vertex base = 0; base + 3 < n; base += 4) {
        edges.push_back({base + 1, base + 2, w});
        edges.push_back({base, base + 1, w});
        edges.push_back({base + 2, base + 3, w});
      }
      break;
    }
    case Family::CycleFamily: {
      if (n < 4) throw ParameterError("cycle_family needs n >= 4");
      const std::uint64_t scales = static_cast<std::uint64_t>(std::max<Weight>(1, spec.weight_max / 4));
      for (Vertex base = 0; base + 3 < n; base += 4) {
        const Weight s = base == 0 ? 1 : 1 + static_cast<Weight>(rng.uniform(scales));
        edges.push_back({base, base + 1, 3 * s});
        edges.push_back({base + 1, base + 2, 4 * s});
        edges.push_back({base + 2, base + 3, 3 * s});
        edges.push_back({base, base + 3, 4 * s});
        if (base >= 4) edges.push_back({base - 2, base, 1});
      }
      break;
    }
  }
  return WeightedGraph(n, std::move(edges));
}

}  // namespace matchstream
