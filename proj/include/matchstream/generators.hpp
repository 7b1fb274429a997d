#pragma once

#include <cstdint>
#include <string>

#include "matchstream/graph.hpp"

namespace matchstream {

enum class Family {
  ErdosRenyi,     // m distinct uniform pairs, uniform weights in [1, weight_max]
  TightHalf,      // disjoint 4-vertex paths of equal weights, middle edge listed first
  CycleFamily,    // (3,4,3,4)-weighted 4-cycles, scaled, chained by weight-1 links
  WeightClasses,  // uniform pairs with weights spread over powers of two
};

Family parse_family(const std::string& name);
const char* family_name(Family f);

struct GeneratorSpec {
  Family family = Family::ErdosRenyi;
  Vertex n = 0;
  EdgeId m = 0;  // used by erdos_renyi and weight_classes
  Weight weight_max = 100;
  std::uint64_t seed = 0;
};

WeightedGraph generate(const GeneratorSpec& spec);

}  // namespace matchstream
