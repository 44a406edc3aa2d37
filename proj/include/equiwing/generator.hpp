#pragma once

#include <cstdint>

#include "equiwing/graph.hpp"

namespace equiwing {

// Uniform background edges plus optional planted dense blocks. Labels are
// "u<i>" on the U side and "v<j>" on the V side.
struct GeneratorParams {
  std::uint32_t u_count = 100;
  std::uint32_t v_count = 100;
  double edge_probability = 0.05;
  std::uint32_t blocks = 0;
  std::uint32_t block_u = 0;
  std::uint32_t block_v = 0;
  double block_density = 1.0;
  std::uint64_t seed = 1;
};

BipartiteGraph generate_bipartite(const GeneratorParams& params);

}  // namespace equiwing
