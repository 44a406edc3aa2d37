#pragma once

#include <cstddef>
#include <limits>
#include <vector>

#include "equiwing/decomposition.hpp"
#include "equiwing/graph.hpp"

namespace equiwing {

struct WingResult {
  VertexId query;
  WingNumber k = 0;
  // Each wing sorted by (u,v); wings ordered by their smallest edge.
  std::vector<std::vector<EdgeKey>> wings;

  std::size_t edge_total() const;
  friend bool operator==(const WingResult&, const WingResult&) = default;
};

void canonicalize(WingResult& r);

struct QueryStats {
  std::size_t seeds_examined = 0;
  std::size_t nodes_visited = 0;
  std::size_t super_edges_scanned = 0;
  std::size_t edges_emitted = 0;
  WingNumber min_visited_k = std::numeric_limits<WingNumber>::max();
};

}  // namespace equiwing
