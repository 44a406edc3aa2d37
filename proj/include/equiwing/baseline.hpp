#pragma once

#include "equiwing/decomposition.hpp"
#include "equiwing/graph.hpp"
#include "equiwing/wing_result.hpp"

namespace equiwing {

// Online k-wing search: BFS over edges through butterflies whose four edges
// all have wing number >= k.
WingResult baseline_search(const BipartiteGraph& g, const WingLabeling& labeling, VertexId q, WingNumber k);

}  // namespace equiwing
