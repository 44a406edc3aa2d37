#pragma once

#include "equiwing/decomposition.hpp"
#include "equiwing/graph.hpp"
#include "equiwing/super_graph.hpp"
#include "equiwing/wing_result.hpp"

namespace equiwing {

// One super node per k-butterfly connectivity class of edges with wing
// number k; a super edge joins two classes whenever a butterfly holds an edge
// of each and the lower class supplies the butterfly's minimum.
class EquiWingIndex : public SuperGraph {};

// Edges with wing number 0 belong to no butterfly and are left out.
EquiWingIndex build_equiwing(const BipartiteGraph& g, const WingLabeling& labeling);

WingResult query_equiwing(const EquiWingIndex& index, VertexId q, WingNumber k, QueryStats* stats = nullptr);

}  // namespace equiwing
