#include "equiwing/equiwing_index.hpp"

#include <deque>

#include "equiwing/errors.hpp"

namespace equiwing {

EquiWingIndex build_equiwing(const BipartiteGraph& g, const WingLabeling& labeling) {
  for (EdgeId e : g.edge_ids())
    if (!labeling.labeled(e)) throw InvalidArgumentError("labeling does not cover the graph");

  EquiWingIndex index;
  index.sync_vertices(g.vertices());

  const std::size_t cap = g.edge_capacity();
  std::vector<char> visited(cap, 0);
  // Classes already created that found this edge in one of their butterflies.
  std::vector<std::vector<SnId>> pending(cap);
  const auto buckets = labeling.level_buckets();

  std::deque<EdgeId> queue;
  for (WingNumber k = 1; k < buckets.size(); ++k) {
    for (EdgeId e : buckets[k]) {
      if (!g.contains(e) || visited[e.value]) continue;
      const SnId id = index.next_id();
      index.add_node_with_id(id, k, {});
      visited[e.value] = 1;
      queue.push_back(e);
      std::vector<EdgeKey> members;
      while (!queue.empty()) {
        const EdgeId x = queue.front();
        queue.pop_front();
        members.push_back(g.endpoints(x));
        for (SnId lower : pending[x.value]) index.add_super_edge(lower, id);
        std::vector<SnId>().swap(pending[x.value]);
        for_each_butterfly(g, x, [&](const ButterflyLegs& l) {
          for (EdgeId f : l.edges)
            if (labeling[f] < k) return;
          for (EdgeId f : l.edges) {
            if (labeling[f] == k) {
              if (!visited[f.value]) {
                visited[f.value] = 1;
                queue.push_back(f);
              }
            } else {
              auto& p = pending[f.value];
              if (p.empty() || p.back() != id) p.push_back(id);
            }
          }
        });
      }
      index.add_members(id, members);
    }
  }
  return index;
}

WingResult query_equiwing(const EquiWingIndex& index, VertexId q, WingNumber k, QueryStats* stats) {
  return search_super_graph(index, index.seeds(q), q, k, stats);
}

}  // namespace equiwing
