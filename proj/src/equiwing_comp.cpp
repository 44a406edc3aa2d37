#include "equiwing/equiwing_comp.hpp"

#include <algorithm>
#include <numeric>

#include "equiwing/errors.hpp"

namespace equiwing {

std::span<const SnId> EquiWingCompIndex::level(WingNumber k) const {
  auto it = levels_.find(k);
  if (it == levels_.end()) return {};
  return it->second;
}

std::vector<WingNumber> EquiWingCompIndex::levels() const {
  std::vector<WingNumber> out;
  for (const auto& [k, ids] : levels_)
    if (!ids.empty()) out.push_back(k);
  return out;
}

bool EquiWingCompIndex::touches(SnId id, VertexId x) const {
  auto it = node_vertices_.find(id);
  if (it == node_vertices_.end()) return false;
  return std::binary_search(it->second.begin(), it->second.end(), x);
}

void EquiWingCompIndex::refresh_levels() {
  levels_.clear();
  node_vertices_.clear();
  for (SnId id : node_ids()) {
    const SuperNode& n = node(id);
    levels_[n.k].push_back(id);
    std::vector<VertexId> vs;
    vs.reserve(2 * n.members.size());
    for (const EdgeKey& e : n.members) {
      vs.push_back({Side::U, e.u});
      vs.push_back({Side::V, e.v});
    }
    std::sort(vs.begin(), vs.end());
    vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
    node_vertices_.emplace(id, std::move(vs));
  }
}

namespace {

struct DisjointSet {
  std::vector<SnId> parent;
  explicit DisjointSet(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), SnId(0)); }
  SnId find(SnId x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  void unite(SnId a, SnId b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

// For every EquiWing node, the id of the compressed node that absorbs it.
std::vector<SnId> merge_targets(const EquiWingIndex& index) {
  std::map<WingNumber, std::vector<SnId>, std::greater<>> by_level;
  for (SnId id : index.node_ids()) by_level[index.k_of(id)].push_back(id);

  std::vector<SnId> target(index.id_bound(), 0);
  DisjointSet ds(index.id_bound());
  for (const auto& [k, ids] : by_level) {
    for (SnId id : ids)
      for (SnId n : index.neighbors(id)) {
        if (index.k_of(n) < k) break;
        ds.unite(id, n);
      }
    std::map<SnId, SnId> smallest;
    for (SnId id : ids) {
      auto [it, fresh] = smallest.emplace(ds.find(id), id);
      if (!fresh) it->second = std::min(it->second, id);
    }
    for (SnId id : ids) target[id] = smallest[ds.find(id)];
  }
  return target;
}

void materialize(const EquiWingIndex& index, const std::vector<SnId>& target, EquiWingCompIndex& comp,
                 WingNumber max_level, std::map<SnId, SnId>& log) {
  std::map<SnId, std::vector<EdgeKey>> members;
  for (SnId id : index.node_ids()) {
    if (index.k_of(id) > max_level) continue;
    const auto& m = index.node(id).members;
    auto& dst = members[target[id]];
    dst.insert(dst.end(), m.begin(), m.end());
    if (target[id] != id) log[id] = target[id];
  }
  for (auto& [id, m] : members) comp.add_node_with_id(id, index.k_of(id), std::move(m));
  for (auto [a, b] : index.super_edges()) {
    if (std::min(index.k_of(a), index.k_of(b)) > max_level) continue;
    const SnId ta = target[a], tb = target[b];
    if (ta != tb) comp.add_super_edge(ta, tb);
  }
}

}  // namespace

EquiWingCompIndex compress(const EquiWingIndex& index) {
  EquiWingCompIndex comp;
  comp.sync_vertices(index.vertices());
  std::map<SnId, SnId> log;
  materialize(index, merge_targets(index), comp, index.k_max(), log);
  comp.set_merge_log(std::move(log));
  comp.refresh_levels();
  return comp;
}

void recompress_levels(const EquiWingIndex& index, EquiWingCompIndex& comp, WingNumber max_level) {
  comp.sync_vertices(index.vertices());
  for (SnId id : comp.node_ids())
    if (comp.k_of(id) <= max_level) comp.remove_node(id);
  std::map<SnId, SnId> log;
  for (auto [from, to] : comp.merge_log())
    if (comp.contains(to)) log.emplace(from, to);
  materialize(index, merge_targets(index), comp, max_level, log);
  comp.set_merge_log(std::move(log));
  comp.refresh_levels();
}

WingResult query_comp(const EquiWingCompIndex& comp, VertexId q, WingNumber k, QueryStats* stats, SeedMode mode) {
  if (mode == SeedMode::seed_table) return search_super_graph(comp, comp.seeds(q), q, k, stats);
  std::vector<SnId> seeds;
  for (WingNumber level : comp.levels()) {
    if (level < k) continue;
    for (SnId id : comp.level(level))
      if (comp.touches(id, q)) seeds.push_back(id);
  }
  return search_super_graph(comp, seeds, q, k, stats);
}

double compression_ratio(const EquiWingIndex& index, const EquiWingCompIndex& comp) {
  if (comp.node_count() == 0) throw InvalidArgumentError("compression ratio undefined for an empty index");
  return double(index.node_count()) / double(comp.node_count());
}

}  // namespace equiwing
