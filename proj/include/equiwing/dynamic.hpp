#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "equiwing/decomposition.hpp"
#include "equiwing/equiwing_comp.hpp"
#include "equiwing/equiwing_index.hpp"
#include "equiwing/graph.hpp"

namespace equiwing {

enum class MutationKind { insert, remove };

struct Mutation {
  MutationKind kind = MutationKind::insert;
  EdgeId edge;
  // Insertions only: compute_delta taken before the edge was added.
  WingNumber delta = 0;
};

struct UpdateScope {
  MutationKind kind = MutationKind::insert;
  EdgeId edge;
  EdgeKey key;
  WingNumber delta = 0;
  // Insertions: bound on the new edge's wing number. Deletions: its old wing number.
  WingNumber upper_bound = 0;
  std::vector<EdgeId> affected_edges;  // ascending, includes the mutated edge
  std::vector<SnId> affected_nodes;    // ascending
  std::vector<std::uint32_t> affected_u;
  std::vector<std::uint32_t> affected_v;
};

struct ApplyReport {
  // Edges whose wing number moved, with the value before the update.
  std::vector<std::pair<EdgeId, WingNumber>> changed;
  std::vector<SnId> removed_nodes;
  std::vector<SnId> created_nodes;
  std::vector<SnId> grown_nodes;
  WingNumber max_touched_level = 0;
  bool fell_back = false;
};

// Largest number of new butterflies any single edge gains when (u,v) is
// inserted. The pair must not be an edge yet.
WingNumber compute_delta(const BipartiteGraph& g, std::uint32_t u, std::uint32_t v);

// Butterflies through the pair (u,v) whose other three edges all have wing
// number >= k. The pair itself need not be an edge.
std::uint64_t k_level_butterfly_count(const BipartiteGraph& g, const WingLabeling& labeling, std::uint32_t u,
                                      std::uint32_t v, std::int64_t k);
std::uint64_t k_level_butterfly_count(const BipartiteGraph& g, const WingLabeling& labeling, EdgeId e,
                                      std::int64_t k);

// For a freshly inserted edge: max{k : k-level count at k - delta >= k}.
WingNumber wing_upper_bound(const BipartiteGraph& g, const WingLabeling& labeling, EdgeId inserted,
                            WingNumber delta);
// Same, with delta recomputed from the current graph.
WingNumber wing_upper_bound(const BipartiteGraph& g, const WingLabeling& labeling, EdgeId inserted);
// The weaker l + delta bound, where l = max{k : k-level count at k >= k}.
WingNumber loose_wing_upper_bound(const BipartiteGraph& g, const WingLabeling& labeling, EdgeId inserted,
                                  WingNumber delta);

// Insertions: the edge is already in g but unlabeled. Deletions: the edge is
// still in g.
UpdateScope affected_edges(const BipartiteGraph& g, const WingLabeling& labeling, const EquiWingIndex& index,
                           const Mutation& mutation);

// Re-peels the scope, rebuilds the affected part of the index and, for
// deletions, removes the edge from g. Falls back to a full rebuild if the
// local result fails its consistency checks.
ApplyReport apply_update(BipartiteGraph& g, WingLabeling& labeling, EquiWingIndex& index, const UpdateScope& scope);

ApplyReport apply_update_comp(BipartiteGraph& g, WingLabeling& labeling, EquiWingIndex& shadow,
                              EquiWingCompIndex& comp, const UpdateScope& scope);

// Graph, wing numbers and indices kept in step under edge updates.
class DynamicIndex {
 public:
  struct Outcome {
    bool applied = false;
    UpdateScope scope;
    ApplyReport report;
  };

  explicit DynamicIndex(BipartiteGraph g, bool with_comp = false);
  DynamicIndex(BipartiteGraph g, WingLabeling labeling, EquiWingIndex index, bool with_comp);

  const BipartiteGraph& graph() const { return graph_; }
  const WingLabeling& labeling() const { return labeling_; }
  const EquiWingIndex& index() const { return index_; }
  const EquiWingCompIndex* comp() const { return comp_ ? &*comp_ : nullptr; }
  std::size_t fallbacks() const { return fallbacks_; }

  // Inserting an existing edge is a no-op with applied == false.
  Outcome insert_edge(std::string_view u, std::string_view v);
  Outcome insert_edge(std::uint32_t u, std::uint32_t v);
  // Throws NotFoundError for a missing edge.
  Outcome delete_edge(std::string_view u, std::string_view v);
  Outcome delete_edge(std::uint32_t u, std::uint32_t v);

 private:
  Outcome run(const Mutation& m);
  void sync_vertices();

  BipartiteGraph graph_;
  WingLabeling labeling_;
  EquiWingIndex index_;
  std::optional<EquiWingCompIndex> comp_;
  std::size_t fallbacks_ = 0;
};

}  // namespace equiwing
