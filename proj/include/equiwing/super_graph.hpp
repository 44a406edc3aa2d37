#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

#include "equiwing/decomposition.hpp"
#include "equiwing/graph.hpp"
#include "equiwing/wing_result.hpp"

namespace equiwing {

using SnId = std::uint32_t;

struct SuperNode {
  SnId id = 0;
  WingNumber k = 0;
  std::vector<EdgeKey> members;  // sorted
};

// Nodes own disjoint edge sets; adjacency and per-vertex seed lists are kept
// in (k descending, id ascending) order so searches can stop early.
class SuperGraph {
 public:
  const VertexTable& vertices() const { return vertices_; }
  // Appends labels missing from this table; existing ordinals must agree.
  void sync_vertices(const VertexTable& source);

  std::size_t node_count() const { return live_nodes_; }
  std::size_t super_edge_count() const { return super_edges_; }
  std::size_t indexed_edge_count() const { return edge_node_.size(); }
  SnId id_bound() const { return SnId(nodes_.size()); }
  SnId next_id() const { return next_id_; }

  bool contains(SnId id) const { return id < nodes_.size() && nodes_[id].live; }
  const SuperNode& node(SnId id) const;
  WingNumber k_of(SnId id) const { return nodes_[id].node.k; }
  std::vector<SnId> node_ids() const;
  WingNumber k_max() const;

  std::span<const SnId> neighbors(SnId id) const;
  std::span<const SnId> seeds(VertexId x) const;
  std::optional<SnId> node_of(EdgeKey e) const;
  std::vector<std::pair<SnId, SnId>> super_edges() const;

  SnId add_node(WingNumber k, std::vector<EdgeKey> members);
  void add_node_with_id(SnId id, WingNumber k, std::vector<EdgeKey> members);
  void add_members(SnId id, std::span<const EdgeKey> members);
  void remove_node(SnId id);
  // Moves the members and super edges of `gone` onto `keep`.
  void merge_into(SnId keep, SnId gone);
  // Returns false if the edge already existed.
  bool add_super_edge(SnId a, SnId b);

  friend bool operator==(const SuperGraph& a, const SuperGraph& b);

 private:
  struct Slot {
    bool live = false;
    SuperNode node;
    std::vector<SnId> adj;
  };

  bool before(SnId a, SnId b) const;
  void insert_ordered(std::vector<SnId>& list, SnId id) const;
  void erase_ordered(std::vector<SnId>& list, SnId id) const;
  std::vector<SnId>& seed_list(Side s, std::uint32_t ordinal);
  void attach_members(SnId id, std::span<const EdgeKey> members);

  VertexTable vertices_;
  std::vector<Slot> nodes_;
  std::array<std::vector<std::vector<SnId>>, 2> seeds_;
  std::unordered_map<std::uint64_t, SnId> edge_node_;
  std::size_t live_nodes_ = 0;
  std::size_t super_edges_ = 0;
  SnId next_id_ = 1;
};

// BFS over nodes with k' >= k starting from the given seeds.
WingResult search_super_graph(const SuperGraph& sg, std::span<const SnId> seeds, VertexId q, WingNumber k,
                              QueryStats* stats);

// Same index with member ordinals translated to `target`'s vertex table.
SuperGraph reindex_vertices(const SuperGraph& sg, const VertexTable& target);

// Wing numbers read back from node levels; unindexed live edges get 0.
WingLabeling labeling_from_index(const BipartiteGraph& g, const SuperGraph& sg);

}  // namespace equiwing
