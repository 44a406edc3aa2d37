#pragma once

#include <map>
#include <span>
#include <unordered_map>
#include <vector>

#include "equiwing/equiwing_index.hpp"
#include "equiwing/super_graph.hpp"

namespace equiwing {

// EquiWing with every group of same-level nodes that is connected through
// nodes of equal or higher level collapsed into one node. Merged nodes keep
// the smallest original id.
class EquiWingCompIndex : public SuperGraph {
 public:
  std::span<const SnId> level(WingNumber k) const;
  std::vector<WingNumber> levels() const;
  // Original node id -> id of the node it was merged into.
  const std::map<SnId, SnId>& merge_log() const { return merge_log_; }
  std::size_t original_node_count() const { return node_count() + merge_log_.size(); }
  bool touches(SnId id, VertexId x) const;

  void set_merge_log(std::map<SnId, SnId> log) { merge_log_ = std::move(log); }
  // Recomputes the level lists and per-node vertex sets after mutation.
  void refresh_levels();

  friend bool operator==(const EquiWingCompIndex& a, const EquiWingCompIndex& b) {
    return static_cast<const SuperGraph&>(a) == static_cast<const SuperGraph&>(b) && a.merge_log_ == b.merge_log_;
  }

 private:
  std::map<WingNumber, std::vector<SnId>> levels_;
  std::map<SnId, SnId> merge_log_;
  std::unordered_map<SnId, std::vector<VertexId>> node_vertices_;
};

EquiWingCompIndex compress(const EquiWingIndex& index);

// Rebuilds only the levels <= max_level of `comp` from `index`; levels above
// must already agree with `index`.
void recompress_levels(const EquiWingIndex& index, EquiWingCompIndex& comp, WingNumber max_level);

enum class SeedMode { level_scan, seed_table };

WingResult query_comp(const EquiWingCompIndex& comp, VertexId q, WingNumber k, QueryStats* stats = nullptr,
                      SeedMode mode = SeedMode::level_scan);

// Node count of the uncompressed index over the compressed one.
double compression_ratio(const EquiWingIndex& index, const EquiWingCompIndex& comp);

}  // namespace equiwing
