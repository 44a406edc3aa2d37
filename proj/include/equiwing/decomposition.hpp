#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "equiwing/graph.hpp"

namespace equiwing {

using WingNumber = std::uint32_t;

class WingLabeling {
 public:
  static constexpr WingNumber kUnlabeled = std::numeric_limits<WingNumber>::max();

  WingLabeling() = default;
  explicit WingLabeling(std::size_t capacity) : psi_(capacity, kUnlabeled) {}

  std::size_t size() const { return psi_.size(); }
  bool labeled(EdgeId e) const { return e.value < psi_.size() && psi_[e.value] != kUnlabeled; }
  // Unchecked; the caller knows e is labeled.
  WingNumber operator[](EdgeId e) const { return psi_[e.value]; }
  WingNumber at(EdgeId e) const;

  void set(EdgeId e, WingNumber k);
  void retire(EdgeId e);
  void ensure_capacity(std::size_t n);

  WingNumber k_max() const;
  // Edges with wing number >= k.
  std::size_t count_at_least(WingNumber k) const;
  // Entry k lists the edges with wing number k, ascending by id.
  std::vector<std::vector<EdgeId>> level_buckets() const;

  friend bool operator==(const WingLabeling& a, const WingLabeling& b) { return a.psi_ == b.psi_; }

 private:
  std::vector<WingNumber> psi_;
  std::vector<std::size_t> level_count_;
};

WingNumber wing_number(const WingLabeling& labeling, EdgeId e);

struct PeelOptions {
  enum class TieBreak { fifo, lifo };
  TieBreak tie_break = TieBreak::fifo;
};

WingLabeling wing_decomposition(const BipartiteGraph& g, const PeelOptions& options = {});

// Recomputes the wing numbers of `region` while every other live edge keeps
// its label. Exact whenever all edges whose wing number differs from the
// stored label lie inside the region.
void repeel_region(const BipartiteGraph& g, WingLabeling& labeling, std::span<const EdgeId> region);

}  // namespace equiwing
