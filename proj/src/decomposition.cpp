#include "equiwing/decomposition.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "equiwing/errors.hpp"

namespace equiwing {

WingNumber WingLabeling::at(EdgeId e) const {
  if (!labeled(e)) throw NotFoundError("edge id " + std::to_string(e.value) + " has no wing number");
  return psi_[e.value];
}

void WingLabeling::set(EdgeId e, WingNumber k) {
  if (k == kUnlabeled) throw InvalidArgumentError("wing number out of range");
  ensure_capacity(e.value + 1);
  WingNumber& slot = psi_[e.value];
  if (slot != kUnlabeled) --level_count_[slot];
  slot = k;
  if (level_count_.size() <= k) level_count_.resize(k + 1, 0);
  ++level_count_[k];
}

void WingLabeling::retire(EdgeId e) {
  if (!labeled(e)) return;
  --level_count_[psi_[e.value]];
  psi_[e.value] = kUnlabeled;
}

void WingLabeling::ensure_capacity(std::size_t n) {
  if (psi_.size() < n) psi_.resize(n, kUnlabeled);
}

WingNumber WingLabeling::k_max() const {
  for (std::size_t k = level_count_.size(); k-- > 0;)
    if (level_count_[k] > 0) return WingNumber(k);
  return 0;
}

std::size_t WingLabeling::count_at_least(WingNumber k) const {
  std::size_t n = 0;
  for (std::size_t i = k; i < level_count_.size(); ++i) n += level_count_[i];
  return n;
}

std::vector<std::vector<EdgeId>> WingLabeling::level_buckets() const {
  std::vector<std::vector<EdgeId>> out(k_max() + 1);
  for (std::uint32_t i = 0; i < psi_.size(); ++i)
    if (psi_[i] != kUnlabeled) out[psi_[i]].push_back(EdgeId{i});
  return out;
}

WingNumber wing_number(const WingLabeling& labeling, EdgeId e) { return labeling.at(e); }

WingLabeling wing_decomposition(const BipartiteGraph& g, const PeelOptions& options) {
  const std::size_t cap = g.edge_capacity();
  std::vector<std::uint64_t> support(cap, 0);
  std::vector<char> done(cap, 1);
  std::uint64_t max_support = 0;
  const auto ids = g.edge_ids();
  for (EdgeId e : ids) {
    done[e.value] = 0;
    support[e.value] = butterfly_support(g, e);
    max_support = std::max(max_support, support[e.value]);
  }

  std::vector<std::vector<EdgeId>> buckets(max_support + 1);
  std::vector<std::size_t> head(max_support + 1, 0);
  for (EdgeId e : ids) buckets[support[e.value]].push_back(e);

  const bool fifo = options.tie_break == PeelOptions::TieBreak::fifo;
  WingLabeling out(cap);
  std::size_t cur = 0;
  std::size_t remaining = ids.size();
  while (remaining > 0) {
    EdgeId e;
    bool found = false;
    while (!found) {
      auto& b = buckets[cur];
      if (fifo) {
        while (head[cur] < b.size()) {
          EdgeId c = b[head[cur]++];
          if (!done[c.value] && support[c.value] == cur) {
            e = c;
            found = true;
            break;
          }
        }
      } else {
        while (!b.empty()) {
          EdgeId c = b.back();
          b.pop_back();
          if (!done[c.value] && support[c.value] == cur) {
            e = c;
            found = true;
            break;
          }
        }
      }
      if (!found) ++cur;
    }

    // Supports never drop below the current bucket, so cur is also the peel level.
    const std::uint64_t level = cur;
    out.set(e, WingNumber(level));
    for_each_butterfly(g, e, [&](const ButterflyLegs& l) {
      for (EdgeId f : l.edges)
        if (done[f.value]) return;
      for (EdgeId f : l.edges) {
        if (support[f.value] > level) {
          --support[f.value];
          buckets[support[f.value]].push_back(f);
        }
      }
    });
    done[e.value] = 1;
    --remaining;
  }
  return out;
}

void repeel_region(const BipartiteGraph& g, WingLabeling& labeling, std::span<const EdgeId> region) {
  std::unordered_map<std::uint32_t, std::size_t> slot;
  std::vector<EdgeId> r;
  for (EdgeId e : region) {
    if (!g.contains(e)) throw InvalidArgumentError("region edge not in graph");
    if (slot.emplace(e.value, r.size()).second) r.push_back(e);
  }
  labeling.ensure_capacity(g.edge_capacity());

  std::vector<std::uint64_t> support(r.size(), 0);
  std::vector<char> dead(r.size(), 0);
  WingNumber level = 1;
  std::unordered_set<std::uint32_t> killing;

  auto region_slot = [&](EdgeId f) -> long {
    auto it = slot.find(f.value);
    return it == slot.end() ? -1 : long(it->second);
  };
  // A pinned edge lives while its label reaches the current level; during a
  // level change the edges at the old level die one at a time.
  auto alive = [&](EdgeId f) {
    long s = region_slot(f);
    if (s >= 0) return !dead[s];
    WingNumber p = labeling[f];
    if (p >= level) return true;
    return p + 1 == level && killing.count(f.value) == 0 && !killing.empty();
  };

  std::map<WingNumber, std::vector<EdgeId>> pinned_by_level;
  std::unordered_set<std::uint32_t> pinned_seen;
  for (std::size_t i = 0; i < r.size(); ++i) {
    for_each_butterfly(g, r[i], [&](const ButterflyLegs& l) {
      bool all = true;
      for (EdgeId f : l.edges) {
        if (region_slot(f) >= 0) continue;
        if (pinned_seen.insert(f.value).second && labeling[f] >= 1) pinned_by_level[labeling[f]].push_back(f);
        if (labeling[f] < level) all = false;
      }
      if (all) ++support[i];
    });
  }

  std::set<std::pair<std::uint64_t, std::size_t>> order;
  for (std::size_t i = 0; i < r.size(); ++i) order.emplace(support[i], i);

  auto lower = [&](std::size_t i) {
    order.erase({support[i], i});
    --support[i];
    order.emplace(support[i], i);
  };

  auto peel_below_level = [&] {
    while (!order.empty() && order.begin()->first < level) {
      const std::size_t i = order.begin()->second;
      order.erase(order.begin());
      labeling.set(r[i], level - 1);
      for_each_butterfly(g, r[i], [&](const ButterflyLegs& l) {
        for (EdgeId f : l.edges)
          if (!alive(f)) return;
        for (EdgeId f : l.edges) {
          long s = region_slot(f);
          if (s >= 0) lower(std::size_t(s));
        }
      });
      dead[i] = 1;
    }
  };

  peel_below_level();
  auto next_pinned = pinned_by_level.begin();
  while (!order.empty()) {
    WingNumber target = WingNumber(order.begin()->first + 1);
    if (next_pinned != pinned_by_level.end() && next_pinned->first + 1 < target) target = next_pinned->first + 1;
    level = target;
    if (next_pinned != pinned_by_level.end() && next_pinned->first + 1 == level) {
      // Pinned edges at level-1 drop out now, one by one so that a
      // butterfly holding two of them is only subtracted once.
      for (EdgeId p : next_pinned->second) {
        killing.insert(p.value);
        for_each_butterfly(g, p, [&](const ButterflyLegs& l) {
          for (EdgeId f : l.edges)
            if (!alive(f)) return;
          for (EdgeId f : l.edges) {
            long s = region_slot(f);
            if (s >= 0) lower(std::size_t(s));
          }
        });
      }
      killing.clear();
      ++next_pinned;
    }
    peel_below_level();
  }
}

}  // namespace equiwing
