#include "equiwing/baseline.hpp"

#include <algorithm>
#include <deque>

#include "equiwing/errors.hpp"

namespace equiwing {

std::size_t WingResult::edge_total() const {
  std::size_t n = 0;
  for (const auto& w : wings) n += w.size();
  return n;
}

void canonicalize(WingResult& r) {
  for (auto& w : r.wings) std::sort(w.begin(), w.end());
  std::sort(r.wings.begin(), r.wings.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
}

WingResult baseline_search(const BipartiteGraph& g, const WingLabeling& labeling, VertexId q, WingNumber k) {
  if (k < 1) throw InvalidArgumentError("k must be at least 1");
  WingResult result{q, k, {}};
  const auto incident = g.neighbors(q);

  std::vector<EdgeId> seeds;
  for (const Incidence& inc : incident) seeds.push_back(inc.edge);
  std::sort(seeds.begin(), seeds.end());

  std::vector<char> visited(g.edge_capacity(), 0);
  std::deque<EdgeId> queue;
  for (EdgeId s : seeds) {
    if (visited[s.value] || labeling[s] < k) continue;
    visited[s.value] = 1;
    queue.push_back(s);
    std::vector<EdgeKey> wing;
    while (!queue.empty()) {
      EdgeId x = queue.front();
      queue.pop_front();
      wing.push_back(g.endpoints(x));
      for_each_butterfly(g, x, [&](const ButterflyLegs& l) {
        for (EdgeId f : l.edges)
          if (labeling[f] < k) return;
        for (EdgeId f : l.edges) {
          if (!visited[f.value]) {
            visited[f.value] = 1;
            queue.push_back(f);
          }
        }
      });
    }
    result.wings.push_back(std::move(wing));
  }
  canonicalize(result);
  return result;
}

}  // namespace equiwing
