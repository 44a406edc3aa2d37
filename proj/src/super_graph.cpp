#include "equiwing/super_graph.hpp"

#include <algorithm>
#include <deque>
#include <unordered_set>

#include "equiwing/errors.hpp"

namespace equiwing {

void SuperGraph::sync_vertices(const VertexTable& source) {
  for (Side s : {Side::U, Side::V}) {
    const std::uint32_t mine = vertices_.count(s);
    if (source.count(s) < mine) throw InvalidArgumentError("vertex table shrank");
    for (std::uint32_t i = 0; i < source.count(s); ++i) {
      if (i < mine) {
        if (vertices_.label(s, i) != source.label(s, i)) throw InvalidArgumentError("vertex tables disagree");
      } else {
        vertices_.add(s, source.label(s, i));
      }
    }
    seeds_[side_index(s)].resize(vertices_.count(s));
  }
}

const SuperNode& SuperGraph::node(SnId id) const {
  if (!contains(id)) throw NotFoundError("super node " + std::to_string(id) + " not present");
  return nodes_[id].node;
}

std::vector<SnId> SuperGraph::node_ids() const {
  std::vector<SnId> out;
  out.reserve(live_nodes_);
  for (SnId i = 0; i < nodes_.size(); ++i)
    if (nodes_[i].live) out.push_back(i);
  return out;
}

WingNumber SuperGraph::k_max() const {
  WingNumber m = 0;
  for (const Slot& s : nodes_)
    if (s.live) m = std::max(m, s.node.k);
  return m;
}

std::span<const SnId> SuperGraph::neighbors(SnId id) const {
  if (!contains(id)) throw NotFoundError("super node " + std::to_string(id) + " not present");
  return nodes_[id].adj;
}

std::span<const SnId> SuperGraph::seeds(VertexId x) const {
  const auto& lists = seeds_[side_index(x.side)];
  if (x.ordinal >= lists.size()) return {};
  return lists[x.ordinal];
}

std::optional<SnId> SuperGraph::node_of(EdgeKey e) const {
  auto it = edge_node_.find(e.packed());
  if (it == edge_node_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::pair<SnId, SnId>> SuperGraph::super_edges() const {
  std::vector<std::pair<SnId, SnId>> out;
  for (SnId i = 0; i < nodes_.size(); ++i) {
    if (!nodes_[i].live) continue;
    for (SnId j : nodes_[i].adj)
      if (i < j) out.emplace_back(i, j);
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool SuperGraph::before(SnId a, SnId b) const {
  const WingNumber ka = nodes_[a].node.k, kb = nodes_[b].node.k;
  return ka != kb ? ka > kb : a < b;
}

void SuperGraph::insert_ordered(std::vector<SnId>& list, SnId id) const {
  auto it = std::lower_bound(list.begin(), list.end(), id, [&](SnId x, SnId y) { return before(x, y); });
  if (it == list.end() || *it != id) list.insert(it, id);
}

void SuperGraph::erase_ordered(std::vector<SnId>& list, SnId id) const {
  auto it = std::lower_bound(list.begin(), list.end(), id, [&](SnId x, SnId y) { return before(x, y); });
  if (it != list.end() && *it == id) list.erase(it);
}

std::vector<SnId>& SuperGraph::seed_list(Side s, std::uint32_t ordinal) {
  auto& lists = seeds_[side_index(s)];
  if (ordinal >= vertices_.count(s)) throw ConsistencyError("member endpoint outside the vertex table");
  if (lists.size() < vertices_.count(s)) lists.resize(vertices_.count(s));
  return lists[ordinal];
}

void SuperGraph::attach_members(SnId id, std::span<const EdgeKey> members) {
  for (const EdgeKey& e : members) {
    if (!edge_node_.emplace(e.packed(), id).second) throw ConsistencyError("edge indexed twice");
    insert_ordered(seed_list(Side::U, e.u), id);
    insert_ordered(seed_list(Side::V, e.v), id);
  }
}

SnId SuperGraph::add_node(WingNumber k, std::vector<EdgeKey> members) {
  const SnId id = next_id_;
  add_node_with_id(id, k, std::move(members));
  return id;
}

void SuperGraph::add_node_with_id(SnId id, WingNumber k, std::vector<EdgeKey> members) {
  if (contains(id)) throw ConsistencyError("super node id reused");
  if (nodes_.size() <= id) nodes_.resize(std::size_t(id) + 1);
  Slot& s = nodes_[id];
  s.live = true;
  s.node.id = id;
  s.node.k = k;
  std::sort(members.begin(), members.end());
  s.node.members = std::move(members);
  s.adj.clear();
  ++live_nodes_;
  next_id_ = std::max(next_id_, id + 1);
  attach_members(id, nodes_[id].node.members);
}

void SuperGraph::add_members(SnId id, std::span<const EdgeKey> members) {
  if (!contains(id)) throw NotFoundError("super node " + std::to_string(id) + " not present");
  attach_members(id, members);
  auto& m = nodes_[id].node.members;
  m.insert(m.end(), members.begin(), members.end());
  std::sort(m.begin(), m.end());
}

void SuperGraph::remove_node(SnId id) {
  if (!contains(id)) throw NotFoundError("super node " + std::to_string(id) + " not present");
  Slot& s = nodes_[id];
  for (const EdgeKey& e : s.node.members) {
    edge_node_.erase(e.packed());
    erase_ordered(seed_list(Side::U, e.u), id);
    erase_ordered(seed_list(Side::V, e.v), id);
  }
  for (SnId n : s.adj) erase_ordered(nodes_[n].adj, id);
  super_edges_ -= s.adj.size();
  s.adj.clear();
  s.node.members.clear();
  s.live = false;
  --live_nodes_;
}

void SuperGraph::merge_into(SnId keep, SnId gone) {
  if (!contains(keep) || !contains(gone) || keep == gone) throw ConsistencyError("bad merge");
  if (k_of(keep) != k_of(gone)) throw ConsistencyError("merging nodes of different levels");
  std::vector<EdgeKey> moved = std::move(nodes_[gone].node.members);
  std::vector<SnId> adj = nodes_[gone].adj;
  nodes_[gone].node.members.clear();
  for (const EdgeKey& e : moved) {
    edge_node_.erase(e.packed());
    erase_ordered(seed_list(Side::U, e.u), gone);
    erase_ordered(seed_list(Side::V, e.v), gone);
  }
  for (SnId n : adj) erase_ordered(nodes_[n].adj, gone);
  super_edges_ -= adj.size();
  nodes_[gone].adj.clear();
  nodes_[gone].live = false;
  --live_nodes_;
  add_members(keep, moved);
  for (SnId n : adj)
    if (n != keep) add_super_edge(keep, n);
}

bool SuperGraph::add_super_edge(SnId a, SnId b) {
  if (!contains(a) || !contains(b)) throw ConsistencyError("super edge to a missing node");
  if (a == b) throw ConsistencyError("super edge loop");
  if (k_of(a) == k_of(b)) throw ConsistencyError("super edge between nodes of equal level");
  auto& la = nodes_[a].adj;
  auto it = std::lower_bound(la.begin(), la.end(), b, [&](SnId x, SnId y) { return before(x, y); });
  if (it != la.end() && *it == b) return false;
  la.insert(it, b);
  insert_ordered(nodes_[b].adj, a);
  ++super_edges_;
  return true;
}

bool operator==(const SuperGraph& a, const SuperGraph& b) {
  if (!(a.vertices_ == b.vertices_) || a.live_nodes_ != b.live_nodes_ || a.super_edges_ != b.super_edges_) return false;
  const SnId bound = std::max(a.id_bound(), b.id_bound());
  for (SnId i = 0; i < bound; ++i) {
    const bool la = a.contains(i), lb = b.contains(i);
    if (la != lb) return false;
    if (!la) continue;
    const auto& x = a.nodes_[i];
    const auto& y = b.nodes_[i];
    if (x.node.k != y.node.k || x.node.members != y.node.members || x.adj != y.adj) return false;
  }
  for (Side s : {Side::U, Side::V}) {
    for (std::uint32_t o = 0; o < a.vertices_.count(s); ++o) {
      auto sa = a.seeds({s, o});
      auto sb = b.seeds({s, o});
      if (!std::equal(sa.begin(), sa.end(), sb.begin(), sb.end())) return false;
    }
  }
  return true;
}

WingResult search_super_graph(const SuperGraph& sg, std::span<const SnId> seeds, VertexId q, WingNumber k,
                              QueryStats* stats) {
  if (k < 1) throw InvalidArgumentError("k must be at least 1");
  QueryStats local;
  QueryStats& st = stats ? *stats : local;
  WingResult result{q, k, {}};
  std::unordered_set<SnId> visited;
  std::deque<SnId> queue;
  for (SnId s : seeds) {
    ++st.seeds_examined;
    if (sg.k_of(s) < k || visited.count(s)) continue;
    visited.insert(s);
    queue.push_back(s);
    std::vector<EdgeKey> wing;
    while (!queue.empty()) {
      const SnId x = queue.front();
      queue.pop_front();
      ++st.nodes_visited;
      st.min_visited_k = std::min(st.min_visited_k, sg.k_of(x));
      const auto& members = sg.node(x).members;
      wing.insert(wing.end(), members.begin(), members.end());
      st.edges_emitted += members.size();
      for (SnId n : sg.neighbors(x)) {
        ++st.super_edges_scanned;
        if (sg.k_of(n) < k) break;
        if (visited.insert(n).second) queue.push_back(n);
      }
    }
    result.wings.push_back(std::move(wing));
  }
  canonicalize(result);
  return result;
}

SuperGraph reindex_vertices(const SuperGraph& sg, const VertexTable& target) {
  SuperGraph out;
  out.sync_vertices(target);
  auto map = [&](Side s, std::uint32_t o) {
    auto t = target.find(s, sg.vertices().label(s, o));
    if (!t) throw ConsistencyError("indexed vertex " + sg.vertices().label(s, o) + " missing from graph");
    return *t;
  };
  for (SnId id : sg.node_ids()) {
    const SuperNode& n = sg.node(id);
    std::vector<EdgeKey> members;
    members.reserve(n.members.size());
    for (const EdgeKey& e : n.members) members.push_back({map(Side::U, e.u), map(Side::V, e.v)});
    out.add_node_with_id(id, n.k, std::move(members));
  }
  for (auto [a, b] : sg.super_edges()) out.add_super_edge(a, b);
  return out;
}

WingLabeling labeling_from_index(const BipartiteGraph& g, const SuperGraph& sg) {
  WingLabeling lab(g.edge_capacity());
  std::size_t found = 0;
  for (EdgeId e : g.edge_ids()) {
    auto n = sg.node_of(g.endpoints(e));
    lab.set(e, n ? sg.k_of(*n) : 0);
    if (n) ++found;
  }
  if (found != sg.indexed_edge_count()) throw ConsistencyError("index holds edges missing from the graph");
  return lab;
}

}  // namespace equiwing
