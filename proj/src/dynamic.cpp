#include "equiwing/dynamic.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "equiwing/errors.hpp"

namespace equiwing {

namespace {

std::uint64_t count_common(std::span<const Incidence> a, std::span<const Incidence> b, std::uint32_t skip) {
  std::uint64_t n = 0;
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (i->neighbor < j->neighbor) {
      ++i;
    } else if (j->neighbor < i->neighbor) {
      ++j;
    } else {
      if (i->neighbor != skip) ++n;
      ++i;
      ++j;
    }
  }
  return n;
}

// Per incident edge, the butterflies it shares with the pair (u,v).
WingNumber pair_delta(const BipartiteGraph& g, std::uint32_t u, std::uint32_t v) {
  std::uint64_t best = 0;
  for (const Incidence& ux : g.u_adj(u)) {
    if (ux.neighbor == v) continue;
    best = std::max(best, count_common(g.v_adj(v), g.v_adj(ux.neighbor), u));
  }
  for (const Incidence& wv : g.v_adj(v)) {
    if (wv.neighbor == u) continue;
    best = std::max(best, count_common(g.u_adj(u), g.u_adj(wv.neighbor), v));
  }
  return WingNumber(best);
}

void check_pair(const BipartiteGraph& g, std::uint32_t u, std::uint32_t v) {
  if (u >= g.u_count() || v >= g.v_count()) throw NotFoundError("unknown endpoint ordinal");
}

// Minimum wing number over the three legs of each butterfly through e.
std::vector<WingNumber> leg_minima(const BipartiteGraph& g, const WingLabeling& lab, std::uint32_t u,
                                   std::uint32_t v) {
  std::vector<WingNumber> out;
  for_each_butterfly_through(g, u, v, [&](const ButterflyLegs& l) {
    out.push_back(std::min({lab[l.edges[0]], lab[l.edges[1]], lab[l.edges[2]]}));
  });
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

std::uint64_t count_at_least(const std::vector<WingNumber>& desc, std::int64_t t) {
  if (t <= 0) return desc.size();
  auto it = std::upper_bound(desc.begin(), desc.end(), WingNumber(t), std::greater<>());
  // upper_bound with greater<> finds the first element < t.
  return std::uint64_t(it - desc.begin());
}

WingNumber h_index(const std::vector<WingNumber>& desc) {
  WingNumber h = 0;
  while (h < desc.size() && desc[h] >= h + 1) ++h;
  return h;
}

struct MaxMinSearch {
  std::unordered_map<std::uint32_t, WingNumber> best;
  std::unordered_set<std::uint32_t> done;
  std::priority_queue<std::pair<WingNumber, std::uint32_t>> heap;

  void relax(EdgeId f, WingNumber value) {
    if (done.count(f.value)) return;
    auto [it, fresh] = best.try_emplace(f.value, value);
    if (!fresh) {
      if (it->second >= value) return;
      it->second = value;
    }
    heap.emplace(value, f.value);
  }

  // Pops the next finalized edge; false when exhausted.
  bool pop(EdgeId& f, WingNumber& value) {
    while (!heap.empty()) {
      auto [b, id] = heap.top();
      heap.pop();
      if (done.count(id) || best[id] != b) continue;
      done.insert(id);
      f = EdgeId{id};
      value = b;
      return true;
    }
    return false;
  }
};

SnId owning_node(const BipartiteGraph& g, const EquiWingIndex& index, EdgeId f) {
  auto n = index.node_of(g.endpoints(f));
  if (!n) throw ConsistencyError("edge in a butterfly is missing from the index");
  return *n;
}

void finish_scope(const BipartiteGraph& g, const EquiWingIndex& index, UpdateScope& scope,
                  const std::set<SnId>& nodes, std::vector<EdgeId> extra) {
  scope.affected_nodes.assign(nodes.begin(), nodes.end());
  extra.push_back(scope.edge);
  for (SnId id : nodes)
    for (const EdgeKey& k : index.node(id).members) {
      auto e = g.find_edge(k.u, k.v);
      if (!e) throw ConsistencyError("indexed edge missing from the graph");
      extra.push_back(*e);
    }
  std::sort(extra.begin(), extra.end());
  extra.erase(std::unique(extra.begin(), extra.end()), extra.end());
  scope.affected_edges = std::move(extra);
  for (EdgeId e : scope.affected_edges) {
    const EdgeKey k = g.endpoints(e);
    scope.affected_u.push_back(k.u);
    scope.affected_v.push_back(k.v);
  }
  for (auto* list : {&scope.affected_u, &scope.affected_v}) {
    std::sort(list->begin(), list->end());
    list->erase(std::unique(list->begin(), list->end()), list->end());
  }
}

UpdateScope insertion_scope(const BipartiteGraph& g, const WingLabeling& lab, const EquiWingIndex& index,
                            EdgeId ep, WingNumber delta) {
  UpdateScope scope;
  scope.kind = MutationKind::insert;
  scope.edge = ep;
  scope.key = g.endpoints(ep);
  scope.delta = delta;
  const WingNumber ub = wing_upper_bound(g, lab, ep, delta);
  scope.upper_bound = ub;

  std::set<SnId> nodes;
  // Nodes holding the minimum edges of the new butterflies, up to the bound.
  for_each_butterfly(g, ep, [&](const ButterflyLegs& l) {
    const WingNumber m = std::min({lab[l.edges[0]], lab[l.edges[1]], lab[l.edges[2]]});
    if (m < 1 || m > ub) return;
    for (EdgeId f : l.edges)
      if (lab[f] == m) nodes.insert(owning_node(g, index, f));
  });

  // An edge can only rise if a chain of butterflies links it to the new edge
  // where every butterfly can reach its new level; capacities assume each
  // candidate rises by at most delta.
  auto candidate = [&](EdgeId f) { return f != ep && lab[f] < ub; };
  auto capacity = [&](EdgeId f) -> WingNumber {
    if (f == ep) return ub;
    const WingNumber p = lab[f];
    return p < ub ? p + delta : p;
  };
  MaxMinSearch search;
  std::vector<EdgeId> rising;
  for_each_butterfly(g, ep, [&](const ButterflyLegs& l) {
    WingNumber c = ub;
    for (EdgeId f : l.edges) c = std::min(c, capacity(f));
    for (EdgeId f : l.edges)
      if (candidate(f)) search.relax(f, c);
  });
  EdgeId f;
  WingNumber b;
  while (search.pop(f, b)) {
    if (b < lab[f] + 1) continue;
    rising.push_back(f);
    const WingNumber own = capacity(f);
    for_each_butterfly(g, f, [&](const ButterflyLegs& l) {
      WingNumber c = std::min(b, own);
      for (EdgeId h : l.edges) c = std::min(c, capacity(h));
      for (EdgeId h : l.edges)
        if (candidate(h)) search.relax(h, c);
    });
  }
  for (EdgeId r : rising)
    if (lab[r] >= 1) nodes.insert(owning_node(g, index, r));
  finish_scope(g, index, scope, nodes, rising);
  return scope;
}

UpdateScope deletion_scope(const BipartiteGraph& g, const WingLabeling& lab, const EquiWingIndex& index, EdgeId ep) {
  UpdateScope scope;
  scope.kind = MutationKind::remove;
  scope.edge = ep;
  scope.key = g.endpoints(ep);
  const WingNumber a = lab.at(ep);
  scope.upper_bound = a;

  std::set<SnId> nodes;
  std::vector<EdgeId> falling;
  if (a >= 1) {
    nodes.insert(owning_node(g, index, ep));
    // An edge can only fall if a chain of butterflies at or above its level
    // links it to the deleted edge.
    auto candidate = [&](EdgeId f) { return f != ep && lab[f] <= a; };
    MaxMinSearch search;
    for_each_butterfly(g, ep, [&](const ButterflyLegs& l) {
      WingNumber c = a;
      for (EdgeId f : l.edges) c = std::min(c, lab[f]);
      for (EdgeId f : l.edges)
        if (candidate(f)) search.relax(f, c);
    });
    EdgeId f;
    WingNumber b;
    while (search.pop(f, b)) {
      if (b < lab[f]) continue;
      falling.push_back(f);
      for_each_butterfly(g, f, [&](const ButterflyLegs& l) {
        WingNumber c = std::min(b, lab[f]);
        for (EdgeId h : l.edges) c = std::min(c, lab[h]);
        for (EdgeId h : l.edges)
          if (candidate(h)) search.relax(h, c);
      });
    }
    for (EdgeId r : falling) nodes.insert(owning_node(g, index, r));
    // Lower neighbours can lose the butterflies that held them together.
    std::set<SnId> lower;
    for (SnId id : nodes)
      for (SnId n : index.neighbors(id))
        if (index.k_of(n) < index.k_of(id)) lower.insert(n);
    nodes.insert(lower.begin(), lower.end());
  }
  finish_scope(g, index, scope, nodes, falling);
  return scope;
}

struct DisjointSet {
  std::vector<std::size_t> parent;
  std::size_t add() {
    parent.push_back(parent.size());
    return parent.size() - 1;
  }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

ApplyReport apply_local(BipartiteGraph& g, WingLabeling& lab, EquiWingIndex& index, const UpdateScope& scope,
                        bool& edge_removed) {
  ApplyReport rep;
  const bool ins = scope.kind == MutationKind::insert;
  const EdgeId ep = scope.edge;
  if (!g.contains(ep) || !(g.endpoints(ep) == scope.key)) throw InvalidArgumentError("scope does not match graph");

  for (SnId id : scope.affected_nodes) {
    rep.max_touched_level = std::max(rep.max_touched_level, index.k_of(id));
    index.remove_node(id);
  }
  rep.removed_nodes = scope.affected_nodes;

  std::vector<EdgeId> region;
  std::unordered_map<std::uint32_t, WingNumber> before;
  for (EdgeId e : scope.affected_edges) {
    if (!ins && e == ep) continue;
    region.push_back(e);
    before[e.value] = lab.labeled(e) ? lab[e] : 0;
  }
  if (!ins) {
    g.delete_edge(ep);
    lab.retire(ep);
    edge_removed = true;
  } else if (!lab.labeled(ep)) {
    lab.set(ep, 0);
  }
  repeel_region(g, lab, region);
  for (EdgeId e : region) {
    if (ins && e == ep) continue;
    if (lab[e] != before[e.value]) rep.changed.emplace_back(e, before[e.value]);
  }

  // Union-find over freed edges and the surviving nodes they touch.
  DisjointSet ds;
  std::unordered_map<std::uint32_t, std::size_t> edge_elem;
  std::unordered_map<SnId, std::size_t> node_elem;
  std::vector<std::pair<bool, std::uint32_t>> elems;  // (is survivor, edge id or node id)
  for (EdgeId e : region) {
    if (lab[e] < 1) continue;
    edge_elem.emplace(e.value, ds.add());
    elems.emplace_back(false, e.value);
  }
  auto owner = [&](EdgeId f) -> std::size_t {
    auto it = edge_elem.find(f.value);
    if (it != edge_elem.end()) return it->second;
    const SnId n = owning_node(g, index, f);
    if (index.k_of(n) != lab[f]) throw ConsistencyError("surviving node disagrees with its edge's wing number");
    auto [jt, fresh] = node_elem.try_emplace(n, 0);
    if (fresh) {
      jt->second = ds.add();
      elems.emplace_back(true, n);
    }
    return jt->second;
  };

  std::unordered_set<std::uint32_t> changed_set;
  for (auto [e, old] : rep.changed) changed_set.insert(e.value);
  if (ins) changed_set.insert(ep.value);
  std::unordered_set<std::uint32_t> boundary;
  std::vector<std::pair<std::size_t, std::size_t>> links;
  std::vector<std::size_t> frozen;
  for (EdgeId f : region) {
    if (lab[f] < 1) continue;
    const bool moved = changed_set.count(f.value) > 0;
    for_each_butterfly(g, f, [&](const ButterflyLegs& l) {
      const std::array<EdgeId, 4> es{f, l.edges[0], l.edges[1], l.edges[2]};
      WingNumber m = lab[f];
      for (EdgeId x : l.edges) m = std::min(m, lab[x]);
      std::size_t low = SIZE_MAX;
      for (EdgeId x : es) {
        if (lab[x] != m) continue;
        const std::size_t o = owner(x);
        if (low == SIZE_MAX)
          low = o;
        else
          ds.unite(low, o);
      }
      for (EdgeId x : es)
        if (lab[x] != m) links.emplace_back(low, owner(x));
      if (moved)
        for (EdgeId x : l.edges)
          if (!edge_elem.count(x.value)) boundary.insert(x.value);
    });
  }

  // Materialize every component: survivors absorb freed edges and each other,
  // otherwise a fresh node is created.
  std::vector<std::size_t> order;
  std::unordered_map<std::size_t, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < elems.size(); ++i) {
    const std::size_t r = ds.find(i);
    auto [it, fresh] = groups.try_emplace(r);
    if (fresh) order.push_back(r);
    it->second.push_back(i);
  }
  std::unordered_map<std::size_t, SnId> group_node;
  for (std::size_t r : order) {
    std::vector<SnId> survivors;
    std::vector<EdgeKey> keys;
    std::optional<WingNumber> k;
    for (std::size_t i : groups[r]) {
      const auto [is_node, id] = elems[i];
      const WingNumber level = is_node ? index.k_of(id) : lab[EdgeId{id}];
      if (k && *k != level) throw ConsistencyError("one class mixes wing numbers");
      k = level;
      if (is_node)
        survivors.push_back(id);
      else
        keys.push_back(g.endpoints(EdgeId{id}));
    }
    rep.max_touched_level = std::max(rep.max_touched_level, *k);
    if (survivors.empty()) {
      const SnId id = index.add_node(*k, std::move(keys));
      rep.created_nodes.push_back(id);
      group_node[r] = id;
      continue;
    }
    std::sort(survivors.begin(), survivors.end());
    const SnId keep = survivors.front();
    for (std::size_t i = 1; i < survivors.size(); ++i) index.merge_into(keep, survivors[i]);
    if (!keys.empty()) index.add_members(keep, keys);
    if (survivors.size() > 1 || !keys.empty()) rep.grown_nodes.push_back(keep);
    group_node[r] = keep;
  }
  for (auto [a, b] : links) {
    const SnId na = group_node.at(ds.find(a));
    const SnId nb = group_node.at(ds.find(b));
    if (na != nb) index.add_super_edge(na, nb);
  }

  if (index.indexed_edge_count() != lab.count_at_least(1)) throw ConsistencyError("index does not cover the labeling");
  // Every wing number is the h-index of its butterflies' leg minima; check
  // the untouched edges next to anything that moved.
  for (std::uint32_t id : boundary) {
    const EdgeId e{id};
    const EdgeKey k = g.endpoints(e);
    if (h_index(leg_minima(g, lab, k.u, k.v)) != lab[e]) throw ConsistencyError("wing number stale outside the scope");
  }
  return rep;
}

}  // namespace

WingNumber compute_delta(const BipartiteGraph& g, std::uint32_t u, std::uint32_t v) {
  check_pair(g, u, v);
  if (g.find_edge(u, v)) throw InvalidArgumentError("edge already present");
  return pair_delta(g, u, v);
}

std::uint64_t k_level_butterfly_count(const BipartiteGraph& g, const WingLabeling& labeling, std::uint32_t u,
                                      std::uint32_t v, std::int64_t k) {
  check_pair(g, u, v);
  return count_at_least(leg_minima(g, labeling, u, v), k);
}

std::uint64_t k_level_butterfly_count(const BipartiteGraph& g, const WingLabeling& labeling, EdgeId e,
                                      std::int64_t k) {
  const EdgeKey key = g.endpoints(e);
  return k_level_butterfly_count(g, labeling, key.u, key.v, k);
}

WingNumber wing_upper_bound(const BipartiteGraph& g, const WingLabeling& labeling, EdgeId inserted,
                            WingNumber delta) {
  if (!g.contains(inserted)) throw InvalidArgumentError("inserted edge is not in the graph");
  const EdgeKey key = g.endpoints(inserted);
  const auto minima = leg_minima(g, labeling, key.u, key.v);
  const std::int64_t start = std::min<std::int64_t>(std::int64_t(labeling.k_max()) + delta, minima.size());
  for (std::int64_t k = start; k >= 1; --k)
    if (count_at_least(minima, k - std::int64_t(delta)) >= std::uint64_t(k)) return WingNumber(k);
  return 0;
}

WingNumber wing_upper_bound(const BipartiteGraph& g, const WingLabeling& labeling, EdgeId inserted) {
  if (!g.contains(inserted)) throw InvalidArgumentError("inserted edge is not in the graph");
  const EdgeKey key = g.endpoints(inserted);
  return wing_upper_bound(g, labeling, inserted, pair_delta(g, key.u, key.v));
}

WingNumber loose_wing_upper_bound(const BipartiteGraph& g, const WingLabeling& labeling, EdgeId inserted,
                                  WingNumber delta) {
  const EdgeKey key = g.endpoints(inserted);
  const auto minima = leg_minima(g, labeling, key.u, key.v);
  if (minima.empty()) return 0;
  return h_index(minima) + delta;
}

UpdateScope affected_edges(const BipartiteGraph& g, const WingLabeling& labeling, const EquiWingIndex& index,
                           const Mutation& mutation) {
  if (!g.contains(mutation.edge)) throw InvalidArgumentError("mutated edge not in graph");
  if (mutation.kind == MutationKind::insert) return insertion_scope(g, labeling, index, mutation.edge, mutation.delta);
  return deletion_scope(g, labeling, index, mutation.edge);
}

ApplyReport apply_update(BipartiteGraph& g, WingLabeling& labeling, EquiWingIndex& index, const UpdateScope& scope) {
  bool edge_removed = false;
  try {
    return apply_local(g, labeling, index, scope, edge_removed);
  } catch (const ConsistencyError&) {
    if (scope.kind == MutationKind::remove && !edge_removed && g.contains(scope.edge)) g.delete_edge(scope.edge);
    labeling = wing_decomposition(g);
    index = build_equiwing(g, labeling);
    ApplyReport rep;
    rep.fell_back = true;
    rep.max_touched_level = index.k_max();
    return rep;
  }
}

ApplyReport apply_update_comp(BipartiteGraph& g, WingLabeling& labeling, EquiWingIndex& shadow,
                              EquiWingCompIndex& comp, const UpdateScope& scope) {
  ApplyReport rep = apply_update(g, labeling, shadow, scope);
  if (rep.fell_back)
    comp = compress(shadow);
  else
    recompress_levels(shadow, comp, rep.max_touched_level);
  return rep;
}

DynamicIndex::DynamicIndex(BipartiteGraph g, bool with_comp) : graph_(std::move(g)) {
  labeling_ = wing_decomposition(graph_);
  index_ = build_equiwing(graph_, labeling_);
  if (with_comp) comp_ = compress(index_);
}

DynamicIndex::DynamicIndex(BipartiteGraph g, WingLabeling labeling, EquiWingIndex index, bool with_comp)
    : graph_(std::move(g)), labeling_(std::move(labeling)), index_(std::move(index)) {
  sync_vertices();
  if (with_comp) comp_ = compress(index_);
}

void DynamicIndex::sync_vertices() {
  index_.sync_vertices(graph_.vertices());
  if (comp_) comp_->sync_vertices(graph_.vertices());
}

DynamicIndex::Outcome DynamicIndex::insert_edge(std::string_view u, std::string_view v) {
  const VertexId a = graph_.add_vertex(Side::U, u);
  const VertexId b = graph_.add_vertex(Side::V, v);
  sync_vertices();
  return insert_edge(a.ordinal, b.ordinal);
}

DynamicIndex::Outcome DynamicIndex::insert_edge(std::uint32_t u, std::uint32_t v) {
  check_pair(graph_, u, v);
  if (graph_.find_edge(u, v)) return {};
  Mutation m;
  m.kind = MutationKind::insert;
  m.delta = compute_delta(graph_, u, v);
  m.edge = graph_.insert_edge(u, v).edge;
  labeling_.ensure_capacity(graph_.edge_capacity());
  return run(m);
}

DynamicIndex::Outcome DynamicIndex::delete_edge(std::string_view u, std::string_view v) {
  auto e = graph_.find_edge(u, v);
  if (!e) throw NotFoundError("no edge " + std::string(u) + " " + std::string(v));
  const EdgeKey k = graph_.endpoints(*e);
  return delete_edge(k.u, k.v);
}

DynamicIndex::Outcome DynamicIndex::delete_edge(std::uint32_t u, std::uint32_t v) {
  auto e = graph_.find_edge(u, v);
  if (!e) throw NotFoundError("no edge between the given ordinals");
  Mutation m;
  m.kind = MutationKind::remove;
  m.edge = *e;
  return run(m);
}

DynamicIndex::Outcome DynamicIndex::run(const Mutation& m) {
  Outcome out;
  out.applied = true;
  out.scope = affected_edges(graph_, labeling_, index_, m);
  if (comp_)
    out.report = apply_update_comp(graph_, labeling_, index_, *comp_, out.scope);
  else
    out.report = apply_update(graph_, labeling_, index_, out.scope);
  if (out.report.fell_back) ++fallbacks_;
  return out;
}

}  // namespace equiwing
