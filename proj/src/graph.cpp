#include "equiwing/graph.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "equiwing/errors.hpp"

namespace equiwing {

const std::string& VertexTable::label(Side s, std::uint32_t ordinal) const {
  const auto& l = labels_[side_index(s)];
  if (ordinal >= l.size()) throw NotFoundError("vertex ordinal " + std::to_string(ordinal) + " out of range");
  return l[ordinal];
}

std::optional<std::uint32_t> VertexTable::find(Side s, std::string_view label) const {
  const auto& m = lookup_[side_index(s)];
  auto it = m.find(std::string(label));
  if (it == m.end()) return std::nullopt;
  return it->second;
}

std::uint32_t VertexTable::add(Side s, std::string_view label) {
  if (label.empty()) throw InvalidArgumentError("empty vertex label");
  auto& m = lookup_[side_index(s)];
  auto [it, fresh] = m.try_emplace(std::string(label), std::uint32_t(labels_[side_index(s)].size()));
  if (fresh) labels_[side_index(s)].emplace_back(label);
  return it->second;
}

VertexId BipartiteGraph::add_vertex(Side side, std::string_view label) {
  const std::uint32_t ord = vertices_.add(side, label);
  auto& adj = side == Side::U ? u_adj_ : v_adj_;
  if (adj.size() <= ord) adj.resize(ord + 1);
  return {side, ord};
}

std::optional<VertexId> BipartiteGraph::find_vertex(Side side, std::string_view label) const {
  auto o = vertices_.find(side, label);
  if (!o) return std::nullopt;
  return VertexId{side, *o};
}

std::span<const Incidence> BipartiteGraph::neighbors(VertexId x) const {
  const auto& adj = x.side == Side::U ? u_adj_ : v_adj_;
  if (x.ordinal >= adj.size()) throw NotFoundError("unknown vertex");
  return adj[x.ordinal];
}

EdgeKey BipartiteGraph::endpoints(EdgeId e) const {
  if (!contains(e)) throw NotFoundError("edge id " + std::to_string(e.value) + " not present");
  return edges_[e.value].key;
}

namespace {

auto find_incidence(const std::vector<Incidence>& adj, std::uint32_t n) {
  return std::lower_bound(adj.begin(), adj.end(), n,
                          [](const Incidence& a, std::uint32_t b) { return a.neighbor < b; });
}

}  // namespace

std::optional<EdgeId> BipartiteGraph::find_edge(std::uint32_t u, std::uint32_t v) const {
  if (u >= u_adj_.size() || v >= v_adj_.size()) return std::nullopt;
  const auto& adj = u_adj_[u].size() <= v_adj_[v].size() ? u_adj_[u] : v_adj_[v];
  const std::uint32_t target = &adj == &u_adj_[u] ? v : u;
  auto it = find_incidence(adj, target);
  if (it == adj.end() || it->neighbor != target) return std::nullopt;
  return it->edge;
}

std::optional<EdgeId> BipartiteGraph::find_edge(std::string_view u, std::string_view v) const {
  auto a = vertices_.find(Side::U, u);
  auto b = vertices_.find(Side::V, v);
  if (!a || !b) return std::nullopt;
  return find_edge(*a, *b);
}

BipartiteGraph::InsertResult BipartiteGraph::insert_edge(std::string_view u, std::string_view v) {
  const VertexId a = add_vertex(Side::U, u);
  const VertexId b = add_vertex(Side::V, v);
  return insert_edge(a.ordinal, b.ordinal);
}

BipartiteGraph::InsertResult BipartiteGraph::insert_edge(std::uint32_t u, std::uint32_t v) {
  if (u >= u_adj_.size() || v >= v_adj_.size()) throw NotFoundError("unknown endpoint ordinal");
  if (auto e = find_edge(u, v)) return {*e, false};
  const EdgeId id{std::uint32_t(edges_.size())};
  edges_.push_back({{u, v}, true});
  auto& au = u_adj_[u];
  au.insert(find_incidence(au, v), Incidence{v, id});
  auto& av = v_adj_[v];
  av.insert(find_incidence(av, u), Incidence{u, id});
  ++live_edges_;
  return {id, true};
}

void BipartiteGraph::delete_edge(EdgeId e) {
  const EdgeKey k = endpoints(e);
  auto& au = u_adj_[k.u];
  au.erase(find_incidence(au, k.v));
  auto& av = v_adj_[k.v];
  av.erase(find_incidence(av, k.u));
  edges_[e.value].live = false;
  --live_edges_;
}

std::vector<EdgeId> BipartiteGraph::edge_ids() const {
  std::vector<EdgeId> out;
  out.reserve(live_edges_);
  for (std::uint32_t i = 0; i < edges_.size(); ++i)
    if (edges_[i].live) out.push_back(EdgeId{i});
  return out;
}

BipartiteGraph load_edge_list(std::istream& in, EdgeListFormat format, LoadReport* report) {
  BipartiteGraph g;
  LoadReport rep;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::size_t start = line.find_first_not_of(" \t\r");
    if (start == std::string::npos) continue;
    if (line[start] == '%' || line[start] == '#') continue;
    std::istringstream tokens(line);
    std::vector<std::string> parts;
    for (std::string t; tokens >> t;) parts.push_back(std::move(t));
    // KONECT rows may carry weight and timestamp columns after the endpoints.
    const bool ok = format == EdgeListFormat::konect ? parts.size() >= 2 : parts.size() == 2;
    if (!ok) throw ParseError(lineno, "expected two vertex labels, got " + std::to_string(parts.size()) + " tokens");
    ++rep.lines;
    if (!g.insert_edge(parts[0], parts[1]).inserted) ++rep.duplicates;
  }
  if (in.bad()) throw IoError("read failure");
  if (report) *report = rep;
  return g;
}

BipartiteGraph load_edge_list_file(const std::string& path, EdgeListFormat format, LoadReport* report) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  return load_edge_list(in, format, report);
}

void write_edge_list(std::ostream& out, const BipartiteGraph& g) {
  for (EdgeId e : g.edge_ids()) {
    const EdgeKey k = g.endpoints(e);
    out << g.label({Side::U, k.u}) << '\t' << g.label({Side::V, k.v}) << '\n';
  }
}

std::uint64_t butterfly_support(const BipartiteGraph& g, EdgeId e) {
  std::uint64_t n = 0;
  for_each_butterfly(g, e, [&](const ButterflyLegs&) { ++n; });
  return n;
}

std::vector<Butterfly> butterflies_containing(const BipartiteGraph& g, EdgeId e) {
  const EdgeKey k = g.endpoints(e);
  std::vector<Butterfly> out;
  for_each_butterfly_through(g, k.u, k.v, [&](const ButterflyLegs& l) {
    Butterfly b;
    const bool u_first = k.u < l.w;
    const bool v_first = k.v < l.x;
    b.u0 = u_first ? k.u : l.w;
    b.u1 = u_first ? l.w : k.u;
    b.v0 = v_first ? k.v : l.x;
    b.v1 = v_first ? l.x : k.v;
    // (u,v)=e, (u,x), (w,v), (w,x)
    const EdgeId uv = e, ux = l.edges[1], wv = l.edges[0], wx = l.edges[2];
    const EdgeId r0v0 = u_first ? (v_first ? uv : ux) : (v_first ? wv : wx);
    const EdgeId r0v1 = u_first ? (v_first ? ux : uv) : (v_first ? wx : wv);
    const EdgeId r1v0 = u_first ? (v_first ? wv : wx) : (v_first ? uv : ux);
    const EdgeId r1v1 = u_first ? (v_first ? wx : wv) : (v_first ? ux : uv);
    b.edges = {r0v0, r0v1, r1v0, r1v1};
    out.push_back(b);
  });
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace equiwing
