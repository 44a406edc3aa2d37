#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <tuple>
#include <unordered_map>
#include <vector>

namespace equiwing {

enum class Side : std::uint8_t { U = 0, V = 1 };

inline Side other(Side s) { return s == Side::U ? Side::V : Side::U; }
inline int side_index(Side s) { return static_cast<int>(s); }

struct VertexId {
  Side side = Side::U;
  std::uint32_t ordinal = 0;
  friend auto operator<=>(const VertexId&, const VertexId&) = default;
};

struct EdgeId {
  std::uint32_t value = 0;
  friend auto operator<=>(const EdgeId&, const EdgeId&) = default;
};

// Edge named by its endpoint ordinals; this is what indices store.
struct EdgeKey {
  std::uint32_t u = 0;
  std::uint32_t v = 0;
  friend auto operator<=>(const EdgeKey&, const EdgeKey&) = default;
  std::uint64_t packed() const { return (std::uint64_t(u) << 32) | v; }
  static EdgeKey unpack(std::uint64_t p) { return {std::uint32_t(p >> 32), std::uint32_t(p)}; }
};

struct Incidence {
  std::uint32_t neighbor = 0;
  EdgeId edge;
};

class VertexTable {
 public:
  std::uint32_t count(Side s) const { return std::uint32_t(labels_[side_index(s)].size()); }
  const std::string& label(Side s, std::uint32_t ordinal) const;
  const std::string& label(VertexId v) const { return label(v.side, v.ordinal); }
  std::optional<std::uint32_t> find(Side s, std::string_view label) const;
  std::uint32_t add(Side s, std::string_view label);

  friend bool operator==(const VertexTable& a, const VertexTable& b) { return a.labels_ == b.labels_; }

 private:
  std::array<std::vector<std::string>, 2> labels_;
  std::array<std::unordered_map<std::string, std::uint32_t>, 2> lookup_;
};

class BipartiteGraph {
 public:
  struct InsertResult {
    EdgeId edge;
    bool inserted = false;
  };

  std::uint32_t u_count() const { return vertices_.count(Side::U); }
  std::uint32_t v_count() const { return vertices_.count(Side::V); }
  std::size_t edge_count() const { return live_edges_; }
  // Ids handed out so far; retired ids stay reserved.
  std::size_t edge_capacity() const { return edges_.size(); }

  const VertexTable& vertices() const { return vertices_; }
  VertexId add_vertex(Side side, std::string_view label);
  std::optional<VertexId> find_vertex(Side side, std::string_view label) const;
  const std::string& label(VertexId v) const { return vertices_.label(v); }

  // Sorted by neighbor ordinal.
  std::span<const Incidence> u_adj(std::uint32_t u) const { return u_adj_[u]; }
  std::span<const Incidence> v_adj(std::uint32_t v) const { return v_adj_[v]; }
  std::span<const Incidence> neighbors(VertexId x) const;
  std::size_t degree(VertexId x) const { return neighbors(x).size(); }

  bool contains(EdgeId e) const { return e.value < edges_.size() && edges_[e.value].live; }
  EdgeKey endpoints(EdgeId e) const;
  std::optional<EdgeId> find_edge(std::uint32_t u, std::uint32_t v) const;
  std::optional<EdgeId> find_edge(std::string_view u, std::string_view v) const;

  InsertResult insert_edge(std::string_view u, std::string_view v);
  InsertResult insert_edge(std::uint32_t u, std::uint32_t v);
  void delete_edge(EdgeId e);

  std::vector<EdgeId> edge_ids() const;

 private:
  struct EdgeSlot {
    EdgeKey key;
    bool live = false;
  };

  VertexTable vertices_;
  std::vector<std::vector<Incidence>> u_adj_;
  std::vector<std::vector<Incidence>> v_adj_;
  std::vector<EdgeSlot> edges_;
  std::size_t live_edges_ = 0;
};

enum class EdgeListFormat { two_column, konect };

struct LoadReport {
  std::size_t lines = 0;
  std::size_t duplicates = 0;
};

BipartiteGraph load_edge_list(std::istream& in, EdgeListFormat format = EdgeListFormat::two_column,
                              LoadReport* report = nullptr);
BipartiteGraph load_edge_list_file(const std::string& path,
                                   EdgeListFormat format = EdgeListFormat::two_column,
                                   LoadReport* report = nullptr);
void write_edge_list(std::ostream& out, const BipartiteGraph& g);

// The three edges that close a butterfly {u,w} x {v,x} around the pair (u,v).
struct ButterflyLegs {
  std::uint32_t w = 0;
  std::uint32_t x = 0;
  std::array<EdgeId, 3> edges;  // (w,v), (u,x), (w,x)
};

struct Butterfly {
  std::uint32_t u0 = 0, u1 = 0;  // u0 < u1
  std::uint32_t v0 = 0, v1 = 0;  // v0 < v1
  std::array<EdgeId, 4> edges;   // (u0,v0), (u0,v1), (u1,v0), (u1,v1)
  friend auto operator<=>(const Butterfly& a, const Butterfly& b) {
    return std::tie(a.u0, a.u1, a.v0, a.v1) <=> std::tie(b.u0, b.u1, b.v0, b.v1);
  }
  friend bool operator==(const Butterfly& a, const Butterfly& b) {
    return std::tie(a.u0, a.u1, a.v0, a.v1) == std::tie(b.u0, b.u1, b.v0, b.v1);
  }
};

// Visits every butterfly that would contain the pair (u,v), whether or not
// (u,v) is currently an edge.
template <class F>
void for_each_butterfly_through(const BipartiteGraph& g, std::uint32_t u, std::uint32_t v, F&& f) {
  const auto au = g.u_adj(u);
  for (const Incidence& wv : g.v_adj(v)) {
    const std::uint32_t w = wv.neighbor;
    if (w == u) continue;
    const auto aw = g.u_adj(w);
    auto i = au.begin();
    auto j = aw.begin();
    while (i != au.end() && j != aw.end()) {
      if (i->neighbor < j->neighbor) {
        ++i;
      } else if (j->neighbor < i->neighbor) {
        ++j;
      } else {
        if (i->neighbor != v) f(ButterflyLegs{w, i->neighbor, {wv.edge, i->edge, j->edge}});
        ++i;
        ++j;
      }
    }
  }
}

template <class F>
void for_each_butterfly(const BipartiteGraph& g, EdgeId e, F&& f) {
  const EdgeKey k = g.endpoints(e);
  for_each_butterfly_through(g, k.u, k.v, std::forward<F>(f));
}

std::uint64_t butterfly_support(const BipartiteGraph& g, EdgeId e);
// Sorted by vertex quadruple.
std::vector<Butterfly> butterflies_containing(const BipartiteGraph& g, EdgeId e);

}  // namespace equiwing
