#include "fixtures.hpp"

#include <sstream>
#include <stdexcept>

namespace fixtures {

const char* const kFig2 =
    "v1 u1\nv1 u2\nv2 u1\nv2 u2\nv2 u3\nv2 u4\nv3 u4\nv3 u2\nv3 u3\nv4 u4\nv4 u3\nv5 u3\nv5 u4\n"
    "v5 u5\nv5 u6\nv6 u5\nv6 u6\nv6 u7\nv6 u4\nv7 u5\nv7 u6\nv7 u7\nv8 u5\nv8 u6\nv8 u7\n";

equiwing::BipartiteGraph fig2() {
  std::istringstream in(kFig2);
  return equiwing::load_edge_list(in);
}

std::string data_path(const std::string& name) { return std::string(EQUIWING_DATA_DIR) + "/" + name; }

equiwing::EdgeKey key(const equiwing::BipartiteGraph& g, const std::string& u, const std::string& v) {
  auto a = g.find_vertex(equiwing::Side::U, u);
  auto b = g.find_vertex(equiwing::Side::V, v);
  if (!a || !b) throw std::runtime_error("fixture vertex missing: " + u + " " + v);
  return {a->ordinal, b->ordinal};
}

equiwing::EdgeId edge(const equiwing::BipartiteGraph& g, const std::string& u, const std::string& v) {
  auto e = g.find_edge(u, v);
  if (!e) throw std::runtime_error("fixture edge missing: " + u + " " + v);
  return *e;
}

equiwing::VertexId vertex(const equiwing::BipartiteGraph& g, const std::string& label) {
  if (auto a = g.find_vertex(equiwing::Side::U, label)) return *a;
  if (auto b = g.find_vertex(equiwing::Side::V, label)) return *b;
  throw std::runtime_error("fixture vertex missing: " + label);
}

std::vector<equiwing::EdgeKey> keys(const equiwing::BipartiteGraph& g,
                                    const std::vector<std::pair<std::string, std::string>>& labels) {
  std::vector<equiwing::EdgeKey> out;
  for (const auto& [u, v] : labels) out.push_back(key(g, u, v));
  std::sort(out.begin(), out.end());
  return out;
}

equiwing::SnId node_of(const equiwing::SuperGraph& sg, const equiwing::BipartiteGraph& g, const std::string& u,
                       const std::string& v) {
  auto n = sg.node_of(key(g, u, v));
  if (!n) throw std::runtime_error("edge not indexed: " + u + " " + v);
  return *n;
}

}  // namespace fixtures
