#pragma once

#include <string>
#include <utility>
#include <vector>

#include "equiwing/equiwing.hpp"

namespace fixtures {

// The 25-edge running example: v1..v8 on the U side, u1..u7 on the V side.
extern const char* const kFig2;

equiwing::BipartiteGraph fig2();
std::string data_path(const std::string& name);

equiwing::EdgeKey key(const equiwing::BipartiteGraph& g, const std::string& u, const std::string& v);
equiwing::EdgeId edge(const equiwing::BipartiteGraph& g, const std::string& u, const std::string& v);
equiwing::VertexId vertex(const equiwing::BipartiteGraph& g, const std::string& label);
std::vector<equiwing::EdgeKey> keys(const equiwing::BipartiteGraph& g,
                                    const std::vector<std::pair<std::string, std::string>>& labels);

// Node holding the given edge; fails the test if absent.
equiwing::SnId node_of(const equiwing::SuperGraph& sg, const equiwing::BipartiteGraph& g, const std::string& u,
                       const std::string& v);

}  // namespace fixtures
