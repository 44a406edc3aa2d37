#include <doctest.h>

#include "fixtures.hpp"
#include "mutation_check.hpp"
#include "oracle.hpp"
#include "random_graphs.hpp"

using namespace equiwing;

namespace {

std::multiset<WingNumber> levels(const SuperGraph& sg) {
  std::multiset<WingNumber> out;
  for (SnId id : sg.node_ids()) out.insert(sg.k_of(id));
  return out;
}

}  // namespace

TEST_CASE("delta for (v4,u6) on the running example") {
  BipartiteGraph g = fixtures::fig2();
  const EdgeKey k = {g.find_vertex(Side::U, "v4")->ordinal, g.find_vertex(Side::V, "u6")->ordinal};
  const WingNumber d = compute_delta(g, k.u, k.v);
  CHECK(d == oracle::delta(oracle::edges_of(g), k));
  CHECK(d == 2);
  CHECK_THROWS_AS(compute_delta(g, 0, 0), InvalidArgumentError);
}

TEST_CASE("delta is 0 without new butterflies and 1 when exactly one closes") {
  BipartiteGraph g;
  g.insert_edge("a", "x");
  g.insert_edge("a", "y");
  g.insert_edge("b", "x");
  g.add_vertex(Side::U, "c");
  CHECK(compute_delta(g, 2, 0) == 0);
  CHECK(compute_delta(g, 1, 1) == 1);
}

TEST_CASE("delta equals the brute-force support gain on random graphs") {
  std::mt19937_64 rng(53);
  for (int round = 0; round < 200; ++round) {
    BipartiteGraph g = fixtures::random_graph(rng, 8, 8, 30);
    const std::uint32_t u = std::uint32_t(rng() % g.u_count()), v = std::uint32_t(rng() % g.v_count());
    if (g.find_edge(u, v)) continue;
    CHECK(compute_delta(g, u, v) == oracle::delta(oracle::edges_of(g), {u, v}));
  }
}

TEST_CASE("k-level butterfly counts") {
  BipartiteGraph g = fixtures::fig2();
  WingLabeling lab = wing_decomposition(g);
  const EdgeId e = fixtures::edge(g, "v7", "u6");
  CHECK(k_level_butterfly_count(g, lab, e, 4) == 4);
  for (EdgeId f : g.edge_ids()) {
    CHECK(k_level_butterfly_count(g, lab, f, 0) == butterfly_support(g, f));
    CHECK(k_level_butterfly_count(g, lab, f, -3) == butterfly_support(g, f));
  }
  CHECK_THROWS_AS(k_level_butterfly_count(g, lab, EdgeId{999}, 1), NotFoundError);
  // A pair that is not an edge yet.
  const auto v4 = g.find_vertex(Side::U, "v4")->ordinal, u6 = g.find_vertex(Side::V, "u6")->ordinal;
  CHECK(k_level_butterfly_count(g, lab, v4, u6, 1) == 3);
  CHECK(k_level_butterfly_count(g, lab, v4, u6, 3) == 2);
  CHECK(k_level_butterfly_count(g, lab, v4, u6, 4) == 0);
}

TEST_CASE("inserting (v4,u6) into the running example") {
  BipartiteGraph g = fixtures::fig2();
  WingLabeling lab = wing_decomposition(g);
  EquiWingIndex idx = build_equiwing(g, lab);
  const SnId n3 = fixtures::node_of(idx, g, "v6", "u4");
  const SnId n4 = fixtures::node_of(idx, g, "v2", "u3");
  const SnId n5 = fixtures::node_of(idx, g, "v5", "u5");

  const auto v4 = g.find_vertex(Side::U, "v4")->ordinal, u6 = g.find_vertex(Side::V, "u6")->ordinal;
  const WingNumber delta = compute_delta(g, v4, u6);
  const EdgeId ep = g.insert_edge(v4, u6).edge;
  lab.ensure_capacity(g.edge_capacity());
  CHECK(butterfly_support(g, ep) == 3);
  // Three butterflies can never support a level of 4: the formula gives 3,
  // and only the looser l + delta form reaches 4.
  CHECK(wing_upper_bound(g, lab, ep, delta) == 3);
  CHECK(wing_upper_bound(g, lab, ep) == 3);
  CHECK(loose_wing_upper_bound(g, lab, ep, delta) == 4);

  UpdateScope scope = affected_edges(g, lab, idx, {MutationKind::insert, ep, delta});
  CHECK(scope.upper_bound == 3);
  CHECK(scope.affected_nodes == std::vector<SnId>{n3, n4, n5});

  ApplyReport rep = apply_update(g, lab, idx, scope);
  CHECK_FALSE(rep.fell_back);
  CHECK(lab[ep] == 3);
  CHECK(lab[fixtures::edge(g, "v6", "u4")] == 3);
  CHECK(idx.node_count() == 4);
  CHECK(levels(idx) == std::multiset<WingNumber>{1, 2, 3, 4});
  // Path shaped: three edges, each node linked to its level neighbours.
  CHECK(idx.super_edge_count() == 3);
  for (auto [a, b] : idx.super_edges()) CHECK(std::max(idx.k_of(a), idx.k_of(b)) - std::min(idx.k_of(a), idx.k_of(b)) == 1);
  CHECK(idx.node(fixtures::node_of(idx, g, "v4", "u6")).members.size() == 12);
  WingLabeling truth = wing_decomposition(g);
  CHECK(oracle::structure_of(idx) == oracle::structure_of(build_equiwing(g, truth)));
}

TEST_CASE("deleting (v7,u6) touches the top block and its lower neighbours") {
  BipartiteGraph g = fixtures::fig2();
  WingLabeling lab = wing_decomposition(g);
  EquiWingIndex idx = build_equiwing(g, lab);
  const SnId n3 = fixtures::node_of(idx, g, "v6", "u4");
  const SnId n5 = fixtures::node_of(idx, g, "v5", "u5");
  const SnId n6 = fixtures::node_of(idx, g, "v7", "u6");
  const EdgeId ep = fixtures::edge(g, "v7", "u6");
  UpdateScope scope = affected_edges(g, lab, idx, {MutationKind::remove, ep, 0});
  CHECK(scope.upper_bound == 4);
  CHECK(scope.affected_nodes == std::vector<SnId>{n3, n5, n6});
  for (EdgeId e : scope.affected_edges) CHECK(lab[e] <= 4);
  ApplyReport rep = apply_update(g, lab, idx, scope);
  CHECK_FALSE(rep.fell_back);
  CHECK_FALSE(g.contains(ep));
  WingLabeling truth = wing_decomposition(g);
  for (EdgeId e : g.edge_ids()) CHECK(lab[e] == truth[e]);
  CHECK(oracle::structure_of(idx) == oracle::structure_of(build_equiwing(g, truth)));
}

TEST_CASE("an insertion that closes no butterfly leaves the index alone") {
  BipartiteGraph g = fixtures::fig2();
  DynamicIndex dyn(g, true);
  const auto before = oracle::structure_of(dyn.index());
  const auto comp_before = oracle::structure_of(*dyn.comp());
  auto out = dyn.insert_edge("v9", "u1");
  CHECK(out.applied);
  CHECK(out.scope.delta == 0);
  CHECK(out.scope.upper_bound == 0);
  CHECK(out.scope.affected_edges == std::vector<EdgeId>{out.scope.edge});
  CHECK(out.scope.affected_nodes.empty());
  CHECK(dyn.labeling()[out.scope.edge] == 0);
  CHECK(oracle::structure_of(dyn.index()) == before);
  CHECK(oracle::structure_of(*dyn.comp()) == comp_before);
}

TEST_CASE("existing-edge insertion is a no-op and missing-edge deletion is an error") {
  DynamicIndex dyn(fixtures::fig2());
  CHECK_FALSE(dyn.insert_edge("v1", "u1").applied);
  CHECK_THROWS_AS(dyn.delete_edge("v1", "u7"), NotFoundError);
  CHECK_THROWS_AS(dyn.delete_edge("nobody", "u7"), NotFoundError);
  CHECK(dyn.graph().edge_count() == 25);
}

TEST_CASE("inserting and deleting an edge restores the earlier index") {
  DynamicIndex dyn(fixtures::fig2(), true);
  const auto ew = oracle::structure_of(dyn.index());
  const auto comp = oracle::structure_of(*dyn.comp());
  dyn.insert_edge("v4", "u6");
  dyn.delete_edge("v4", "u6");
  CHECK(oracle::structure_of(dyn.index()) == ew);
  CHECK(oracle::structure_of(*dyn.comp()) == comp);
  CHECK(dyn.fallbacks() == 0);
}

TEST_CASE("a deletion that empties the graph") {
  BipartiteGraph g;
  for (auto [u, v] : {std::pair{"a", "x"}, {"a", "y"}, {"b", "x"}, {"b", "y"}}) g.insert_edge(u, v);
  DynamicIndex dyn(g, true);
  CHECK(dyn.index().node_count() == 1);
  dyn.delete_edge("a", "x");
  CHECK(dyn.index().node_count() == 0);
  CHECK(dyn.comp()->node_count() == 0);
  dyn.delete_edge("a", "y");
  dyn.delete_edge("b", "x");
  dyn.delete_edge("b", "y");
  CHECK(dyn.graph().edge_count() == 0);
  CHECK(dyn.fallbacks() == 0);
}

TEST_CASE("random single insertions never exceed the upper bound") {
  std::mt19937_64 rng(59);
  int done = 0;
  while (done < 300) {
    BipartiteGraph g = fixtures::random_graph(rng, 8, 8, 32);
    const std::uint32_t u = std::uint32_t(rng() % g.u_count()), v = std::uint32_t(rng() % g.v_count());
    if (g.find_edge(u, v)) continue;
    WingLabeling lab = wing_decomposition(g);
    const WingNumber delta = compute_delta(g, u, v);
    const EdgeId ep = g.insert_edge(u, v).edge;
    lab.ensure_capacity(g.edge_capacity());
    const WingNumber ub = wing_upper_bound(g, lab, ep, delta);
    const WingNumber truth = wing_decomposition(g)[ep];
    CHECK(truth <= ub);
    CHECK(ub <= loose_wing_upper_bound(g, lab, ep, delta));
    ++done;
  }
}

TEST_CASE("maintenance matches rebuilds over random mutation sequences") {
  fixtures::SequenceConfig cfg;
  cfg.u_count = 8;
  cfg.v_count = 8;
  cfg.initial_edges = 28;
  cfg.length = 60;
  fixtures::SequenceTally total;
  for (std::uint64_t seed = 1; seed <= 25; ++seed) total.add(fixtures::run_mutation_sequence(seed, cfg));
  for (const auto& f : total.first_failures) MESSAGE(f);
  CHECK(total.failures() == 0);
  CHECK(total.inserts > 0);
  CHECK(total.deletes > 0);
}

TEST_CASE("maintenance on denser graphs with higher wing numbers") {
  fixtures::SequenceConfig cfg;
  cfg.u_count = 7;
  cfg.v_count = 7;
  cfg.initial_edges = 45;
  cfg.length = 50;
  fixtures::SequenceTally total;
  for (std::uint64_t seed = 100; seed < 110; ++seed) total.add(fixtures::run_mutation_sequence(seed, cfg));
  for (const auto& f : total.first_failures) MESSAGE(f);
  CHECK(total.failures() == 0);
}
