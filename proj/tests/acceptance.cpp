// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <algorithm>
#include <cmath>
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include <equiwing/bench.hpp>

#include "fixtures.hpp"
#include "mutation_check.hpp"
#include "oracle.hpp"
#include "random_graphs.hpp"

using namespace equiwing;

namespace {

// Wall-clock ceilings per criterion, in seconds.
constexpr double kFixtureLimit = 1.0;
constexpr double kOracleSweepLimit = 120.0;
constexpr double kDynamicSweepLimit = 300.0;
constexpr double kPerformanceLimit = 600.0;

constexpr int kOracleGraphs = 200;
constexpr int kMaxSideVertices = 12;
constexpr int kMaxEdges = 60;
constexpr int kSequences = 100;
constexpr int kSequenceLength = 200;
constexpr int kRoundTripIndices = 20;

struct Outcome {
  bool pass = true;
  std::string detail;

  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
  void expect(bool ok, const std::string& why) {
    if (!ok) fail(why);
  }
};

using Clock = std::chrono::steady_clock;

int failures = 0;

void criterion(int n, const char* title, double limit, const std::function<Outcome()>& body) {
  const auto t = Clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o.fail(std::string("exception: ") + e.what());
  }
  const double s = std::chrono::duration<double>(Clock::now() - t).count();
  if (s > limit) o.fail("took " + std::to_string(s) + " s, limit " + std::to_string(limit) + " s");
  if (!o.pass) ++failures;
  std::printf("%s  %2d  %-44s %8.2f s  %s\n", o.pass ? "PASS" : "FAIL", n, title, s, o.detail.c_str());
  std::fflush(stdout);
}

std::string str(std::size_t x) { return std::to_string(x); }

Outcome fig2_decomposition() {
  Outcome o;
  const BipartiteGraph g = fixtures::fig2();
  const WingLabeling lab = wing_decomposition(g);
  const std::vector<std::tuple<const char*, const char*, WingNumber>> table = {
      {"v1", "u1", 1}, {"v1", "u2", 1}, {"v2", "u1", 1}, {"v2", "u2", 2}, {"v3", "u2", 2},
      {"v6", "u4", 2}, {"v2", "u3", 3}, {"v2", "u4", 3}, {"v3", "u3", 3}, {"v3", "u4", 3},
      {"v4", "u3", 3}, {"v4", "u4", 3}, {"v5", "u3", 3}, {"v5", "u4", 3}, {"v5", "u5", 3},
      {"v5", "u6", 3}, {"v6", "u5", 4}, {"v6", "u6", 4}, {"v6", "u7", 4}, {"v7", "u5", 4},
      {"v7", "u6", 4}, {"v7", "u7", 4}, {"v8", "u5", 4}, {"v8", "u6", 4}, {"v8", "u7", 4}};
  o.expect(g.edge_count() == table.size(), "fixture has " + str(g.edge_count()) + " edges");
  std::size_t right = 0;
  for (const auto& [u, v, k] : table)
    if (lab[fixtures::edge(g, u, v)] == k) ++right;
  o.expect(right == table.size(), str(right) + "/25 wing numbers match");
  if (o.pass) o.detail = "25/25 wing numbers match";
  return o;
}

Outcome fig3_index() {
  Outcome o;
  const BipartiteGraph g = fixtures::fig2();
  const EquiWingIndex idx = build_equiwing(g, wing_decomposition(g));
  std::multiset<std::size_t> sizes;
  std::multiset<WingNumber> ks;
  for (SnId id : idx.node_ids()) {
    sizes.insert(idx.node(id).members.size());
    ks.insert(idx.k_of(id));
  }
  o.expect(idx.node_count() == 6, str(idx.node_count()) + " nodes");
  o.expect(sizes == std::multiset<std::size_t>{3, 2, 1, 8, 2, 9}, "member sizes differ");
  o.expect(ks == std::multiset<WingNumber>{1, 2, 2, 3, 3, 4}, "wing numbers differ");

  auto n = [&](const char* u, const char* v) { return fixtures::node_of(idx, g, u, v); };
  const SnId n1 = n("v1", "u1"), n2 = n("v2", "u2"), n3 = n("v6", "u4"), n4 = n("v2", "u3"), n5 = n("v5", "u5"),
             n6 = n("v7", "u7");
  auto pair = [](SnId a, SnId b) { return std::pair{std::min(a, b), std::max(a, b)}; };
  std::vector<std::pair<SnId, SnId>> expected{pair(n1, n2), pair(n2, n4), pair(n3, n4),
                                              pair(n3, n5), pair(n3, n6), pair(n5, n6)};
  std::sort(expected.begin(), expected.end());
  o.expect(idx.super_edges() == expected, "super edges differ (" + str(idx.super_edge_count()) + " present)");
  if (o.pass) o.detail = "6 nodes, sizes {3,2,1,8,2,9}, psi {1,2,2,3,3,4}, 6 super edges";
  return o;
}

Outcome fig5_comp() {
  Outcome o;
  const BipartiteGraph g = fixtures::fig2();
  const EquiWingIndex ew = build_equiwing(g, wing_decomposition(g));
  const EquiWingCompIndex comp = compress(ew);
  o.expect(comp.node_count() == 5, str(comp.node_count()) + " nodes");
  o.expect(comp.super_edge_count() == 5, str(comp.super_edge_count()) + " super edges");
  const SnId merged = fixtures::node_of(comp, g, "v6", "u4");
  o.expect(comp.k_of(merged) == 2, "merged node not at level 2");
  o.expect(comp.node(merged).members == fixtures::keys(g, {{"v2", "u2"}, {"v3", "u2"}, {"v6", "u4"}}),
           "psi=2 node members differ");
  const double cr = compression_ratio(ew, comp);
  o.expect(std::abs(cr - 1.2) < 1e-12, "compression ratio " + std::to_string(cr));
  if (o.pass) o.detail = "5 nodes, 5 super edges, C_R 1.2";
  return o;
}

std::set<std::vector<EdgeKey>> as_set(const std::vector<std::vector<EdgeKey>>& wings) {
  std::set<std::vector<EdgeKey>> out;
  for (auto w : wings) {
    std::sort(w.begin(), w.end());
    out.insert(std::move(w));
  }
  return out;
}

Outcome fig4_query() {
  Outcome o;
  const BipartiteGraph g = fixtures::fig2();
  const WingLabeling lab = wing_decomposition(g);
  const EquiWingIndex ew = build_equiwing(g, lab);
  const EquiWingCompIndex comp = compress(ew);
  const VertexId v5 = fixtures::vertex(g, "v5");
  const std::set<std::vector<EdgeKey>> expected = as_set({
      fixtures::keys(g, {{"v5", "u5"}, {"v6", "u5"}, {"v7", "u5"}, {"v8", "u5"}, {"v5", "u6"}, {"v6", "u6"},
                         {"v7", "u6"}, {"v8", "u6"}, {"v6", "u7"}, {"v7", "u7"}, {"v8", "u7"}}),
      fixtures::keys(g, {{"v2", "u3"}, {"v2", "u4"}, {"v3", "u3"}, {"v3", "u4"}, {"v4", "u3"}, {"v4", "u4"},
                         {"v5", "u3"}, {"v5", "u4"}}),
  });
  o.expect(as_set(baseline_search(g, lab, v5, 3).wings) == expected, "baseline differs");
  o.expect(as_set(query_equiwing(ew, v5, 3).wings) == expected, "EquiWing differs");
  o.expect(as_set(query_comp(comp, v5, 3).wings) == expected, "EquiWing-Comp differs");
  o.expect(as_set(query_comp(comp, v5, 3, nullptr, SeedMode::seed_table).wings) == expected,
           "EquiWing-Comp (seed table) differs");
  if (o.pass) o.detail = "wings of 11 and 8 edges from all engines";
  return o;
}

struct SweepCounters {
  std::size_t graphs = 0, queries = 0, engine_mismatch = 0, psi_mismatch = 0;
  std::size_t low_node_visits = 0, emit_mismatch = 0, duplicate_edges = 0;
};

void check_counters(const WingResult& r, const QueryStats& st, WingNumber k, SweepCounters& c) {
  if (st.nodes_visited > 0 && st.min_visited_k < k) ++c.low_node_visits;
  if (st.edges_emitted != r.edge_total()) ++c.emit_mismatch;
  std::vector<EdgeKey> all;
  for (const auto& w : r.wings) all.insert(all.end(), w.begin(), w.end());
  std::sort(all.begin(), all.end());
  if (std::adjacent_find(all.begin(), all.end()) != all.end()) ++c.duplicate_edges;
}

// Shared by criteria 5 and 8.
SweepCounters oracle_sweep() {
  SweepCounters c;
  std::mt19937_64 rng(20240517);
  for (int i = 0; i < kOracleGraphs; ++i) {
    const int nu = 2 + int(rng() % (kMaxSideVertices - 1));
    const int nv = 2 + int(rng() % (kMaxSideVertices - 1));
    const int m = 4 + int(rng() % (kMaxEdges - 3));
    const BipartiteGraph g = fixtures::random_graph(rng, nu, nv, m);
    ++c.graphs;
    const WingLabeling lab = wing_decomposition(g);
    const EquiWingIndex ew = build_equiwing(g, lab);
    const EquiWingCompIndex comp = compress(ew);
    const auto s = oracle::edges_of(g);
    const auto psi = oracle::wing_numbers(s);
    WingNumber k_max = 0;
    for (const auto& [e, k] : psi) {
      k_max = std::max(k_max, k);
      if (lab[*g.find_edge(e.u, e.v)] != k) ++c.psi_mismatch;
    }
    for (Side side : {Side::U, Side::V}) {
      const std::uint32_t n = side == Side::U ? g.u_count() : g.v_count();
      for (std::uint32_t x = 0; x < n; ++x)
        for (WingNumber k = 1; k <= std::max<WingNumber>(k_max, 1); ++k) {
          const VertexId q{side, x};
          ++c.queries;
          const auto truth = oracle::k_wings(s, psi, q, k);
          QueryStats se, sc, st;
          const WingResult b = baseline_search(g, lab, q, k);
          const WingResult e = query_equiwing(ew, q, k, &se);
          const WingResult l = query_comp(comp, q, k, &sc);
          const WingResult t = query_comp(comp, q, k, &st, SeedMode::seed_table);
          if (b.wings != truth || e.wings != truth || l.wings != truth || t.wings != truth) ++c.engine_mismatch;
          check_counters(e, se, k, c);
          check_counters(l, sc, k, c);
          check_counters(t, st, k, c);
        }
    }
  }
  return c;
}

SweepCounters sweep;

Outcome oracle_equivalence() {
  Outcome o;
  sweep = oracle_sweep();
  o.expect(sweep.graphs >= 200, "only " + str(sweep.graphs) + " graphs");
  o.expect(sweep.psi_mismatch == 0, str(sweep.psi_mismatch) + " wing-number mismatches");
  o.expect(sweep.engine_mismatch == 0, str(sweep.engine_mismatch) + " (q,k) disagreements with the oracle");
  if (o.pass) o.detail = str(sweep.graphs) + " graphs, " + str(sweep.queries) + " (q,k) pairs, all engines exact";
  return o;
}

Outcome linear_access() {
  Outcome o;
  o.expect(sweep.queries > 0, "no queries recorded");
  o.expect(sweep.low_node_visits == 0, str(sweep.low_node_visits) + " queries visited a node below k");
  o.expect(sweep.emit_mismatch == 0, str(sweep.emit_mismatch) + " emit counts differ from result size");
  o.expect(sweep.duplicate_edges == 0, str(sweep.duplicate_edges) + " results repeat an edge");
  if (o.pass) o.detail = str(sweep.queries * 3) + " indexed queries, psi >= k only, each edge once";
  return o;
}

fixtures::SequenceTally dynamic_tally;

Outcome dynamic_soundness() {
  Outcome o;
  fixtures::SequenceConfig cfg;
  cfg.u_count = 10;
  cfg.v_count = 10;
  cfg.initial_edges = 40;
  cfg.length = kSequenceLength;
  fixtures::SequenceTally& t = dynamic_tally;
  for (int seed = 1; seed <= kSequences; ++seed) t.add(fixtures::run_mutation_sequence(std::uint64_t(seed), cfg));
  auto zero = [&](std::size_t x, const char* what) { o.expect(x == 0, str(x) + " " + what); };
  zero(t.psi_mismatch, "wing-number mismatches");
  zero(t.structure_mismatch + t.query_mismatch, "EquiWing mismatches against rebuilds");
  zero(t.comp_structure_mismatch + t.comp_query_mismatch, "EquiWing-Comp mismatches against rebuilds");
  zero(t.bound_violations, "upper-bound violations");
  zero(t.delta_violations, "increases above delta");
  zero(t.edge_scope_violations, "changed edges outside E'");
  zero(t.node_scope_violations, "changed nodes outside chi'");
  o.expect(t.inserts + t.deletes == std::size_t(kSequences) * kSequenceLength,
           str(t.inserts + t.deletes) + " mutations applied");
  if (!o.pass && !t.first_failures.empty()) o.detail += "; first: " + t.first_failures.front();
  if (o.pass)
    o.detail = str(kSequences) + " sequences, " + str(t.inserts) + " inserts, " + str(t.deletes) + " deletes, " +
               str(t.fallbacks) + " rebuild fallbacks";
  return o;
}

Outcome fig7_insertion() {
  Outcome o;
  BipartiteGraph g = fixtures::fig2();
  WingLabeling lab = wing_decomposition(g);
  EquiWingIndex idx = build_equiwing(g, lab);
  const std::vector<SnId> expected_nodes{fixtures::node_of(idx, g, "v6", "u4"), fixtures::node_of(idx, g, "v2", "u3"),
                                         fixtures::node_of(idx, g, "v5", "u5")};
  const auto u = g.find_vertex(Side::U, "v4")->ordinal, v = g.find_vertex(Side::V, "u6")->ordinal;
  const WingNumber delta = compute_delta(g, u, v);
  const EdgeId ep = g.insert_edge(u, v).edge;
  lab.ensure_capacity(g.edge_capacity());
  const UpdateScope scope = affected_edges(g, lab, idx, {MutationKind::insert, ep, delta});
  const std::size_t support = butterfly_support(g, ep);
  const WingNumber loose = loose_wing_upper_bound(g, lab, ep, delta);
  apply_update(g, lab, idx, scope);
  std::multiset<WingNumber> ks;
  for (SnId id : idx.node_ids()) ks.insert(idx.k_of(id));

  o.expect(scope.upper_bound == 4, "upper bound " + str(scope.upper_bound) + ", expected 4 (e' has " +
                                       str(support) + " butterflies, loose bound l+delta = " + str(loose) + ")");
  o.expect(scope.affected_nodes == expected_nodes, str(scope.affected_nodes.size()) + " affected nodes differ");
  o.expect(idx.node_count() == 4, str(idx.node_count()) + " nodes after insertion");
  o.expect(ks == std::multiset<WingNumber>{1, 2, 3, 4}, "node wing numbers differ");
  if (o.pass) o.detail = "bound 4, chi' {nu3,nu4,nu5}, 4 nodes psi {1,2,3,4}";
  return o;
}

Outcome directional_performance() {
  Outcome o;
  GeneratorParams p;
  p.u_count = 3000;
  p.v_count = 3000;
  p.edge_probability = 0.005;
  p.blocks = 20;
  p.block_u = 20;
  p.block_v = 20;
  p.block_density = 0.8;
  p.seed = 42;
  const BipartiteGraph g = generate_bipartite(p);
  BenchConfig cfg;
  const BenchReport r = run_benchmark(g, cfg);
  std::ostringstream table;
  print_benchmark(table, r);
  std::printf("      graph of %zu edges\n", g.edge_count());
  std::istringstream lines(table.str());
  for (std::string line; std::getline(lines, line);) std::printf("      %s\n", line.c_str());

  o.expect(g.edge_count() >= 45000 && g.edge_count() <= 55000, "graph has " + str(g.edge_count()) + " edges");
  o.expect(r.mismatches == 0, str(r.mismatches) + " engine disagreements");
  o.expect(r.comp_nodes <= r.equiwing_nodes, "comp has more nodes than EquiWing");
  o.expect(r.rows.size() == cfg.buckets, str(r.rows.size()) + " buckets");
  for (const BenchRow& row : r.rows) {
    o.expect(row.equiwing_us < row.baseline_us, "bucket " + str(row.bucket) + ": EquiWing not faster");
    o.expect(row.comp_us < row.baseline_us, "bucket " + str(row.bucket) + ": EquiWing-Comp not faster");
  }
  if (o.pass)
    o.detail = str(g.edge_count()) + " edges, indexed faster in all " + str(r.rows.size()) + " buckets, nodes " +
               str(r.comp_nodes) + " <= " + str(r.equiwing_nodes);
  return o;
}

template <class Index, class Read>
bool round_trips(const Index& idx, Read read) {
  std::ostringstream a;
  serialize(idx, a);
  std::istringstream in(a.str());
  const Index back = read(in);
  std::ostringstream b;
  serialize(back, b);
  return back == idx && a.str() == b.str();
}

Outcome round_trip() {
  Outcome o;
  std::size_t checked = 0;
  auto both = [&](const BipartiteGraph& g, const std::string& name) {
    const EquiWingIndex ew = build_equiwing(g, wing_decomposition(g));
    o.expect(round_trips(ew, deserialize_equiwing), name + ": EquiWing round trip differs");
    o.expect(round_trips(compress(ew), deserialize_comp), name + ": EquiWing-Comp round trip differs");
    checked += 2;
  };
  both(fixtures::fig2(), "fixture");
  both(BipartiteGraph{}, "empty graph");
  std::mt19937_64 rng(4711);
  for (int i = 0; i < kRoundTripIndices; ++i) both(fixtures::random_graph(rng, 10, 10, 55), "random " + str(i));
  if (o.pass) o.detail = str(checked) + " indices identical after a round trip";
  return o;
}

}  // namespace

int main() {
  criterion(1, "running example wing numbers", kFixtureLimit, fig2_decomposition);
  criterion(2, "running example EquiWing", kFixtureLimit, fig3_index);
  criterion(3, "running example EquiWing-Comp", kFixtureLimit, fig5_comp);
  criterion(4, "v5 at k=3 on every engine", kFixtureLimit, fig4_query);
  criterion(5, "oracle equivalence sweep", kOracleSweepLimit, oracle_equivalence);
  criterion(6, "dynamic soundness sweep", kDynamicSweepLimit, dynamic_soundness);
  criterion(7, "inserting (v4,u6)", kFixtureLimit, fig7_insertion);
  criterion(8, "queries touch only psi >= k nodes", kOracleSweepLimit, linear_access);
  criterion(9, "indexed beats baseline per degree decile", kPerformanceLimit, directional_performance);
  criterion(10, "serialization round trip", kFixtureLimit * 10, round_trip);
  std::printf("%d of 10 criteria failed\n", failures);
  if (dynamic_tally.deletes > 0)
    std::printf("note: %zu of %zu deletions changed a node beyond node(e') and its lower neighbours\n",
                dynamic_tally.narrow_delete_scope_misses, dynamic_tally.deletes);
  return failures == 0 ? 0 : 1;
}
