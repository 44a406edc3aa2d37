#include "equiwing/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <ostream>
#include <random>

#include "equiwing/baseline.hpp"
#include "equiwing/equiwing_comp.hpp"
#include "equiwing/equiwing_index.hpp"
#include "equiwing/errors.hpp"

namespace equiwing {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

template <class F>
double mean_us(const std::vector<VertexId>& qs, F&& run) {
  if (qs.empty()) return 0;
  const auto t = Clock::now();
  for (const VertexId& q : qs) run(q);
  return seconds_since(t) * 1e6 / double(qs.size());
}

}  // namespace

BenchReport run_benchmark(const BipartiteGraph& g, const BenchConfig& config) {
  if (config.k < 1) throw InvalidArgumentError("k must be at least 1");
  if (config.buckets == 0) throw InvalidArgumentError("need at least one bucket");
  BenchReport rep;

  auto t = Clock::now();
  const WingLabeling lab = wing_decomposition(g);
  rep.decomposition_s = seconds_since(t);
  t = Clock::now();
  const EquiWingIndex ew = build_equiwing(g, lab);
  rep.build_equiwing_s = seconds_since(t);
  t = Clock::now();
  const EquiWingCompIndex comp = compress(ew);
  rep.build_comp_s = seconds_since(t);
  rep.equiwing_nodes = ew.node_count();
  rep.equiwing_super_edges = ew.super_edge_count();
  rep.comp_nodes = comp.node_count();
  rep.comp_super_edges = comp.super_edge_count();

  std::vector<VertexId> all;
  for (Side s : {Side::U, Side::V}) {
    const std::uint32_t n = s == Side::U ? g.u_count() : g.v_count();
    for (std::uint32_t i = 0; i < n; ++i)
      if (g.degree({s, i}) > 0) all.push_back({s, i});
  }
  std::stable_sort(all.begin(), all.end(),
                   [&](const VertexId& a, const VertexId& b) { return g.degree(a) > g.degree(b); });

  std::mt19937_64 rng(config.seed);
  const std::size_t nb = std::min(config.buckets, std::max<std::size_t>(all.size(), 1));
  for (std::size_t b = 0; b < nb; ++b) {
    const std::size_t lo = all.size() * b / nb, hi = all.size() * (b + 1) / nb;
    std::vector<VertexId> members(all.begin() + lo, all.begin() + hi);
    std::shuffle(members.begin(), members.end(), rng);
    if (members.size() > config.queries_per_bucket) members.resize(config.queries_per_bucket);

    BenchRow row;
    row.bucket = b;
    row.queries = members.size();
    if (hi > lo) {
      row.max_degree = g.degree(all[lo]);
      row.min_degree = g.degree(all[hi - 1]);
    }
    std::size_t sink = 0;
    row.equiwing_us = mean_us(members, [&](VertexId q) { sink += query_equiwing(ew, q, config.k).edge_total(); });
    row.result_edges = sink;
    row.comp_us = mean_us(members, [&](VertexId q) { sink += query_comp(comp, q, config.k).edge_total(); });
    if (config.run_baseline)
      row.baseline_us = mean_us(members, [&](VertexId q) { sink += baseline_search(g, lab, q, config.k).edge_total(); });
    for (const VertexId& q : members) {
      const WingResult a = query_equiwing(ew, q, config.k);
      if (!(a == query_comp(comp, q, config.k)) ||
          (config.run_baseline && !(a == baseline_search(g, lab, q, config.k))))
        ++rep.mismatches;
    }
    rep.rows.push_back(row);
  }
  return rep;
}

void print_benchmark(std::ostream& out, const BenchReport& r) {
  char buf[256];
  std::snprintf(buf, sizeof buf, "decomposition_s %.4f\nbuild_equiwing_s %.4f\nbuild_comp_s %.4f\n", r.decomposition_s,
                r.build_equiwing_s, r.build_comp_s);
  out << buf;
  out << "equiwing_nodes " << r.equiwing_nodes << " super_edges " << r.equiwing_super_edges << '\n';
  out << "comp_nodes " << r.comp_nodes << " super_edges " << r.comp_super_edges << '\n';
  out << "bucket\tqueries\tdeg_max\tdeg_min\tbaseline_us\tequiwing_us\tcomp_us\tresult_edges\n";
  for (const BenchRow& row : r.rows) {
    std::snprintf(buf, sizeof buf, "%zu\t%zu\t%zu\t%zu\t%.2f\t%.2f\t%.2f\t%zu\n", row.bucket, row.queries,
                  row.max_degree, row.min_degree, row.baseline_us, row.equiwing_us, row.comp_us, row.result_edges);
    out << buf;
  }
  out << "mismatches " << r.mismatches << '\n';
}

}  // namespace equiwing
