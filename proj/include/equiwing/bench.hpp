#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "equiwing/decomposition.hpp"
#include "equiwing/graph.hpp"

namespace equiwing {

struct BenchConfig {
  WingNumber k = 2;
  std::size_t buckets = 10;
  std::size_t queries_per_bucket = 100;
  std::uint64_t seed = 1;
  bool run_baseline = true;
};

struct BenchRow {
  std::size_t bucket = 0;  // 0 holds the highest-degree vertices
  std::size_t queries = 0;
  std::size_t min_degree = 0;
  std::size_t max_degree = 0;
  double baseline_us = 0;
  double equiwing_us = 0;
  double comp_us = 0;
  std::size_t result_edges = 0;
};

struct BenchReport {
  double decomposition_s = 0;
  double build_equiwing_s = 0;
  double build_comp_s = 0;
  std::size_t equiwing_nodes = 0;
  std::size_t equiwing_super_edges = 0;
  std::size_t comp_nodes = 0;
  std::size_t comp_super_edges = 0;
  std::vector<BenchRow> rows;
  // Queries whose engines disagreed; always expected to be zero.
  std::size_t mismatches = 0;
};

// Vertices of both sides are ranked by degree and cut into equal buckets;
// each bucket is queried with a seeded sample.
BenchReport run_benchmark(const BipartiteGraph& g, const BenchConfig& config);
void print_benchmark(std::ostream& out, const BenchReport& report);

}  // namespace equiwing
