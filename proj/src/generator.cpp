#include "equiwing/generator.hpp"

#include <cmath>
#include <numeric>
#include <random>
#include <string>

#include "equiwing/errors.hpp"

namespace equiwing {

namespace {

// 53-bit uniform in [0,1); avoids the library distributions so output is the
// same on every standard library.
double unit(std::mt19937_64& rng) { return double(rng() >> 11) * 0x1.0p-53; }

std::uint32_t below(std::mt19937_64& rng, std::uint32_t n) { return std::uint32_t(unit(rng) * n); }

}  // namespace

BipartiteGraph generate_bipartite(const GeneratorParams& p) {
  if (p.edge_probability < 0 || p.edge_probability > 1 || p.block_density < 0 || p.block_density > 1)
    throw InvalidArgumentError("probabilities must lie in [0,1]");
  if (p.blocks > 0 && (p.block_u > p.u_count || p.block_v > p.v_count))
    throw InvalidArgumentError("block larger than its side");

  std::mt19937_64 rng(p.seed);
  BipartiteGraph g;
  for (std::uint32_t i = 0; i < p.u_count; ++i) g.add_vertex(Side::U, "u" + std::to_string(i));
  for (std::uint32_t j = 0; j < p.v_count; ++j) g.add_vertex(Side::V, "v" + std::to_string(j));

  if (p.edge_probability > 0) {
    const std::uint64_t total = std::uint64_t(p.u_count) * p.v_count;
    const double log_q = std::log1p(-p.edge_probability);
    // Geometric skips over the row-major pair sequence.
    std::uint64_t pos = 0;
    while (true) {
      if (p.edge_probability < 1) {
        const double r = unit(rng);
        pos += std::uint64_t(std::floor(std::log1p(-r) / log_q));
      }
      if (pos >= total) break;
      g.insert_edge(std::uint32_t(pos / p.v_count), std::uint32_t(pos % p.v_count));
      ++pos;
    }
  }

  auto pick = [&](std::uint32_t n, std::uint32_t k) {
    std::vector<std::uint32_t> all(n);
    std::iota(all.begin(), all.end(), 0u);
    for (std::uint32_t i = 0; i < k; ++i) std::swap(all[i], all[i + below(rng, n - i)]);
    all.resize(k);
    return all;
  };
  for (std::uint32_t b = 0; b < p.blocks; ++b) {
    const auto us = pick(p.u_count, p.block_u);
    const auto vs = pick(p.v_count, p.block_v);
    for (std::uint32_t u : us)
      for (std::uint32_t v : vs)
        if (unit(rng) < p.block_density) g.insert_edge(u, v);
  }
  return g;
}

}  // namespace equiwing
