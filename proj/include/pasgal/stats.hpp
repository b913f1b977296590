#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "pasgal/graph.hpp"
#include "pasgal/oracles.hpp"
#include "pasgal/parallel.hpp"
#include "pasgal/random.hpp"

namespace pasgal {

struct GraphStats {
  std::size_t n = 0;
  std::size_t m = 0;
  std::uint64_t diameter_lower_bound = 0;
  std::size_t sample_count = 0;
};

/// Source of the i-th diameter sample. A pure function of (seed, i), so a run
/// with more samples extends the source sequence of a run with fewer.
inline std::uint64_t diameter_sample_source(std::uint64_t seed, std::size_t i, std::size_t n) {
  return hash_combine(seed, i) % n;
}

/// Max eccentricity over `samples` BFS searches from pseudo-random sources.
/// Searches run in parallel; the result does not depend on the schedule.
template <VertexIdType V>
GraphStats estimate_diameter(const Graph<V>& g, std::size_t samples, std::uint64_t seed) {
  if (samples == 0) throw std::invalid_argument("estimate_diameter needs samples >= 1");
  GraphStats stats{g.num_vertices(), g.num_edges(), 0, samples};
  std::size_t n = g.num_vertices();
  if (n == 0) return stats;
  stats.diameter_lower_bound = parallel_reduce<std::uint64_t>(
      0, samples, 0,
      [&](std::size_t i) -> std::uint64_t {
        auto source = static_cast<V>(diameter_sample_source(seed, i, n));
        auto bfs = seq::bfs_queue(g, source);
        std::uint64_t ecc = 0;
        for (V d : bfs.dist)
          if (d != kUnreached<V>) ecc = std::max<std::uint64_t>(ecc, d);
        return ecc;
      },
      [](std::uint64_t a, std::uint64_t b) { return std::max(a, b); });
  return stats;
}

}  // namespace pasgal
