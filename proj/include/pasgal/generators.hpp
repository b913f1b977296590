#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

#include "pasgal/graph.hpp"
#include "pasgal/graph_ops.hpp"
#include "pasgal/parallel.hpp"
#include "pasgal/random.hpp"

namespace pasgal {

/// rows x cols 4-neighbor lattice, every edge stored in both directions.
/// Vertex (r, c) has id r*cols + c. The lattice is deterministic; `seed` is
/// accepted for interface uniformity with the other generators.
template <VertexIdType V = std::uint32_t>
Graph<V> gen_grid(std::size_t rows, std::size_t cols, std::uint64_t seed = 0) {
  (void)seed;
  if (rows == 0 || cols == 0) throw std::invalid_argument("grid dimensions must be >= 1");
  if (rows > std::numeric_limits<std::size_t>::max() / cols)
    throw std::overflow_error("grid vertex count overflows");
  std::size_t n = rows * cols;
  if (n - 1 >= static_cast<std::size_t>(kNoVertex<V>))
    throw std::overflow_error("grid vertex count exceeds vertex id width");
  std::size_t m = 2 * (rows * (cols - 1) + cols * (rows - 1));
  std::vector<EdgeId> offsets(n + 1);
  std::vector<V> targets(m);
  // Rows before r contribute a closed-form number of edge slots: the first
  // and last rows have one vertical link per vertex, interior rows two.
  std::size_t horizontal = 2 * (cols - 1);
  parallel_for(0, rows, [&](std::size_t r) {
    EdgeId pos = r == 0 ? 0 : (horizontal + cols) + (r - 1) * (horizontal + 2 * cols);
    for (std::size_t c = 0; c < cols; ++c) {
      std::size_t v = r * cols + c;
      offsets[v] = pos;
      if (r > 0) targets[pos++] = static_cast<V>(v - cols);
      if (c > 0) targets[pos++] = static_cast<V>(v - 1);
      if (c + 1 < cols) targets[pos++] = static_cast<V>(v + 1);
      if (r + 1 < rows) targets[pos++] = static_cast<V>(v + cols);
    }
  });
  offsets[n] = m;
  return Graph<V>::from_csr_unchecked(std::move(offsets), std::move(targets), std::nullopt, true);
}

/// Erdős–Rényi-style random graph with expected degree `avg_degree`: draws
/// n*avg_degree (directed) or n*avg_degree/2 (undirected) uniform vertex
/// pairs, then drops self-loops and duplicates. Deterministic in `seed`.
template <VertexIdType V = std::uint32_t>
Graph<V> gen_random(std::size_t n, double avg_degree, std::uint64_t seed, bool directed = true) {
  if (n == 0) throw std::invalid_argument("gen_random needs n >= 1");
  if (!(avg_degree >= 0.0)) throw std::invalid_argument("avg_degree must be >= 0");
  double target = directed ? avg_degree * static_cast<double>(n) : avg_degree * static_cast<double>(n) / 2;
  auto draws = static_cast<std::size_t>(std::llround(target));
  std::vector<std::pair<V, V>> edges(draws);
  parallel_for(0, draws, [&](std::size_t k) {
    auto u = static_cast<V>(hash_combine(seed, 2 * k) % n);
    auto v = static_cast<V>(hash_combine(seed, 2 * k + 1) % n);
    edges[k] = {u, v};
  });
  std::erase_if(edges, [](const auto& e) { return e.first == e.second; });
  if (directed) return graph_from_edges<V>(n, std::move(edges), true, false);
  std::size_t half = edges.size();
  edges.resize(2 * half);
  parallel_for(0, half, [&](std::size_t k) { edges[half + k] = {edges[k].second, edges[k].first}; });
  return graph_from_edges<V>(n, std::move(edges), true, true);
}

/// Same topology with integer weights drawn uniformly from [lo, hi]. For
/// symmetric graphs both orientations of an edge get the same weight.
template <VertexIdType V>
Graph<V> with_random_weights(const Graph<V>& g, int lo, int hi, std::uint64_t seed) {
  std::size_t n = g.num_vertices();
  std::vector<Weight> w(g.num_edges());
  std::uint64_t span = static_cast<std::uint64_t>(hi - lo + 1);
  parallel_for(0, n, [&](std::size_t u) {
    for (EdgeId e = g.begin_edge(static_cast<V>(u)); e < g.end_edge(static_cast<V>(u)); ++e) {
      std::uint64_t a = u, b = g.target(e);
      if (g.symmetric() && a > b) std::swap(a, b);
      std::uint64_t h = hash_combine(hash_combine(seed, a), b);
      w[e] = static_cast<Weight>(lo + static_cast<int>(h % span));
    }
  });
  std::vector<EdgeId> off(g.offsets().begin(), g.offsets().end());
  std::vector<V> tgt(g.targets().begin(), g.targets().end());
  return Graph<V>::from_csr_unchecked(std::move(off), std::move(tgt), std::move(w), g.symmetric());
}

/// Copy of `g` with every edge weight set to `value`.
template <VertexIdType V>
Graph<V> with_uniform_weights(const Graph<V>& g, Weight value) {
  std::vector<EdgeId> off(g.offsets().begin(), g.offsets().end());
  std::vector<V> tgt(g.targets().begin(), g.targets().end());
  return Graph<V>::from_csr_unchecked(std::move(off), std::move(tgt),
                                      std::vector<Weight>(g.num_edges(), value), g.symmetric());
}

}  // namespace pasgal
