#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "pasgal/graph.hpp"
#include "pasgal/parallel.hpp"
#include "pasgal/types.hpp"

namespace pasgal {

/// Hop distances from `source`; kUnreached<V> for unreachable vertices.
template <VertexIdType V>
struct DistanceArray {
  V source{};
  std::vector<V> dist;

  friend bool operator==(const DistanceArray&, const DistanceArray&) = default;
};

/// Shortest-path distances from `source`; kInfDistance when unreachable.
struct WeightedDistanceArray {
  std::uint64_t source = 0;
  std::vector<double> dist;

  friend bool operator==(const WeightedDistanceArray&, const WeightedDistanceArray&) = default;
};

/// Per-vertex component ids. label[u] == label[v] iff u and v are mutually
/// reachable. Ids are vertex ids of a component member.
template <VertexIdType V>
struct SccLabels {
  std::vector<V> label;
  std::size_t num_components = 0;
};

/// Biconnected components of a simple undirected graph, stored in O(n).
///
/// Relative to a rooted spanning forest with preorder ranks `order`, every
/// non-root vertex v owns the tree edge (parent, v) and `vertex_label[v]` is
/// that edge's component. Any edge (u, w) lies in the component of whichever
/// endpoint has the larger rank, so per-edge labels are recovered in O(1).
/// Roots and isolated vertices carry kNoLabel.
template <VertexIdType V>
struct BccLabels {
  static constexpr std::uint64_t kNoLabel = ~std::uint64_t{0};

  std::vector<std::uint64_t> vertex_label;
  std::vector<V> order;
  std::vector<std::uint8_t> articulation;
  std::size_t num_components = 0;

  std::uint64_t edge_label(V u, V w) const { return vertex_label[order[u] > order[w] ? u : w]; }

  /// Label of every CSR slot of `g` (both orientations of an edge agree).
  std::vector<std::uint64_t> edge_labels(const Graph<V>& g) const {
    std::vector<std::uint64_t> out(g.num_edges());
    parallel_for(0, g.num_vertices(), [&](std::size_t u) {
      V uv = static_cast<V>(u);
      for (EdgeId e = g.begin_edge(uv); e < g.end_edge(uv); ++e) out[e] = edge_label(uv, g.target(e));
    });
    return out;
  }

  std::size_t num_articulation_points() const {
    std::size_t k = 0;
    for (auto a : articulation) k += a;
    return k;
  }
};

}  // namespace pasgal
