#pragma once

#include <algorithm>
#include <atomic>
#include <utility>
#include <vector>

#include "pasgal/graph.hpp"
#include "pasgal/parallel.hpp"

namespace pasgal {

namespace detail {

// Sorts every adjacency list in place (by target, then weight).
template <VertexIdType V>
void sort_lists(std::span<const EdgeId> offsets, std::vector<V>& targets,
                std::vector<Weight>* weights) {
  std::size_t n = offsets.size() - 1;
  parallel_for(0, n, [&](std::size_t v) {
    EdgeId lo = offsets[v], hi = offsets[v + 1];
    if (hi - lo < 2) return;
    if (!weights) {
      std::sort(targets.begin() + lo, targets.begin() + hi);
      return;
    }
    std::vector<std::pair<V, Weight>> tmp(hi - lo);
    for (EdgeId e = lo; e < hi; ++e) tmp[e - lo] = {targets[e], (*weights)[e]};
    std::sort(tmp.begin(), tmp.end());
    for (EdgeId e = lo; e < hi; ++e) std::tie(targets[e], (*weights)[e]) = tmp[e - lo];
  }, 64);
}

}  // namespace detail

/// Reversed-edge graph. Every adjacency list of the result is sorted by
/// target (then weight), so the output is independent of the schedule.
template <VertexIdType V>
Graph<V> transpose(const Graph<V>& g) {
  std::size_t n = g.num_vertices();
  std::size_t m = g.num_edges();
  std::vector<EdgeId> offsets(n + 1, 0);
  parallel_for(0, n, [&](std::size_t u) {
    for (V v : g.neighbors(static_cast<V>(u)))
      std::atomic_ref<EdgeId>(offsets[v]).fetch_add(1, std::memory_order_relaxed);
  });
  exclusive_scan_inplace(std::span<EdgeId>(offsets));
  std::vector<EdgeId> cursor(offsets.begin(), offsets.end() - 1);
  std::vector<V> targets(m);
  std::optional<std::vector<Weight>> weights;
  if (g.weighted()) weights.emplace(m);
  parallel_for(0, n, [&](std::size_t u) {
    for (EdgeId e = g.begin_edge(static_cast<V>(u)); e < g.end_edge(static_cast<V>(u)); ++e) {
      V v = g.target(e);
      EdgeId pos = std::atomic_ref<EdgeId>(cursor[v]).fetch_add(1, std::memory_order_relaxed);
      targets[pos] = static_cast<V>(u);
      if (weights) (*weights)[pos] = g.weight(e);
    }
  });
  detail::sort_lists<V>(offsets, targets, weights ? &*weights : nullptr);
  return Graph<V>::from_csr_unchecked(std::move(offsets), std::move(targets), std::move(weights),
                                      g.symmetric());
}

/// Copy of `g` with its transpose attached (no-op copy for symmetric graphs).
template <VertexIdType V>
Graph<V> with_transpose(Graph<V> g) {
  if (!g.symmetric() && g.transpose() == nullptr) g.attach_transpose(transpose(g));
  return g;
}

/// Undirected simple version of `g`: (u,v) present iff (u,v) or (v,u) was,
/// self-loops dropped, duplicates removed, lists sorted. Duplicate weighted
/// edges keep their minimum weight.
template <VertexIdType V>
Graph<V> symmetrize(const Graph<V>& g) {
  std::size_t n = g.num_vertices();
  Graph<V> t = transpose(g);
  bool weighted = g.weighted();
  // Scratch CSR holding out- and in-lists side by side.
  std::vector<EdgeId> scratch_off(n + 1);
  parallel_for(0, n + 1, [&](std::size_t v) { scratch_off[v] = g.offsets()[v] + t.offsets()[v]; });
  std::vector<std::pair<V, Weight>> scratch(scratch_off[n]);
  std::vector<EdgeId> counts(n + 1, 0);
  parallel_for(0, n, [&](std::size_t u) {
    V uv = static_cast<V>(u);
    EdgeId pos = scratch_off[u];
    for (EdgeId e = g.begin_edge(uv); e < g.end_edge(uv); ++e)
      scratch[pos++] = {g.target(e), weighted ? g.weight(e) : 0.0f};
    for (EdgeId e = t.begin_edge(uv); e < t.end_edge(uv); ++e)
      scratch[pos++] = {t.target(e), weighted ? t.weight(e) : 0.0f};
    auto first = scratch.begin() + scratch_off[u];
    auto last = scratch.begin() + scratch_off[u + 1];
    std::sort(first, last);
    auto out = first;
    for (auto it = first; it != last; ++it) {
      if (it->first == uv) continue;
      if (out != first && (out - 1)->first == it->first) continue;
      *out++ = *it;
    }
    counts[u] = static_cast<EdgeId>(out - first);
  });
  EdgeId m = exclusive_scan_inplace(std::span<EdgeId>(counts));
  std::vector<V> targets(m);
  std::optional<std::vector<Weight>> weights;
  if (weighted) weights.emplace(m);
  parallel_for(0, n, [&](std::size_t u) {
    EdgeId deg = counts[u + 1] - counts[u];
    for (EdgeId i = 0; i < deg; ++i) {
      targets[counts[u] + i] = scratch[scratch_off[u] + i].first;
      if (weights) (*weights)[counts[u] + i] = scratch[scratch_off[u] + i].second;
    }
  });
  return Graph<V>::from_csr_unchecked(std::move(counts), std::move(targets), std::move(weights),
                                      true);
}

/// CSR from an edge list; lists sorted, duplicates removed when `dedup`.
template <VertexIdType V>
Graph<V> graph_from_edges(std::size_t n, std::vector<std::pair<V, V>> edges, bool dedup = true,
                          bool symmetric = false) {
  std::sort(edges.begin(), edges.end());
  if (dedup) edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  std::vector<EdgeId> offsets(n + 1, 0);
  std::vector<V> targets(edges.size());
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (static_cast<std::size_t>(edges[i].first) >= n || static_cast<std::size_t>(edges[i].second) >= n)
      throw GraphError("edge endpoint out of range");
    ++offsets[edges[i].first + 1];
    targets[i] = edges[i].second;
  }
  for (std::size_t v = 0; v < n; ++v) offsets[v + 1] += offsets[v];
  return Graph<V>::from_csr_unchecked(std::move(offsets), std::move(targets), std::nullopt,
                                      symmetric);
}

/// True iff every (u,v) has a matching (v,u) and lists are strictly sorted
/// without self-loops. Uses no auxiliary memory.
template <VertexIdType V>
bool is_simple_symmetric(const Graph<V>& g) {
  std::size_t n = g.num_vertices();
  return parallel_count(0, n, [&](std::size_t u) {
    auto nbrs = g.neighbors(static_cast<V>(u));
    for (std::size_t i = 0; i < nbrs.size(); ++i) {
      V v = nbrs[i];
      if (v == static_cast<V>(u)) return true;
      if (i > 0 && nbrs[i - 1] >= v) return true;
      auto back = g.neighbors(v);
      if (!std::binary_search(back.begin(), back.end(), static_cast<V>(u))) return true;
    }
    return false;
  }) == 0;
}

}  // namespace pasgal
