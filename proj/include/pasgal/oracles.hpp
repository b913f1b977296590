#pragma once

// Sequential reference algorithms. They are the speedup baselines of the
// benchmark harness and the exactness oracles of the test suites. All DFS
// based routines use explicit stacks; path graphs with millions of vertices
// must not overflow the call stack.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <queue>
#include <stdexcept>
#include <utility>
#include <vector>

#include "pasgal/graph.hpp"
#include "pasgal/graph_ops.hpp"
#include "pasgal/results.hpp"

namespace pasgal::seq {

template <VertexIdType V>
DistanceArray<V> bfs_queue(const Graph<V>& g, V source) {
  std::size_t n = g.num_vertices();
  if (static_cast<std::size_t>(source) >= n) throw std::out_of_range("bfs source out of range");
  DistanceArray<V> out{source, std::vector<V>(n, kUnreached<V>)};
  auto& dist = out.dist;
  std::vector<V> queue;
  queue.reserve(n);
  dist[source] = 0;
  queue.push_back(source);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    V u = queue[head];
    V next = dist[u] + 1;
    for (V v : g.neighbors(u)) {
      if (dist[v] != kUnreached<V>) continue;
      dist[v] = next;
      queue.push_back(v);
    }
  }
  return out;
}

/// Tarjan's algorithm with an explicit call stack. Each component is labeled
/// by its DFS root.
template <VertexIdType V>
SccLabels<V> scc_tarjan(const Graph<V>& g) {
  std::size_t n = g.num_vertices();
  constexpr V kUnvisited = kNoVertex<V>;
  std::vector<V> index(n, kUnvisited), low(n, 0);
  std::vector<std::uint8_t> on_stack(n, 0);
  std::vector<V> component_stack;
  struct Frame {
    V vertex;
    EdgeId next;
  };
  std::vector<Frame> call;
  SccLabels<V> out{std::vector<V>(n, kNoVertex<V>), 0};
  V counter = 0;

  for (std::size_t root = 0; root < n; ++root) {
    if (index[root] != kUnvisited) continue;
    auto enter = [&](V v) {
      index[v] = low[v] = counter++;
      component_stack.push_back(v);
      on_stack[v] = 1;
      call.push_back({v, g.begin_edge(v)});
    };
    enter(static_cast<V>(root));
    while (!call.empty()) {
      Frame& f = call.back();
      V v = f.vertex;
      if (f.next < g.end_edge(v)) {
        V w = g.target(f.next++);
        if (index[w] == kUnvisited) {
          enter(w);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      call.pop_back();
      if (!call.empty()) {
        V parent = call.back().vertex;
        low[parent] = std::min(low[parent], low[v]);
      }
      if (low[v] == index[v]) {
        V w;
        do {
          w = component_stack.back();
          component_stack.pop_back();
          on_stack[w] = 0;
          out.label[w] = v;
        } while (w != v);
        ++out.num_components;
      }
    }
  }
  return out;
}

/// Hopcroft-Tarjan biconnectivity with an explicit edge stack. Input must be
/// simple and symmetric (see symmetrize()). The DFS tree is the reference
/// forest of the returned labels; components are numbered in completion
/// order.
template <VertexIdType V>
BccLabels<V> bcc_hopcroft_tarjan(const Graph<V>& g) {
  if (!is_simple_symmetric(g))
    throw std::invalid_argument("biconnectivity needs a simple symmetric graph; symmetrize first");
  std::size_t n = g.num_vertices();
  constexpr V kUnvisited = kNoVertex<V>;
  BccLabels<V> out;
  out.vertex_label.assign(n, BccLabels<V>::kNoLabel);
  out.order.assign(n, kUnvisited);
  out.articulation.assign(n, 0);
  std::vector<V> low(n, 0), parent(n, kUnvisited);
  struct Frame {
    V vertex;
    EdgeId next;
  };
  std::vector<Frame> call;
  std::vector<V> edge_stack;  // child endpoint of each stacked tree edge
  auto& disc = out.order;
  V counter = 0;
  std::uint64_t component = 0;

  for (std::size_t root = 0; root < n; ++root) {
    if (disc[root] != kUnvisited) continue;
    V r = static_cast<V>(root);
    disc[r] = low[r] = counter++;
    call.push_back({r, g.begin_edge(r)});
    std::size_t root_children = 0;
    while (!call.empty()) {
      Frame& f = call.back();
      V v = f.vertex;
      if (f.next < g.end_edge(v)) {
        V w = g.target(f.next++);
        if (disc[w] == kUnvisited) {
          parent[w] = v;
          disc[w] = low[w] = counter++;
          edge_stack.push_back(w);
          call.push_back({w, g.begin_edge(w)});
        } else if (w != parent[v] && disc[w] < disc[v]) {
          low[v] = std::min(low[v], disc[w]);
        }
        continue;
      }
      call.pop_back();
      if (call.empty()) break;
      V p = call.back().vertex;
      low[p] = std::min(low[p], low[v]);
      if (low[v] >= disc[p]) {
        // Tree edges only: a back edge's component is the one of its lower
        // endpoint's tree edge, which the compact representation recovers.
        V child;
        do {
          child = edge_stack.back();
          edge_stack.pop_back();
          out.vertex_label[child] = component;
        } while (child != v);
        ++component;
        if (p != r) out.articulation[p] = 1;
        else ++root_children;
      }
    }
    if (root_children >= 2) out.articulation[r] = 1;
  }
  out.num_components = component;
  return out;
}

/// Binary-heap Dijkstra. Distances are accumulated in double precision.
template <VertexIdType V>
WeightedDistanceArray sssp_dijkstra(const Graph<V>& g, V source) {
  std::size_t n = g.num_vertices();
  if (static_cast<std::size_t>(source) >= n) throw std::out_of_range("sssp source out of range");
  if (!g.weighted()) throw std::invalid_argument("sssp needs a weighted graph");
  for (Weight w : g.weights())
    if (!(w >= 0.0f)) throw std::invalid_argument("negative edge weight");
  WeightedDistanceArray out{source, std::vector<double>(n, kInfDistance)};
  auto& dist = out.dist;
  using Item = std::pair<double, V>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  dist[source] = 0.0;
  heap.push({0.0, source});
  while (!heap.empty()) {
    auto [d, u] = heap.top();
    heap.pop();
    if (d > dist[u]) continue;
    for (EdgeId e = g.begin_edge(u); e < g.end_edge(u); ++e) {
      V v = g.target(e);
      double nd = d + static_cast<double>(g.weight(e));
      if (nd < dist[v]) {
        dist[v] = nd;
        heap.push({nd, v});
      }
    }
  }
  return out;
}

}  // namespace pasgal::seq
