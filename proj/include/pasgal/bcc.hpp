#pragma once

// Biconnected components by skeleton connectivity over an arbitrary spanning
// forest.
//
// With preorder intervals of the forest, the tree edge (p, c) is a fence when
// no non-tree edge leaves the subtree of p from the subtree of c. Removing
// fence edges and back edges (non-tree edges between an ancestor and a
// descendant) leaves the skeleton; its connected components among non-root
// vertices are the BCCs, each completed by the parent of its top vertex.
// Nothing beyond O(n) words is allocated: the skeleton is never materialized.

#include <algorithm>
#include <atomic>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "pasgal/euler_tour.hpp"
#include "pasgal/graph.hpp"
#include "pasgal/graph_ops.hpp"
#include "pasgal/parallel.hpp"
#include "pasgal/results.hpp"
#include "pasgal/union_find.hpp"

namespace pasgal {

/// low[v] / high[v]: smallest / largest preorder rank among the vertices of
/// v's subtree and the far endpoints of their non-tree edges.
template <VertexIdType V>
struct LowHighTags {
  std::vector<V> low;
  std::vector<V> high;
};

namespace detail {

template <VertexIdType V>
void require_simple_symmetric(const Graph<V>& g) {
  if (!is_simple_symmetric(g))
    throw std::invalid_argument("biconnectivity needs a simple symmetric graph; symmetrize first");
}

template <VertexIdType V>
bool is_tree_edge(const std::vector<V>& parent, V u, V w) {
  return (parent[w] == u && w != u) || (parent[u] == w && u != w);
}

template <VertexIdType V>
bool is_ancestor(const EulerOrder<V>& order, V a, V d) {
  return order.first[a] <= order.first[d] && order.first[d] <= order.last[a];
}

// Range minimum and maximum over a fixed array in O(n) words: in-block
// prefix and suffix extremes plus a sparse table over block extremes.
template <VertexIdType V>
class RangeExtremes {
 public:
  static constexpr std::size_t kBlock = 64;

  RangeExtremes(std::vector<V> lo, std::vector<V> hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
    const std::size_t n = lo_.size();
    blocks_ = (n + kBlock - 1) / kBlock;
    pre_lo_.resize(n), suf_lo_.resize(n), pre_hi_.resize(n), suf_hi_.resize(n);
    levels_ = blocks_ ? static_cast<std::size_t>(std::bit_width(blocks_)) : 0;
    table_lo_.resize(levels_ * blocks_), table_hi_.resize(levels_ * blocks_);
    parallel_blocks(n, kBlock, [&](std::size_t b, std::size_t l, std::size_t r) {
      V mn = lo_[l], mx = hi_[l];
      for (std::size_t i = l; i < r; ++i) {
        mn = std::min(mn, lo_[i]), mx = std::max(mx, hi_[i]);
        pre_lo_[i] = mn, pre_hi_[i] = mx;
      }
      mn = lo_[r - 1], mx = hi_[r - 1];
      for (std::size_t i = r; i-- > l;) {
        mn = std::min(mn, lo_[i]), mx = std::max(mx, hi_[i]);
        suf_lo_[i] = mn, suf_hi_[i] = mx;
      }
      table_lo_[b] = mn, table_hi_[b] = mx;
    });
    for (std::size_t k = 1; k < levels_; ++k) {
      std::size_t half = std::size_t{1} << (k - 1);
      parallel_for(0, blocks_, [&](std::size_t b) {
        std::size_t c = std::min(b + half, blocks_ - 1);
        table_lo_[k * blocks_ + b] = std::min(table_lo_[(k - 1) * blocks_ + b], table_lo_[(k - 1) * blocks_ + c]);
        table_hi_[k * blocks_ + b] = std::max(table_hi_[(k - 1) * blocks_ + b], table_hi_[(k - 1) * blocks_ + c]);
      });
    }
  }

  /// (min lo, max hi) over positions [l, r].
  std::pair<V, V> query(std::size_t l, std::size_t r) const {
    std::size_t bl = l / kBlock, br = r / kBlock;
    if (bl == br) {
      V mn = lo_[l], mx = hi_[l];
      for (std::size_t i = l + 1; i <= r; ++i) mn = std::min(mn, lo_[i]), mx = std::max(mx, hi_[i]);
      return {mn, mx};
    }
    V mn = std::min(suf_lo_[l], pre_lo_[r]);
    V mx = std::max(suf_hi_[l], pre_hi_[r]);
    if (bl + 1 < br) {
      std::size_t a = bl + 1, b = br - 1;
      std::size_t k = static_cast<std::size_t>(std::bit_width(b - a + 1)) - 1;
      std::size_t c = b + 1 - (std::size_t{1} << k);
      mn = std::min({mn, table_lo_[k * blocks_ + a], table_lo_[k * blocks_ + c]});
      mx = std::max({mx, table_hi_[k * blocks_ + a], table_hi_[k * blocks_ + c]});
    }
    return {mn, mx};
  }

 private:
  std::vector<V> lo_, hi_;
  std::vector<V> pre_lo_, suf_lo_, pre_hi_, suf_hi_;
  std::vector<V> table_lo_, table_hi_;
  std::size_t blocks_ = 0, levels_ = 0;
};

template <VertexIdType V>
struct ForestWithOrder {
  SpanningForest<V> forest;
  EulerOrder<V> order;
};

// Union-find spanning forest, rooted by one Euler tour that also yields the
// preorder intervals.
template <VertexIdType V>
ForestWithOrder<V> rooted_forest(const Graph<V>& g, std::uint64_t seed) {
  require_simple_symmetric(g);
  const std::size_t n = g.num_vertices();
  std::vector<V> component(n, kNoVertex<V>);
  TreeAdjacency<V> tree;
  {
    UnionFind<V> uf(n, seed);
    // The edge that hooked root r is stored at slot r.
    std::vector<V> hook_u(n, kNoVertex<V>), hook_w(n, kNoVertex<V>);
    parallel_for(0, n, [&](std::size_t i) {
      V u = static_cast<V>(i);
      for (V w : g.neighbors(u)) {
        if (w <= u) continue;
        V hooked = uf.unite(u, w);
        if (hooked != kNoVertex<V>) hook_u[hooked] = u, hook_w[hooked] = w;
      }
    });
    parallel_for(0, n, [&](std::size_t v) { write_min(component[uf.find(static_cast<V>(v))], static_cast<V>(v)); });
    parallel_for(0, n, [&](std::size_t v) {
      V r = uf.find(static_cast<V>(v));
      if (r != static_cast<V>(v)) component[v] = atomic_load(component[r]);
    });
    std::vector<V> hooked = parallel_pack_index<V>(
        n, [&](std::size_t v) { return hook_u[v] != kNoVertex<V>; }, [](std::size_t v) { return static_cast<V>(v); });
    tree = build_tree_adjacency<V>(n, hooked.size(), [&](std::size_t i) {
      return std::pair<V, V>{hook_u[hooked[i]], hook_w[hooked[i]]};
    });
  }
  auto tour = euler_tour(tree, n, [&](V v) { return component[v] == v; });
  tree = {};
  ForestWithOrder<V> out{{std::move(tour.parent), std::move(component)},
                         {std::move(tour.first), std::vector<V>(n), {}}};
  parallel_for(0, n, [&](std::size_t v) { out.order.last[v] = out.order.first[v] + tour.size[v] - 1; });
  return out;
}

}  // namespace detail

/// Connected components and a rooted spanning forest of a simple symmetric
/// graph. Component labels are the smallest vertex id of each component,
/// which is also its root. The labels do not depend on the seed or the
/// schedule; the shape of the forest may.
template <VertexIdType V>
SpanningForest<V> connected_components(const Graph<V>& g, std::uint64_t seed = 0) {
  return detail::rooted_forest(g, seed).forest;
}

/// Subtree extremes of preorder ranks reachable through one non-tree edge.
/// Linear work: per-vertex local extremes, then one range query per vertex
/// over its preorder interval.
template <VertexIdType V>
LowHighTags<V> low_high(const Graph<V>& g, const EulerOrder<V>& order, const SpanningForest<V>& forest) {
  const std::size_t n = g.num_vertices();
  const auto& first = order.first;
  const auto& parent = forest.parent;
  std::vector<V> local_lo(n), local_hi(n);
  parallel_for(0, n, [&](std::size_t i) {
    V u = static_cast<V>(i);
    V lo = first[u], hi = first[u];
    for (V w : g.neighbors(u)) {
      if (detail::is_tree_edge(parent, u, w)) continue;
      lo = std::min(lo, first[w]), hi = std::max(hi, first[w]);
    }
    local_lo[first[u]] = lo, local_hi[first[u]] = hi;
  });
  detail::RangeExtremes<V> extremes(std::move(local_lo), std::move(local_hi));
  LowHighTags<V> tags{std::vector<V>(n), std::vector<V>(n)};
  parallel_for(0, n, [&](std::size_t v) {
    auto [lo, hi] = extremes.query(first[v], order.last[v]);
    tags.low[v] = lo, tags.high[v] = hi;
  });
  return tags;
}

/// Fence classification, skeleton connectivity and output assembly. BCC
/// labels are the smallest CSR slot index among the edges of the component,
/// so they are identical for every forest and schedule.
template <VertexIdType V>
BccLabels<V> classify_and_label(const Graph<V>& g, const SpanningForest<V>& forest, EulerOrder<V> order,
                                const LowHighTags<V>& tags) {
  const std::size_t n = g.num_vertices();
  const auto& parent = forest.parent;
  const auto& first = order.first;
  const auto& last = order.last;
  auto is_root = [&](V v) { return parent[v] == v; };
  auto fence = [&](V c) {
    V p = parent[c];
    return first[p] <= tags.low[c] && tags.high[c] <= last[p];
  };

  UnionFind<V> skeleton(n);
  parallel_for(0, n, [&](std::size_t i) {
    V u = static_cast<V>(i);
    if (!is_root(u) && !fence(u)) skeleton.unite(u, parent[u]);
    for (V w : g.neighbors(u)) {
      if (w <= u || detail::is_tree_edge(parent, u, w)) continue;
      if (!detail::is_ancestor(order, u, w) && !detail::is_ancestor(order, w, u)) skeleton.unite(u, w);
    }
  });

  // Every edge belongs to the component of its endpoint with the larger
  // preorder rank, which is never a root.
  BccLabels<V> out;
  out.vertex_label.assign(n, BccLabels<V>::kNoLabel);
  auto& min_slot = out.vertex_label;  // indexed by skeleton root until relabeled
  parallel_for(0, n, [&](std::size_t i) {
    V u = static_cast<V>(i);
    for (EdgeId e = g.begin_edge(u); e < g.end_edge(u); ++e) {
      V w = g.target(e);
      V owner = first[u] > first[w] ? u : w;
      write_min(min_slot[skeleton.find(owner)], static_cast<std::uint64_t>(e));
    }
  });
  std::vector<V> head(n, kNoVertex<V>);
  std::atomic<std::size_t> conflicts{0};
  // A fence child outside its parent's skeleton component is the top of its
  // component, and the parent is the head. A fence child can also share the
  // parent's component when a cross edge from a sibling subtree joins them.
  auto tops = [&](V c) { return !is_root(c) && fence(c) && skeleton.find(c) != skeleton.find(parent[c]); };
  parallel_for(0, n, [&](std::size_t i) {
    V c = static_cast<V>(i);
    if (!tops(c)) return;
    V k = skeleton.find(c);
    V expected = kNoVertex<V>;
    std::atomic_ref<V> slot(head[k]);
    if (!slot.compare_exchange_strong(expected, parent[c], std::memory_order_relaxed) && expected != parent[c])
      conflicts.fetch_add(1, std::memory_order_relaxed);
  });
  std::size_t headless = parallel_count(0, n, [&](std::size_t v) {
    return !is_root(static_cast<V>(v)) && skeleton.find(static_cast<V>(v)) == static_cast<V>(v) &&
           head[v] == kNoVertex<V>;
  });
  // The lower endpoint of a non-tree edge lies in the owner's component or
  // is its head.
  std::size_t stray = parallel_count(0, n, [&](std::size_t i) {
    V u = static_cast<V>(i);
    V k = kNoVertex<V>;
    for (V w : g.neighbors(u)) {
      if (first[w] <= first[u] || detail::is_tree_edge(parent, u, w)) continue;
      if (k == kNoVertex<V>) k = skeleton.find(u);
      V kw = skeleton.find(w);
      if (kw != k && head[kw] != u) return true;
    }
    return false;
  });
  if (conflicts.load() > 0 || headless > 0 || stray > 0)
    throw std::logic_error("bcc skeleton inconsistent: " + std::to_string(conflicts.load()) +
                           " components with two heads, " + std::to_string(headless) + " without a head, " +
                           std::to_string(stray) + " vertices with a stray non-tree edge");
  out.num_components = parallel_count(0, n, [&](std::size_t v) {
    return !is_root(static_cast<V>(v)) && skeleton.find(static_cast<V>(v)) == static_cast<V>(v);
  });

  std::vector<std::uint64_t> labels(n, BccLabels<V>::kNoLabel);
  parallel_for(0, n, [&](std::size_t v) {
    if (!is_root(static_cast<V>(v))) labels[v] = atomic_load(min_slot[skeleton.find(static_cast<V>(v))]);
  });
  out.vertex_label = std::move(labels);

  // A non-root vertex is a cut vertex iff it heads a component; a root iff
  // its children fall into at least two components.
  out.articulation.assign(n, 0);
  std::vector<std::uint64_t> root_label(n, BccLabels<V>::kNoLabel);
  parallel_for(0, n, [&](std::size_t i) {
    V c = static_cast<V>(i);
    if (is_root(c)) return;
    V p = parent[c];
    if (!is_root(p)) {
      if (tops(c)) atomic_store(out.articulation[p], std::uint8_t{1});
    } else {
      write_min(root_label[p], out.vertex_label[c]);
    }
  });
  parallel_for(0, n, [&](std::size_t i) {
    V c = static_cast<V>(i);
    if (is_root(c) || !is_root(parent[c])) return;
    if (out.vertex_label[c] != atomic_load(root_label[parent[c]]))
      atomic_store(out.articulation[parent[c]], std::uint8_t{1});
  });
  out.order = std::move(order.first);
  return out;
}

/// Biconnected components and articulation points of a simple symmetric
/// graph.
template <VertexIdType V>
BccLabels<V> bcc_parallel(const Graph<V>& g, std::uint64_t seed = 0) {
  auto [forest, order] = detail::rooted_forest(g, seed);
  LowHighTags<V> tags = low_high(g, order, forest);
  return classify_and_label(g, forest, std::move(order), tags);
}

}  // namespace pasgal
