#pragma once

// Rooted spanning forests and their preorder intervals, computed with an
// Euler tour and list ranking instead of any traversal of the forest.

#include <algorithm>
#include <array>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pasgal/graph.hpp"
#include "pasgal/parallel.hpp"
#include "pasgal/random.hpp"

namespace pasgal {

/// parent[v] == v for roots; component[v] is the smallest vertex id of v's
/// connected component, which is also the root of its tree.
template <VertexIdType V>
struct SpanningForest {
  std::vector<V> parent;
  std::vector<V> component;
};

/// Preorder interval of every subtree: u lies in the subtree of v iff
/// first[v] <= first[u] <= last[v]. first is a permutation of [0, n).
template <VertexIdType V>
struct EulerOrder {
  std::vector<V> first;
  std::vector<V> last;
  std::vector<V> size;
};

namespace detail {

inline constexpr std::uint64_t kNoArc = ~std::uint64_t{0};

/// Position of every element of the linked list starting at `head`, by a
/// sparse ruling set: rulers walk their sublists in parallel recording local
/// offsets, the short list of rulers is ranked, and every element adds the
/// start of its ruler. next(a) returns kNoArc at the end. Elements not on
/// the list get kNoArc.
template <typename Next, typename IsRuler>
std::vector<std::uint64_t> rank_list(std::uint64_t count, std::uint64_t head, Next&& next, IsRuler&& is_ruler) {
  std::vector<std::uint64_t> pos(count, kNoArc);
  if (count == 0 || head == kNoArc) return pos;
  // One byte per element keeps the ruler test to a single cached access
  // during the walks.
  std::vector<std::uint8_t> mark(count);
  parallel_for(0, count, [&](std::size_t a) { mark[a] = a == head || is_ruler(a); });
  auto ruler = [&](std::uint64_t a) { return mark[a] != 0; };
  std::vector<std::uint64_t> rulers = parallel_pack_index<std::uint64_t>(
      count, [&](std::size_t a) { return ruler(a); }, [](std::size_t a) { return static_cast<std::uint64_t>(a); });
  const std::size_t r = rulers.size();
  auto index_of = [&](std::uint64_t a) {
    return static_cast<std::uint64_t>(std::lower_bound(rulers.begin(), rulers.end(), a) - rulers.begin());
  };
  std::vector<std::uint64_t> length(r), successor(r), start(r, kNoArc), owner(count);
  // Each task advances a group of walks in lockstep so their cache misses
  // overlap instead of serializing.
  constexpr std::size_t kLanes = 16;
  parallel_for(0, (r + kLanes - 1) / kLanes, [&](std::size_t group) {
    std::size_t lo = group * kLanes, lanes = std::min(kLanes, r - lo);
    std::array<std::uint64_t, kLanes> at{}, len{};
    std::array<std::size_t, kLanes> id{};
    for (std::size_t l = 0; l < lanes; ++l) at[l] = rulers[lo + l], id[l] = lo + l;
    while (lanes > 0) {
      for (std::size_t l = 0; l < lanes;) {
        std::uint64_t a = at[l];
        std::size_t i = id[l];
        pos[a] = len[l]++;
        owner[a] = i;
        std::uint64_t b = next(a);
        if (b == kNoArc || ruler(b)) {
          successor[i] = b == kNoArc ? kNoArc : index_of(b);
          length[i] = len[l];
          --lanes;
          at[l] = at[lanes], len[l] = len[lanes], id[l] = id[lanes];
          continue;
        }
        at[l++] = b;
      }
    }
  });
  mark = {};
  std::uint64_t offset = 0;
  for (std::uint64_t i = index_of(head); i != kNoArc && start[i] == kNoArc; i = successor[i]) {
    start[i] = offset;
    offset += length[i];
  }
  parallel_for(0, count, [&](std::size_t a) {
    if (pos[a] == kNoArc) return;
    std::uint64_t s = start[owner[a]];
    pos[a] = s == kNoArc ? kNoArc : s + pos[a];
  });
  return pos;
}

/// Undirected forest in CSR form. Slot a is the arc adj[rev[a]] -> adj[a];
/// rev[a] is the slot of the opposite arc.
template <VertexIdType V>
struct TreeAdjacency {
  std::vector<std::uint64_t> offsets;
  std::vector<V> adj;
  std::vector<std::uint64_t> rev;
};

template <VertexIdType V, typename EdgeAt>
TreeAdjacency<V> build_tree_adjacency(std::size_t n, std::size_t edges, EdgeAt&& edge_at) {
  TreeAdjacency<V> t;
  t.offsets.assign(n + 1, 0);
  parallel_for(0, edges, [&](std::size_t i) {
    auto [u, w] = edge_at(i);
    std::atomic_ref<std::uint64_t>(t.offsets[u]).fetch_add(1, std::memory_order_relaxed);
    std::atomic_ref<std::uint64_t>(t.offsets[w]).fetch_add(1, std::memory_order_relaxed);
  });
  exclusive_scan_inplace(std::span<std::uint64_t>(t.offsets));
  std::vector<std::uint64_t> cursor(t.offsets.begin(), t.offsets.end() - 1);
  t.adj.resize(2 * edges);
  t.rev.resize(2 * edges);
  parallel_for(0, edges, [&](std::size_t i) {
    auto [u, w] = edge_at(i);
    std::uint64_t su = std::atomic_ref<std::uint64_t>(cursor[u]).fetch_add(1, std::memory_order_relaxed);
    std::uint64_t sw = std::atomic_ref<std::uint64_t>(cursor[w]).fetch_add(1, std::memory_order_relaxed);
    t.adj[su] = w;
    t.adj[sw] = u;
    t.rev[su] = sw;
    t.rev[sw] = su;
  });
  return t;
}

template <VertexIdType V>
struct TourResult {
  std::vector<V> parent;
  std::vector<V> first;
  std::vector<V> size;
};

/// Roots every tree of `t` at the vertex selected by is_root and computes
/// parents, preorder ranks and subtree sizes. All nontrivial trees are
/// chained into one Euler tour in root order; isolated roots take the ranks
/// after them. Throws GraphError if some arc is not reachable from a root,
/// which happens exactly when the input contains a cycle.
template <VertexIdType V, typename IsRoot>
TourResult<V> euler_tour(const TreeAdjacency<V>& t, std::size_t n, IsRoot&& is_root) {
  const auto& off = t.offsets;
  const auto& adj = t.adj;
  const auto& rev = t.rev;
  const std::uint64_t arcs = adj.size();
  auto degree = [&](std::size_t v) { return off[v + 1] - off[v]; };
  std::vector<V> roots = parallel_pack_index<V>(
      n, [&](std::size_t v) { return is_root(static_cast<V>(v)) && degree(v) > 0; },
      [](std::size_t v) { return static_cast<V>(v); });
  std::vector<V> isolated = parallel_pack_index<V>(
      n, [&](std::size_t v) { return is_root(static_cast<V>(v)) && degree(v) == 0; },
      [](std::size_t v) { return static_cast<V>(v); });

  // First arc of every root, flagged per arc so later passes read it in
  // arc order instead of chasing the arc's source.
  std::vector<std::uint8_t> head_arc(arcs);
  parallel_for(0, roots.size(), [&](std::size_t k) { head_arc[off[roots[k]]] = 1; });
  auto is_head = [&](std::uint64_t a) { return head_arc[a] != 0; };
  auto next = [&](std::uint64_t a) -> std::uint64_t {
    V w = adj[a];
    std::uint64_t s = rev[a] + 1;
    if (s < off[w + 1]) return s;
    if (!is_head(off[w])) return off[w];
    auto k = static_cast<std::size_t>(std::lower_bound(roots.begin(), roots.end(), w) - roots.begin());
    return k + 1 < roots.size() ? off[roots[k + 1]] : kNoArc;
  };
  auto sampled = [&](std::uint64_t a) { return (splitmix64(a) & 63) == 0 || is_head(a); };
  std::uint64_t head = roots.empty() ? kNoArc : off[roots[0]];
  std::vector<std::uint64_t> pos = rank_list(arcs, head, next, sampled);

  std::size_t unreachable = parallel_count(0, arcs, [&](std::size_t a) { return pos[a] == kNoArc; });
  if (unreachable > 0)
    throw GraphError("cyclic parent pointers: " + std::to_string(unreachable) + " tree arcs unreachable from any root");

  // Weight of an arc in tour order: 1 per down arc, plus 1 for each tree's
  // first arc standing in for its root. The exclusive prefix is the preorder.
  auto down = [&](std::uint64_t a) { return pos[a] < pos[rev[a]]; };
  std::vector<std::uint64_t> weight(arcs);
  parallel_for(0, arcs, [&](std::size_t a) { weight[pos[a]] = (down(a) ? 1 : 0) + (is_head(a) ? 1 : 0); });
  std::uint64_t tree_vertices = exclusive_scan_inplace(std::span<std::uint64_t>(weight));

  TourResult<V> out;
  out.parent.assign(n, kNoVertex<V>);
  out.first.assign(n, kNoVertex<V>);
  out.size.assign(n, 0);
  parallel_for(0, arcs, [&](std::size_t a) {
    if (!down(a)) return;
    V w = adj[a];
    out.parent[w] = adj[rev[a]];
    out.first[w] = static_cast<V>(weight[pos[a]] + (is_head(a) ? 1 : 0));
    out.size[w] = static_cast<V>((pos[rev[a]] - pos[a] + 1) / 2);
  });
  parallel_for(0, roots.size(), [&](std::size_t k) {
    V r = roots[k];
    std::uint64_t h = off[r], tail = rev[off[r + 1] - 1];
    out.parent[r] = r;
    out.first[r] = static_cast<V>(weight[pos[h]]);
    out.size[r] = static_cast<V>((pos[tail] - pos[h] + 1) / 2 + 1);
  });
  parallel_for(0, isolated.size(), [&](std::size_t k) {
    V r = isolated[k];
    out.parent[r] = r;
    out.first[r] = static_cast<V>(tree_vertices + k);
    out.size[r] = 1;
  });
  std::size_t unranked = parallel_count(0, n, [&](std::size_t v) { return out.first[v] == kNoVertex<V>; });
  if (unranked > 0)
    throw GraphError("cyclic parent pointers: " + std::to_string(unranked) + " vertices not below any root");
  return out;
}

}  // namespace detail

/// Preorder intervals of a rooted forest given by parent pointers.
template <VertexIdType V>
EulerOrder<V> euler_order(const SpanningForest<V>& forest) {
  const auto& parent = forest.parent;
  const std::size_t n = parent.size();
  if (parallel_count(0, n, [&](std::size_t v) { return static_cast<std::size_t>(parent[v]) >= n; }) > 0)
    throw GraphError("parent pointer out of range");
  std::vector<V> children = parallel_pack_index<V>(
      n, [&](std::size_t v) { return parent[v] != static_cast<V>(v); }, [](std::size_t v) { return static_cast<V>(v); });
  auto tree = detail::build_tree_adjacency<V>(n, children.size(), [&](std::size_t i) {
    return std::pair<V, V>{children[i], parent[children[i]]};
  });
  children = {};
  auto tour = detail::euler_tour(tree, n, [&](V v) { return parent[v] == v; });
  EulerOrder<V> out{std::move(tour.first), std::vector<V>(n), std::move(tour.size)};
  parallel_for(0, n, [&](std::size_t v) { out.last[v] = out.first[v] + out.size[v] - 1; });
  return out;
}

template <VertexIdType V>
EulerOrder<V> euler_order(const SpanningForest<V>& forest, const Graph<V>&) {
  return euler_order(forest);
}

}  // namespace pasgal
