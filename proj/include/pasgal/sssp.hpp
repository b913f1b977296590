#pragma once

// Delta-stepping on hash-bag frontiers with local relaxation.
//
// Pending vertices live in two bags: `near` for tentative distances below the
// current threshold and `far` for the rest. A round expands every live near
// vertex with a local search that keeps relaxing while distances stay below
// the threshold. When near runs dry the threshold jumps to the first multiple
// of delta above the smallest far distance and far is re-split.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "pasgal/graph.hpp"
#include "pasgal/hashbag.hpp"
#include "pasgal/parallel.hpp"
#include "pasgal/results.hpp"
#include "pasgal/vgc.hpp"

namespace pasgal {

struct SsspStats {
  std::size_t rounds = 0;
  std::size_t threshold_steps = 0;
  std::size_t processed = 0;  // vertex expansions, including re-expansions
  double delta = 0.0;
};

/// Write-min of dist[u] + w into dist[v]. On a strict decrease v goes into
/// `pending` once and the call returns true.
template <VertexIdType V>
bool relax(std::span<double> dist, V u, V v, Weight w, HashBag<V>& pending) {
  double candidate = atomic_load(dist[u]) + static_cast<double>(w);
  if (!write_min(dist[v], candidate)) return false;
  pending.insert(v);
  return true;
}

/// Average edge weight times average degree; 1 for graphs without edges or
/// with all-zero weights.
template <VertexIdType V>
double default_delta(const Graph<V>& g) {
  std::size_t n = g.num_vertices(), m = g.num_edges();
  if (m == 0 || n == 0) return 1.0;
  auto weights = g.weights();
  double total = parallel_reduce<double>(
      0, m, 0.0, [&](std::size_t e) { return static_cast<double>(weights[e]); }, std::plus<double>());
  double delta = total / static_cast<double>(n);
  return delta > 0.0 ? delta : 1.0;
}

namespace detail {

template <VertexIdType V>
void check_sssp_input(const Graph<V>& g, V source) {
  if (static_cast<std::size_t>(source) >= g.num_vertices()) throw std::out_of_range("sssp source out of range");
  if (!g.weighted()) throw std::invalid_argument("sssp needs a weighted graph");
  auto weights = g.weights();
  bool bad = parallel_count(0, weights.size(), [&](std::size_t e) { return !(weights[e] >= 0.0f); }) > 0;
  if (bad) throw std::invalid_argument("negative edge weight");
}

}  // namespace detail

/// Exact shortest-path distances. `delta` defaults to default_delta(g);
/// infinity gives Bellman-Ford style rounds.
template <VertexIdType V>
WeightedDistanceArray sssp_parallel(const Graph<V>& g, V source, const VgcConfig& cfg = {},
                                    std::optional<double> delta = std::nullopt, SsspStats* stats = nullptr) {
  detail::check_sssp_input(g, source);
  cfg.validate();
  const double step = delta ? *delta : default_delta(g);
  if (!(step > 0.0)) throw std::invalid_argument("delta must be positive");

  SsspStats local;
  SsspStats& st = stats ? *stats : local;
  st = {};
  st.delta = step;

  const std::size_t n = g.num_vertices();
  std::vector<double> dist(n, kInfDistance), scanned(n, kInfDistance);
  HashBag<V> near, far;
  std::vector<V> frontier, scratch;
  double threshold = std::isinf(step) ? kInfDistance : step;

  auto live = [&](V v) { return atomic_load(scanned[v]) != atomic_load(dist[v]); };

  struct Visitor {
    const Graph<V>& g;
    std::vector<double>& dist;
    std::vector<double>& scanned;
    double threshold;
    bool begin(V x) { return write_min(scanned[x], atomic_load(dist[x])); }
    bool expand(V x, V y, EdgeId e) {
      return write_min(dist[y], atomic_load(dist[x]) + static_cast<double>(g.weight(e)));
    }
    bool keep_local(V y) { return atomic_load(dist[y]) < threshold; }
  };

  dist[source] = 0.0;
  near.insert(source);
  for (;;) {
    if (!near.maybe_nonempty()) {
      if (!far.maybe_nonempty()) break;
      far.pack_into(scratch);
      std::vector<V> entries = parallel_pack_index<V>(
          scratch.size(), [&](std::size_t j) { return live(scratch[j]); }, [&](std::size_t j) { return scratch[j]; });
      if (entries.empty()) continue;
      double lowest = parallel_reduce<double>(
          0, entries.size(), kInfDistance, [&](std::size_t j) { return dist[entries[j]]; },
          [](double a, double b) { return std::min(a, b); });
      double next = (std::floor(lowest / step) + 1.0) * step;
      threshold = std::max(next, threshold);
      ++st.threshold_steps;
      parallel_for(0, entries.size(), [&](std::size_t j) {
        V v = entries[j];
        (dist[v] < threshold ? near : far).insert(v);
      });
      continue;
    }
    near.pack_into(scratch);
    frontier = parallel_pack_index<V>(
        scratch.size(), [&](std::size_t j) { return live(scratch[j]); }, [&](std::size_t j) { return scratch[j]; });
    if (frontier.empty()) continue;
    ++st.rounds;
    Visitor vis{g, dist, scanned, threshold};
    std::atomic<std::size_t> processed{0};
    parallel_for(0, frontier.size(), [&](std::size_t i) {
      std::size_t k = local_search(
          g, frontier[i], vis, cfg,
          [&](V y) { (atomic_load(dist[y]) < threshold ? near : far).insert(y); }, detail::local_stack<V>(),
          LocalOrder::kQueue);
      processed.fetch_add(k, std::memory_order_relaxed);
    });
    st.processed += processed.load();
  }
  return WeightedDistanceArray{static_cast<std::uint64_t>(source), std::move(dist)};
}

}  // namespace pasgal
