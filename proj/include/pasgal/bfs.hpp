#pragma once

// Parallel BFS on top of the frontier engine.
//
// Local searches run many hops ahead of the exact level, so the distances
// they write are tentative upper bounds. Every strict decrease of dist[v]
// admits v again, and scanned[v] records the distance at which v was last
// expanded, which makes duplicate and stale entries cheap to drop. Vertices
// that leave a local search are parked in buckets by how far their tentative
// distance lies beyond the base (the smallest pending distance): bucket i
// holds d with bit_width(d ^ base) == i, so bucket widths double and lower
// buckets always hold smaller distances.
//
// A round processes the band [base, base + width). Local searches keep a
// vertex only while it is inside the band; the band width doubles while the
// band holds too little work for the workers and halves when it holds far
// too much. With tau = 1 this degenerates to a level-synchronous BFS.
//
// When the exact current level's out-degree sum is a large fraction of m the
// search switches to bottom-up rounds, which need in-edges (symmetric graph
// or an attached transpose).

#include <algorithm>
#include <array>
#include <atomic>
#include <bit>
#include <cstddef>
#include <memory>
#include <span>
#include <stdexcept>
#include <vector>

#include "pasgal/graph.hpp"
#include "pasgal/hashbag.hpp"
#include "pasgal/parallel.hpp"
#include "pasgal/results.hpp"
#include "pasgal/vgc.hpp"

namespace pasgal {

struct BfsStats {
  std::size_t rounds = 0;        // levels processed, top-down or bottom-up
  std::size_t dense_rounds = 0;  // of which bottom-up
  std::size_t processed = 0;     // vertex expansions, including re-expansions
};

/// One bottom-up step: every vertex whose distance exceeds level + 1 looks
/// for an in-neighbor at `level` and takes level + 1. Returns all vertices at
/// level + 1 afterwards, in increasing id order.
template <VertexIdType V>
std::vector<V> bfs_round_dense(const Graph<V>& g, V level, std::span<V> dist) {
  const Graph<V>* in = g.in_edges();
  if (!in) throw std::invalid_argument("bottom-up BFS needs a symmetric graph or an attached transpose");
  const std::size_t n = g.num_vertices();
  const V next = level + 1;
  parallel_for(0, n, [&](std::size_t i) {
    V d = atomic_load(dist[i]);
    if (d <= next) return;
    for (V u : in->neighbors(static_cast<V>(i))) {
      if (atomic_load(dist[u]) == level) {
        atomic_store(dist[i], next);
        return;
      }
    }
  });
  return parallel_pack_index<V>(n, [&](std::size_t i) { return atomic_load(dist[i]) == next; },
                                [](std::size_t i) { return static_cast<V>(i); });
}

namespace detail {

template <VertexIdType V>
class BfsRunner {
 public:
  static constexpr std::size_t kBuckets = 16;
  static constexpr V kMaxWidth = V{1} << 20;

  BfsRunner(const Graph<V>& g, const VgcConfig& cfg, BfsStats& stats)
      : g_(g), cfg_(cfg), stats_(stats), dist_(g.num_vertices(), kUnreached<V>),
        scanned_(g.num_vertices(), kUnreached<V>) {
    for (auto& b : buckets_) b = std::make_unique<HashBag<V>>();
  }

  std::vector<V> run(V source) {
    const bool can_go_dense = g_.in_edges() != nullptr && cfg_.dense_threshold < 1.0;
    const double enter = cfg_.dense_threshold * static_cast<double>(g_.num_edges());
    const double leave = enter / 20.0;

    dist_[source] = 0;
    buckets_[0]->insert(source);
    std::vector<V> frontier;
    V base = 0;
    bool dense = false;
    for (;;) {
      ++stats_.rounds;
      if (!dense) {
        if (!next_level(frontier, base)) {
          --stats_.rounds;
          break;
        }
        bool heavy = cfg_.dense_threshold == 0.0 || static_cast<double>(level_degree_sum(frontier, base)) > enter;
        if (!can_go_dense || !heavy) {
          expand_level(frontier, base);
          continue;
        }
        dense = true;
        clear_buckets();
      }
      ++stats_.dense_rounds;
      frontier = bfs_round_dense(g_, base, std::span<V>(dist_));
      ++base;
      if (frontier.empty()) break;
      if (cfg_.dense_threshold > 0.0 && static_cast<double>(out_degree_sum(frontier)) < leave) {
        dense = false;
        rebuilt_ = true;
        rebuild_buckets(base);
      }
    }
    return std::move(dist_);
  }

 private:
  struct Visitor {
    std::vector<V>& dist;
    std::vector<V>& scanned;
    bool begin(V x) { return write_min(scanned[x], atomic_load(dist[x])); }
    V limit;
    bool expand(V x, V y, EdgeId) { return write_min(dist[y], atomic_load(dist[x]) + 1); }
    bool keep_local(V y) { return atomic_load(dist[y]) < limit; }
  };

  static std::size_t bucket_of(V d, V base) {
    return std::min<std::size_t>(kBuckets - 1, static_cast<std::size_t>(std::bit_width(d ^ base)));
  }

  bool live(V v) const { return atomic_load(scanned_[v]) != atomic_load(dist_[v]); }

  std::size_t out_degree_sum(const std::vector<V>& frontier) const {
    return parallel_reduce<std::size_t>(
        0, frontier.size(), 0, [&](std::size_t i) { return static_cast<std::size_t>(g_.degree(frontier[i])); },
        std::plus<std::size_t>());
  }

  // Out-degree sum of the frontier entries that sit exactly at `level`.
  std::size_t level_degree_sum(const std::vector<V>& frontier, V level) const {
    return parallel_reduce<std::size_t>(
        0, frontier.size(), 0,
        [&](std::size_t i) {
          V v = frontier[i];
          return dist_[v] == level ? static_cast<std::size_t>(g_.degree(v)) : std::size_t{0};
        },
        std::plus<std::size_t>());
  }

  void expand_level(const std::vector<V>& frontier, V base) {
    Visitor vis{dist_, scanned_, limit_};
    std::atomic<std::size_t> processed{0};
    parallel_for(0, frontier.size(), [&](std::size_t i) {
      std::size_t k = local_search(
          g_, frontier[i], vis, cfg_,
          [&](V y) { buckets_[bucket_of(atomic_load(dist_[y]), base)]->insert(y); }, local_stack<V>(),
          LocalOrder::kQueue);
      processed.fetch_add(k, std::memory_order_relaxed);
    });
    stats_.processed += processed.load();
  }

  // Extracts every live entry with distance below base + width, where base
  // is the smallest live distance. Buckets are drained from the lowest up;
  // lower buckets hold strictly smaller distances, so the first bucket that
  // contains an entry beyond the band ends the sweep. Its out-of-band entries
  // are re-keyed against the new base.
  bool next_level(std::vector<V>& frontier, V& base) {
    frontier.clear();
    bool found = false;
    V lo = 0, hi = 0;
    for (std::size_t i = 0; i < kBuckets; ++i) {
      if (!buckets_[i]->maybe_nonempty()) continue;
      buckets_[i]->pack_into(scratch_);
      std::vector<V> entries = parallel_pack_index<V>(
          scratch_.size(), [&](std::size_t j) { return live(scratch_[j]); },
          [&](std::size_t j) { return scratch_[j]; });
      if (entries.empty()) continue;
      if (!found) {
        found = true;
        lo = parallel_reduce<V>(
            0, entries.size(), kUnreached<V>, [&](std::size_t j) { return dist_[entries[j]]; },
            [](V a, V b) { return std::min(a, b); });
        hi = lo + std::min<V>(width_, kUnreached<V> - 1 - lo);
      }
      std::atomic<bool> beyond{false};
      parallel_for(0, entries.size(), [&](std::size_t j) {
        V d = dist_[entries[j]];
        if (d >= hi) {
          buckets_[bucket_of(d, lo)]->insert(entries[j]);
          if (!beyond.load(std::memory_order_relaxed)) beyond.store(true, std::memory_order_relaxed);
        }
      });
      std::size_t old = frontier.size();
      auto in_band = parallel_pack_index<V>(
          entries.size(), [&](std::size_t j) { return dist_[entries[j]] < hi; },
          [&](std::size_t j) { return entries[j]; });
      frontier.resize(old + in_band.size());
      std::copy(in_band.begin(), in_band.end(), frontier.begin() + old);
      if (beyond.load()) break;
    }
    if (!found) return false;
    // Grow the band while it holds too little work to occupy the workers,
    // shrink it when it holds far more than needed.
    const std::size_t target = cfg_.tau * static_cast<std::size_t>(num_workers());
    if (frontier.size() < target) width_ = std::min<V>(kMaxWidth, width_ * 2);
    else if (frontier.size() > 4 * target) width_ = std::max<V>(1, width_ / 2);
#ifdef PASGAL_DEBUG
    if (started_ && (lo < base || (lo == base && !rebuilt_)))
      throw std::logic_error("bfs levels processed out of order");
    started_ = true;
    rebuilt_ = false;
#endif
    base = lo;
    limit_ = hi;
    return true;
  }

  void clear_buckets() {
    for (auto& b : buckets_) b->pack_into(scratch_);
  }

  // Bottom-up rounds do not maintain buckets, so re-derive them from dist.
  void rebuild_buckets(V base) {
    parallel_for(0, g_.num_vertices(), [&](std::size_t i) {
      V d = dist_[i];
      if (d != kUnreached<V> && d >= base && scanned_[i] != d)
        buckets_[bucket_of(d, base)]->insert(static_cast<V>(i));
    });
  }

  const Graph<V>& g_;
  const VgcConfig& cfg_;
  BfsStats& stats_;
  std::vector<V> dist_;
  std::vector<V> scanned_;
  std::array<std::unique_ptr<HashBag<V>>, kBuckets> buckets_;
  std::vector<V> scratch_;
  bool started_ = false;
  bool rebuilt_ = false;
  V limit_ = 0;

 public:
  V width_ = 1;
};

}  // namespace detail

/// Exact hop distances from `source`, equal to a sequential queue BFS.
template <VertexIdType V>
DistanceArray<V> bfs_parallel(const Graph<V>& g, V source, const VgcConfig& cfg = {}, BfsStats* stats = nullptr) {
  if (static_cast<std::size_t>(source) >= g.num_vertices()) throw std::out_of_range("bfs source out of range");
  cfg.validate();
  BfsStats local;
  if (stats) *stats = {};
  detail::BfsRunner<V> runner(g, cfg, stats ? *stats : local);
  return DistanceArray<V>{source, runner.run(source)};
}

}  // namespace pasgal
