#pragma once

// Frontier loop with vertical granularity control. Instead of scanning one
// hop per frontier vertex, each task runs a bounded local search that keeps
// going until it has processed at least tau vertices. Remaining work goes to
// the next frontier.

#include <atomic>
#include <concepts>
#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

#include "pasgal/graph.hpp"
#include "pasgal/hashbag.hpp"
#include "pasgal/parallel.hpp"

namespace pasgal {

struct VgcConfig {
  /// Minimum vertices processed per local search.
  std::size_t tau = 512;
  /// Cap on the local working set; 0 means 4 * tau.
  std::size_t max_local_queue = 0;
  /// Frontier out-degree sum, as a fraction of m, above which BFS switches to
  /// bottom-up rounds. 0 forces bottom-up, 1 disables it.
  double dense_threshold = 0.05;

  std::size_t local_queue_limit() const { return max_local_queue ? max_local_queue : 4 * tau; }

  void validate() const {
    if (tau < 1) throw std::invalid_argument("tau must be >= 1");
    if (local_queue_limit() < tau) throw std::invalid_argument("max_local_queue must be >= tau");
    if (!(dense_threshold >= 0.0 && dense_threshold <= 1.0))
      throw std::invalid_argument("dense_threshold must lie in [0, 1]");
  }
};

/// Snapshot handed to round observers.
template <VertexIdType V>
struct FrontierRound {
  std::size_t index;
  std::span<const V> frontier;
  std::size_t size() const { return frontier.size(); }
};

// A visitor supplies
//   bool expand(V u, V v, EdgeId e)  admission decision for edge u -> v; must
//                                    claim v atomically (write-min, flags)
// and optionally
//   bool begin(V u)        whether a popped vertex still needs processing
//   bool keep_local(V v)   whether an admitted vertex may stay in the task
// A bare callable f(u, v) is accepted as expand.
namespace detail {

template <typename Vis, typename V>
bool call_expand(Vis& vis, V u, V v, EdgeId e) {
  if constexpr (requires { vis.expand(u, v, e); }) return vis.expand(u, v, e);
  else if constexpr (std::invocable<Vis&, V, V, EdgeId>) return vis(u, v, e);
  else return vis(u, v);
}

template <typename Vis, typename V>
bool call_begin(Vis& vis, V u) {
  if constexpr (requires { vis.begin(u); }) return vis.begin(u);
  else return true;
}

template <typename Vis, typename V>
bool call_keep_local(Vis& vis, V v) {
  if constexpr (requires { vis.keep_local(v); }) return vis.keep_local(v);
  else return true;
}

template <VertexIdType V>
std::vector<V>& local_stack() {
  thread_local std::vector<V> stack;
  return stack;
}

}  // namespace detail

/// Order in which a local search pops its working set.
enum class LocalOrder { kStack, kQueue };

/// Bounded multi-hop search from `v`, LIFO by default. Stops popping once
/// `tau` vertices have been processed; admitted vertices that do not fit in
/// the working set, and whatever is left in it at the end, go to `emit`.
/// Returns the number of vertices processed. FIFO order keeps tentative
/// distances of label-correcting searches close to exact.
template <VertexIdType V, typename Visitor, typename Emit>
std::size_t local_search(const Graph<V>& g, V v, Visitor& vis, const VgcConfig& cfg, Emit&& emit,
                         std::vector<V>& work, LocalOrder order = LocalOrder::kStack) {
  const std::size_t limit = cfg.local_queue_limit();
  const bool fifo = order == LocalOrder::kQueue;
  work.clear();
  work.push_back(v);
  std::size_t head = 0, processed = 0;
  while (head < work.size() && processed < cfg.tau) {
    V x;
    if (fifo) {
      x = work[head++];
    } else {
      x = work.back();
      work.pop_back();
    }
    if (!detail::call_begin(vis, x)) continue;
    ++processed;
    for (EdgeId e = g.begin_edge(x), end = g.end_edge(x); e < end; ++e) {
      V y = g.target(e);
      if (!detail::call_expand(vis, x, y, e)) continue;
      if (work.size() - head < limit && detail::call_keep_local(vis, y)) work.push_back(y);
      else emit(y);
    }
  }
  for (std::size_t i = head; i < work.size(); ++i) emit(work[i]);
  work.clear();
  return processed;
}

template <VertexIdType V, typename Visitor>
std::size_t local_search(const Graph<V>& g, V v, Visitor& vis, const VgcConfig& cfg, HashBag<V>& next) {
  return local_search(g, v, vis, cfg, [&next](V y) { next.insert(y); }, detail::local_stack<V>());
}

#ifdef PASGAL_DEBUG
namespace detail {
// Counts admissions per vertex and fails loudly when a visitor keeps
// re-admitting the same vertex.
template <VertexIdType V, typename Visitor>
struct AdmissionGuard {
  Visitor& inner;
  std::vector<std::uint32_t>& counts;
  std::size_t bound;

  bool begin(V u) { return call_begin(inner, u); }
  bool keep_local(V v) { return call_keep_local(inner, v); }
  bool expand(V u, V v, EdgeId e) {
    if (!call_expand(inner, u, v, e)) return false;
    auto c = std::atomic_ref<std::uint32_t>(counts[v]).fetch_add(1, std::memory_order_relaxed) + 1;
    if (c > bound) throw std::logic_error("frontier visitor admitted vertex " + std::to_string(v) + " too often");
    return true;
  }
};
}  // namespace detail
#endif

/// Runs the frontier loop from `initial` until the frontier is empty and
/// returns the number of rounds. Initial vertices must already be claimed
/// by the caller. `on_round` sees every frontier before it is processed.
template <VertexIdType V, typename Visitor>
std::size_t run_frontier_loop(const Graph<V>& g, std::span<const V> initial, Visitor& visitor,
                              const VgcConfig& cfg,
                              const std::type_identity_t<std::function<void(const FrontierRound<V>&)>>& on_round = {}) {
  cfg.validate();
#ifdef PASGAL_DEBUG
  std::vector<std::uint32_t> admissions(g.num_vertices(), 0);
  detail::AdmissionGuard<V, Visitor> vis{visitor, admissions, g.num_vertices() + 1};
#else
  Visitor& vis = visitor;
#endif
  HashBag<V> next;
  std::vector<V> frontier(initial.begin(), initial.end());
  std::size_t rounds = 0;
  while (!frontier.empty()) {
    if (on_round) on_round(FrontierRound<V>{rounds, frontier});
    ++rounds;
    parallel_for(0, frontier.size(), [&](std::size_t i) {
      local_search(g, frontier[i], vis, cfg, [&next](V y) { next.insert(y); }, detail::local_stack<V>());
    });
    next.pack_into(frontier);
  }
  return rounds;
}

}  // namespace pasgal
