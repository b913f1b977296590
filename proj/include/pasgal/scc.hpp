#pragma once

// Reachability-based SCC with randomized divide and conquer.
//
// Every live vertex belongs to a cell; SCCs never straddle cells. A round
// picks a batch of ranked pivots and computes, for every vertex, the
// lowest-ranked pivot reaching it and the lowest-ranked pivot it reaches,
// both without leaving its cell. Vertices whose two labels agree belong to
// that pivot's SCC; the rest are regrouped by label pair. Searches run on the frontier engine, so their visit order is
// arbitrary. Trimming finalizes vertices without a live in- or out-neighbor
// in their own cell, which also disposes of singleton cells.

#include <oneapi/tbb/parallel_sort.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "pasgal/graph.hpp"
#include "pasgal/parallel.hpp"
#include "pasgal/random.hpp"
#include "pasgal/results.hpp"
#include "pasgal/vgc.hpp"

namespace pasgal {

/// Per-vertex cell and label state of a running SCC computation.
template <VertexIdType V>
struct SccState {
  static constexpr std::uint64_t kDone = ~std::uint64_t{0};

  std::vector<std::uint64_t> cell;  // kDone once the vertex is finalized
  std::vector<V> label;
  std::vector<V> live;  // unfinalized vertices, refreshed by compact()

  explicit SccState(std::size_t n) : cell(n, 0), label(n, kNoVertex<V>), live(n) {
    parallel_for(0, n, [&](std::size_t i) { live[i] = static_cast<V>(i); });
  }

  void finalize(V v, V component) {
    label[v] = component;
    cell[v] = kDone;
  }

  void compact() {
    live = parallel_pack_index<V>(
        live.size(), [&](std::size_t i) { return cell[live[i]] != kDone; }, [&](std::size_t i) { return live[i]; });
  }
};

/// Per-vertex rank of the lowest-ranked pivot that reaches it (forward) and
/// that it reaches (backward) within its cell; kNoVertex when none does.
template <VertexIdType V>
struct ReachLabels {
  std::vector<V> forward;
  std::vector<V> backward;

  explicit ReachLabels(std::size_t n) : forward(n, kNoVertex<V>), backward(n, kNoVertex<V>) {}

  /// Clears the labels of `live` only; finalized vertices are never read.
  void reset(std::span<const V> live) {
    parallel_for(0, live.size(), [&](std::size_t i) {
      forward[live[i]] = kNoVertex<V>;
      backward[live[i]] = kNoVertex<V>;
    });
  }
};

struct SccStats {
  std::size_t rounds = 0;   // pivot rounds
  std::size_t trimmed = 0;  // vertices finalized by trimming
  std::size_t pivots = 0;
};

/// Synchronous trimming: in each pass, every live vertex without an in- or
/// out-neighbor in its own cell becomes a singleton component. Runs until a
/// pass trims nothing or `max_rounds` passes are done. Returns the number of
/// vertices trimmed.
template <VertexIdType V>
std::size_t trim(const Graph<V>& g, SccState<V>& state, std::size_t max_rounds) {
  const Graph<V>* in = g.in_edges();
  if (!in) throw std::invalid_argument("scc needs a symmetric graph or an attached transpose");
  auto& cell = state.cell;
  auto has_peer = [&](const Graph<V>& h, V v) {
    std::uint64_t c = cell[v];
    for (V u : h.neighbors(v))
      if (u != v && atomic_load(cell[u]) == c) return true;
    return false;
  };
  std::size_t total = 0;
  for (std::size_t round = 0; round < max_rounds; ++round) {
    auto& live = state.live;
    std::vector<V> doomed = parallel_pack_index<V>(
        live.size(), [&](std::size_t i) { return !has_peer(g, live[i]) || !has_peer(*in, live[i]); },
        [&](std::size_t i) { return live[i]; });
    if (doomed.empty()) break;
    parallel_for(0, doomed.size(), [&](std::size_t i) { state.finalize(doomed[i], doomed[i]); });
    total += doomed.size();
    state.compact();
  }
  return total;
}

/// Label-correcting multi-source search: label[v] becomes the smallest rank
/// i such that pivots[i] reaches v without leaving v's cell. Pivots may
/// share a cell. A vertex is re-admitted whenever its label drops.
template <VertexIdType V>
void reach(const Graph<V>& g, std::span<const V> pivots, const std::vector<std::uint64_t>& cell,
           std::vector<V>& label, const VgcConfig& cfg) {
  parallel_for(0, pivots.size(), [&](std::size_t i) { write_min(label[pivots[i]], static_cast<V>(i)); });
  auto expand = [&](V x, V y, EdgeId) {
#ifdef PASGAL_DEBUG
    if (cell[x] == SccState<V>::kDone) throw std::logic_error("reach expanded a finalized vertex");
#endif
    return cell[y] == cell[x] && write_min(label[y], atomic_load(label[x]));
  };
  run_frontier_loop(g, pivots, expand, cfg);
}

/// Splits cells by the labels of the current round. A vertex whose forward
/// and backward labels name the same pivot is in that pivot's component and
/// is finalized. Other reached vertices move to a cell keyed by their label
/// pair; vertices in one component always share the pair, so every cell
/// stays a union of components (a hash collision merely merges two such
/// unions). Unreached vertices keep their cell. Returns the number of
/// vertices finalized.
template <VertexIdType V>
std::size_t refine(SccState<V>& state, const ReachLabels<V>& labels, std::span<const V> pivots, std::uint64_t salt) {
  auto& cell = state.cell;
  const auto& live = state.live;
  std::size_t finalized = parallel_count(0, live.size(), [&](std::size_t i) {
    V v = live[i];
    V f = labels.forward[v], b = labels.backward[v];
    if (f == kNoVertex<V> && b == kNoVertex<V>) return false;
    if (f == b) {
      state.finalize(v, pivots[f]);
      return true;
    }
    std::uint64_t c = hash_combine(hash_combine(salt, f), b) >> 1;  // never kDone
    cell[v] = c;
    return false;
  });
  state.compact();
  return finalized;
}

namespace detail {

// Pivots for one round: live vertices whose hash falls below the threshold,
// ranked by hash. Falls back to the single lowest hash when none qualifies.
template <VertexIdType V>
std::vector<V> choose_pivots(const SccState<V>& state, std::uint64_t salt, std::uint64_t threshold) {
  struct Candidate {
    std::uint64_t hash;
    V vertex;
  };
  const auto& live = state.live;
  auto hash_of = [&](V v) { return hash_combine(salt, static_cast<std::uint64_t>(v)); };
  std::vector<V> chosen = parallel_pack_index<V>(
      live.size(), [&](std::size_t i) { return hash_of(live[i]) <= threshold; },
      [&](std::size_t i) { return live[i]; });
  if (chosen.empty()) {
    V best = parallel_reduce<V>(
        0, live.size(), live[0], [&](std::size_t i) { return live[i]; },
        [&](V a, V b) { return hash_of(b) < hash_of(a) || (hash_of(b) == hash_of(a) && b < a) ? b : a; });
    return {best};
  }
  std::vector<Candidate> cands(chosen.size());
  parallel_for(0, chosen.size(), [&](std::size_t i) { cands[i] = {hash_of(chosen[i]), chosen[i]}; });
  oneapi::tbb::parallel_sort(cands.begin(), cands.end(), [](const Candidate& a, const Candidate& b) {
    return a.hash != b.hash ? a.hash < b.hash : a.vertex < b.vertex;
  });
  parallel_for(0, cands.size(), [&](std::size_t i) { chosen[i] = cands[i].vertex; });
  return chosen;
}

}  // namespace detail

/// Exact SCC partition. Labels are vertex ids of component members and are
/// a deterministic function of the graph and `seed`.
template <VertexIdType V>
SccLabels<V> scc_parallel(const Graph<V>& g, const VgcConfig& cfg = {}, std::uint64_t seed = 0,
                          SccStats* stats = nullptr) {
  const Graph<V>* in = g.in_edges();
  if (!in) throw std::invalid_argument("scc needs a symmetric graph or an attached transpose");
  cfg.validate();
  SccStats local;
  SccStats& st = stats ? *stats : local;
  st = {};

  constexpr std::size_t kInitialTrim = 3;
  const std::size_t n = g.num_vertices();
  SccState<V> state(n);
  ReachLabels<V> labels(n);
  st.trimmed += trim(g, state, kInitialTrim);

  for (std::size_t round = 0; !state.live.empty(); ++round) {
    // Round 0 uses one pivot; afterwards the expected pivot count doubles.
    std::uint64_t salt = hash_combine(seed, round);
    std::uint64_t threshold = 0;
    if (round > 0) {
      double p = std::ldexp(1.0, static_cast<int>(std::min<std::size_t>(round, 62))) /
                 static_cast<double>(state.live.size());
      threshold = p >= 1.0 ? ~std::uint64_t{0} : static_cast<std::uint64_t>(std::ldexp(p, 64));
    }
    std::vector<V> pivots = detail::choose_pivots(state, salt, threshold);
    ++st.rounds;
    st.pivots += pivots.size();
    labels.reset(state.live);
    std::span<const V> pv(pivots);
    par_do([&] { reach(g, pv, state.cell, labels.forward, cfg); },
           [&] { reach(*in, pv, state.cell, labels.backward, cfg); });
    refine(state, labels, pv, hash_combine(salt, 0x5cc));
    st.trimmed += trim(g, state, 1);
  }
  SccLabels<V> out{std::move(state.label), 0};
  out.num_components = static_cast<std::size_t>(
      parallel_count(0, n, [&](std::size_t v) { return out.label[v] == static_cast<V>(v); }));
  return out;
}

}  // namespace pasgal
