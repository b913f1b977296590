#pragma once

// Test corpus and brute-force reference computations. The brute-force
// routines are deliberately naive and share no code with the library's
// algorithms or oracles.

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <limits>
#include <map>
#include <queue>
#include <string>
#include <utility>
#include <vector>

#include "pasgal/generators.hpp"
#include "pasgal/graph.hpp"
#include "pasgal/graph_ops.hpp"
#include "pasgal/random.hpp"

namespace pasgal::test {

using G32 = Graph<std::uint32_t>;

struct CorpusGraph {
  std::string name;
  G32 graph;  // directed; symmetric for the undirected families
};

inline G32 make_graph(std::size_t n, const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges,
                      bool symmetric = false) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> all = edges;
  if (symmetric)
    for (auto [u, v] : edges) all.emplace_back(v, u);
  return graph_from_edges<std::uint32_t>(n, std::move(all), true, symmetric);
}

inline G32 path_graph(std::size_t n, bool both_ways) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> e;
  for (std::size_t i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  return make_graph(n, e, both_ways);
}

inline G32 star_graph(std::size_t n, bool both_ways) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> e;
  for (std::size_t i = 1; i < n; ++i) e.emplace_back(0, i);
  return make_graph(n, e, both_ways);
}

inline G32 clique_graph(std::size_t n) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> e;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) e.emplace_back(i, j);
  return make_graph(n, e, false);
}

inline G32 cycle_graph(std::size_t n) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> e;
  for (std::size_t i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
  return make_graph(n, e, false);
}

// Blocks of dense random digraphs or cycles, linked by a sparse random graph
// over blocks. Exercises SCCs of many sizes and long cut-vertex chains.
inline G32 two_level_graph(std::uint64_t seed, std::size_t blocks, std::size_t block_size, bool symmetric) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> e;
  std::size_t n = blocks * block_size;
  std::uint64_t k = 0;
  auto rnd = [&](std::size_t mod) { return static_cast<std::size_t>(hash_combine(seed, k++) % mod); };
  for (std::size_t b = 0; b < blocks; ++b) {
    std::size_t base = b * block_size;
    if (b % 2 == 0) {
      for (std::size_t i = 0; i < block_size; ++i) e.emplace_back(base + i, base + (i + 1) % block_size);
    } else {
      for (std::size_t i = 0; i < 2 * block_size; ++i) e.emplace_back(base + rnd(block_size), base + rnd(block_size));
    }
  }
  for (std::size_t i = 0; i < blocks + blocks / 2; ++i) {
    std::size_t a = rnd(blocks), b = rnd(blocks);
    e.emplace_back(a * block_size + rnd(block_size), b * block_size + rnd(block_size));
  }
  std::erase_if(e, [](auto& p) { return p.first == p.second; });
  return make_graph(n, e, symmetric);
}

/// Graph number i of the shared corpus, n <= 2000.
inline CorpusGraph corpus_graph(std::size_t i) {
  constexpr double kDensities[] = {0.5, 1, 2, 8};
  std::uint64_t seed = hash_combine(0xC0FFEE, i);
  std::size_t kind = i % 8;
  std::size_t size = 1 + static_cast<std::size_t>(hash_combine(seed, 1) % 2000);
  double d = kDensities[(i / 8) % 4];
  switch (kind) {
    case 0: return {"er-dir-" + std::to_string(i), gen_random<std::uint32_t>(size, d, seed, true)};
    case 1: return {"er-und-" + std::to_string(i), gen_random<std::uint32_t>(size, d, seed, false)};
    case 2: {
      std::size_t r = 1 + hash_combine(seed, 2) % 50, c = 1 + hash_combine(seed, 3) % 50;
      return {"grid-" + std::to_string(r) + "x" + std::to_string(c), gen_grid<std::uint32_t>(r, c)};
    }
    case 3: return {"chain-" + std::to_string(size), path_graph(size, (i / 8) % 2 == 1)};
    case 4: return {"star-" + std::to_string(size), star_graph(size, (i / 8) % 2 == 1)};
    case 5: {
      std::size_t k = 1 + hash_combine(seed, 4) % 45;
      return {"clique-" + std::to_string(k), (i / 8) % 2 ? clique_graph(k) : cycle_graph(k)};
    }
    case 6: {
      std::size_t blocks = 1 + hash_combine(seed, 5) % 40, bs = 2 + hash_combine(seed, 6) % 40;
      return {"two-level-dir-" + std::to_string(i), two_level_graph(seed, blocks, bs, false)};
    }
    default: {
      std::size_t blocks = 1 + hash_combine(seed, 5) % 40, bs = 2 + hash_combine(seed, 6) % 40;
      return {"two-level-und-" + std::to_string(i), two_level_graph(seed, blocks, bs, true)};
    }
  }
}

inline std::uint32_t pick_source(const G32& g, std::uint64_t salt) {
  return static_cast<std::uint32_t>(hash_combine(salt, g.num_edges()) % g.num_vertices());
}

// ---- brute force ----------------------------------------------------------

inline constexpr std::uint64_t kInf = std::numeric_limits<std::uint64_t>::max();

/// All-pairs hop distances by Floyd-Warshall.
inline std::vector<std::vector<std::uint64_t>> floyd_warshall(const G32& g) {
  std::size_t n = g.num_vertices();
  std::vector<std::vector<std::uint64_t>> d(n, std::vector<std::uint64_t>(n, kInf));
  for (std::size_t u = 0; u < n; ++u) {
    d[u][u] = 0;
    for (auto v : g.neighbors(static_cast<std::uint32_t>(u))) d[u][v] = std::min<std::uint64_t>(d[u][v], 1);
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (d[i][k] != kInf)
        for (std::size_t j = 0; j < n; ++j)
          if (d[k][j] != kInf) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
  return d;
}

/// reach[u][v]: v reachable from u, by a separate search per vertex.
inline std::vector<std::vector<char>> reachability(const G32& g) {
  std::size_t n = g.num_vertices();
  std::vector<std::vector<char>> r(n, std::vector<char>(n, 0));
  for (std::size_t s = 0; s < n; ++s) {
    std::vector<std::uint32_t> todo{static_cast<std::uint32_t>(s)};
    r[s][s] = 1;
    while (!todo.empty()) {
      auto u = todo.back();
      todo.pop_back();
      for (auto v : g.neighbors(u))
        if (!r[s][v]) r[s][v] = 1, todo.push_back(v);
    }
  }
  return r;
}

/// Connected component ids of an undirected graph with vertex `removed`
/// deleted (pass n to delete nothing). Deleted vertex gets kInf.
inline std::vector<std::uint64_t> components_without(const G32& g, std::size_t removed) {
  std::size_t n = g.num_vertices();
  std::vector<std::uint64_t> comp(n, kInf);
  std::uint64_t next = 0;
  for (std::size_t s = 0; s < n; ++s) {
    if (s == removed || comp[s] != kInf) continue;
    std::vector<std::uint32_t> todo{static_cast<std::uint32_t>(s)};
    comp[s] = next;
    while (!todo.empty()) {
      auto u = todo.back();
      todo.pop_back();
      for (auto v : g.neighbors(u))
        if (v != removed && comp[v] == kInf) comp[v] = next, todo.push_back(v);
    }
    ++next;
  }
  return comp;
}

inline std::size_t count_components(const std::vector<std::uint64_t>& comp) {
  std::uint64_t k = 0;
  for (auto c : comp)
    if (c != kInf) k = std::max(k, c + 1);
  return k;
}

/// Articulation flags by removing each vertex and counting components.
inline std::vector<std::uint8_t> articulation_brute(const G32& g) {
  std::size_t n = g.num_vertices();
  std::size_t base = count_components(components_without(g, n));
  std::vector<std::uint8_t> out(n, 0);
  for (std::size_t x = 0; x < n; ++x) {
    if (g.degree(static_cast<std::uint32_t>(x)) == 0) continue;
    out[x] = count_components(components_without(g, x)) > base;
  }
  return out;
}

/// Block label of every CSR slot: two edges share a block iff they are in
/// one connected component and no single vertex separates them.
inline std::vector<std::uint64_t> bcc_edge_blocks_brute(const G32& g) {
  std::size_t n = g.num_vertices(), m = g.num_edges();
  std::vector<std::vector<std::uint64_t>> without(n + 1);
  for (std::size_t x = 0; x <= n; ++x) without[x] = components_without(g, x);
  std::map<std::vector<std::uint64_t>, std::uint64_t> ids;
  std::vector<std::uint64_t> out(m);
  for (std::uint32_t u = 0; u < n; ++u) {
    for (EdgeId e = g.begin_edge(u); e < g.end_edge(u); ++e) {
      std::uint32_t w = g.target(e);
      std::vector<std::uint64_t> sig(n + 1);
      for (std::size_t x = 0; x <= n; ++x) sig[x] = x == u ? without[x][w] : without[x][u];
      auto [it, inserted] = ids.try_emplace(sig, ids.size());
      out[e] = it->second;
    }
  }
  return out;
}

/// Single-source distances by Bellman-Ford.
inline std::vector<double> bellman_ford(const G32& g, std::size_t source) {
  std::size_t n = g.num_vertices();
  std::vector<double> d(n, std::numeric_limits<double>::infinity());
  d[source] = 0;
  for (std::size_t it = 0; it + 1 < n || it == 0; ++it) {
    bool changed = false;
    for (std::size_t u = 0; u < n; ++u) {
      if (d[u] == std::numeric_limits<double>::infinity()) continue;
      auto uu = static_cast<std::uint32_t>(u);
      for (EdgeId e = g.begin_edge(uu); e < g.end_edge(uu); ++e) {
        double nd = d[u] + static_cast<double>(g.weight(e));
        if (nd < d[g.target(e)]) d[g.target(e)] = nd, changed = true;
      }
    }
    if (!changed) break;
  }
  return d;
}

/// Scratch directory unique to the calling test binary.
inline std::filesystem::path temp_dir(const std::string& tag) {
  auto dir = std::filesystem::temp_directory_path() / ("pasgal-test-" + tag);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace pasgal::test
