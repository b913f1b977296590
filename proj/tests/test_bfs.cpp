#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "pasgal/bfs.hpp"
#include "pasgal/oracles.hpp"
#include "support.hpp"

using namespace pasgal;
using pasgal::test::G32;

namespace {
constexpr std::uint32_t kU = kUnreached<std::uint32_t>;
}

TEST_CASE("small examples") {
  G32 path = test::path_graph(5, false);
  CHECK(bfs_parallel(path, 0u).dist == std::vector<std::uint32_t>{0, 1, 2, 3, 4});
  CHECK(bfs_parallel(path, 2u).dist == std::vector<std::uint32_t>{kU, kU, 0, 1, 2});

  G32 iso = test::make_graph(3, {});
  CHECK(bfs_parallel(iso, 1u).dist == std::vector<std::uint32_t>{kU, 0, kU});

  // Diamond with a long detour: 0->1->3, 0->2->4->5->3.
  G32 d = test::make_graph(6, {{0, 1}, {1, 3}, {0, 2}, {2, 4}, {4, 5}, {5, 3}});
  for (std::size_t tau : {1, 2, 1024}) {
    VgcConfig cfg;
    cfg.tau = tau;
    CHECK(bfs_parallel(d, 0u, cfg).dist == std::vector<std::uint32_t>{0, 1, 1, 2, 2, 3});
  }
}

TEST_CASE("clique of 8 reports distance 1 everywhere") {
  G32 k8 = test::clique_graph(8);
  auto r = bfs_parallel(k8, 3u);
  for (std::uint32_t v = 0; v < 8; ++v) CHECK(r.dist[v] == (v == 3 ? 0u : 1u));
  CHECK(r.source == 3u);
}

TEST_CASE("matches queue BFS on random graphs") {
  for (std::uint64_t s = 0; s < 200; ++s) {
    auto cg = test::corpus_graph(s);
    const G32& g = cg.graph;
    std::uint32_t src = test::pick_source(g, s);
    auto want = seq::bfs_queue(g, src);
    VgcConfig cfg;
    cfg.tau = std::size_t{1} << (s % 11);
    CHECK_MESSAGE(bfs_parallel(g, src, cfg) == want, cg.name);
  }
}

TEST_CASE("dense threshold 0 and 1 give identical distances") {
  for (std::uint64_t s = 0; s < 40; ++s) {
    G32 g = with_transpose(gen_random<std::uint32_t>(50 + 40 * s, 1.0 + static_cast<double>(s % 6), s, s % 2 == 0));
    std::uint32_t src = test::pick_source(g, s);
    auto want = seq::bfs_queue(g, src);
    VgcConfig all_dense, never;
    all_dense.dense_threshold = 0.0;
    never.dense_threshold = 1.0;
    BfsStats sd, sn;
    CHECK(bfs_parallel(g, src, all_dense, &sd) == want);
    CHECK(bfs_parallel(g, src, never, &sn) == want);
    CHECK(sn.dense_rounds == 0);
    CHECK(sd.dense_rounds == sd.rounds);
  }
}

TEST_CASE("dense rounds need in-edges") {
  G32 g = gen_random<std::uint32_t>(100, 4, 1, true);
  std::vector<std::uint32_t> dist(100, kU);
  CHECK_THROWS_AS(bfs_round_dense(g, 0u, std::span<std::uint32_t>(dist)), std::invalid_argument);
  // Without in-edges the search silently stays top-down.
  VgcConfig cfg;
  cfg.dense_threshold = 0.0;
  BfsStats st;
  CHECK(bfs_parallel(g, 0u, cfg, &st) == seq::bfs_queue(g, 0u));
  CHECK(st.dense_rounds == 0);
}

TEST_CASE("bottom-up step on an empty level finds nothing") {
  G32 g = test::path_graph(6, true);
  std::vector<std::uint32_t> dist{0, 1, kU, kU, kU, kU};
  CHECK(bfs_round_dense(g, 5u, std::span<std::uint32_t>(dist)).empty());
  CHECK(dist[2] == kU);
  auto next = bfs_round_dense(g, 1u, std::span<std::uint32_t>(dist));
  CHECK(next == std::vector<std::uint32_t>{2});
  CHECK(dist[2] == 2);
}

TEST_CASE("distances satisfy the edge inequality and have parents") {
  for (std::uint64_t s = 200; s < 260; ++s) {
    const G32 g = test::corpus_graph(s).graph;
    std::uint32_t src = test::pick_source(g, s);
    auto r = bfs_parallel(g, src);
    std::vector<std::uint8_t> has_parent(g.num_vertices(), 0);
    for (std::uint32_t u = 0; u < g.num_vertices(); ++u) {
      if (r.dist[u] == kU) continue;
      for (auto v : g.neighbors(u)) {
        REQUIRE(r.dist[v] != kU);
        CHECK(r.dist[v] <= r.dist[u] + 1);
        if (r.dist[v] == r.dist[u] + 1) has_parent[v] = 1;
      }
    }
    for (std::uint32_t v = 0; v < g.num_vertices(); ++v)
      if (r.dist[v] != kU && v != src) CHECK(has_parent[v]);
    CHECK(r.dist[src] == 0);
  }
}

TEST_CASE("result does not depend on tau or worker count") {
  G32 g = gen_grid<std::uint32_t>(60, 45);
  auto want = seq::bfs_queue(g, 7u);
  for (int threads : {1, 2, 4})
    for (std::size_t tau : {1, 3, 64, 5000})
      with_workers(threads, [&] {
        VgcConfig cfg;
        cfg.tau = tau;
        CHECK(bfs_parallel(g, 7u, cfg) == want);
      });
}

TEST_CASE("rounds shrink with tau on a long path") {
  G32 g = test::path_graph(20000, false);
  VgcConfig one, big;
  one.tau = 1;
  big.tau = 1024;
  BfsStats s1, sb;
  CHECK(bfs_parallel(g, 0u, one, &s1) == seq::bfs_queue(g, 0u));
  CHECK(bfs_parallel(g, 0u, big, &sb) == seq::bfs_queue(g, 0u));
  CHECK(s1.rounds == 20000);
  CHECK(sb.rounds * 256 <= s1.rounds);
}

TEST_CASE("64-bit vertex ids") {
  auto g = gen_grid<std::uint64_t>(30, 30);
  auto r = bfs_parallel(g, std::uint64_t{0});
  CHECK(r.dist[899] == 58);
  CHECK(r == seq::bfs_queue(g, std::uint64_t{0}));
}

TEST_CASE("errors") {
  G32 g = test::path_graph(4, false);
  CHECK_THROWS_AS(bfs_parallel(g, 4u), std::out_of_range);
  VgcConfig bad;
  bad.tau = 0;
  CHECK_THROWS_AS(bfs_parallel(g, 0u, bad), std::invalid_argument);
}
