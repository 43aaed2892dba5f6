#include <doctest.h>

#include <deque>

#include "msgpass/distributions.hpp"
#include "msgpass/errors.hpp"
#include "msgpass/oracle.hpp"
#include "msgpass/rng.hpp"

using namespace msgpass;

namespace {

GlobalGraph path_graph(std::uint32_t n) {
  std::vector<EdgeRec> edges;
  for (std::uint32_t v = 1; v < n; ++v) edges.push_back(EdgeRec{v, v + 1});
  return GlobalGraph::from_edges(n, edges);
}

GlobalGraph cycle_graph(std::uint32_t n) {
  std::vector<EdgeRec> edges;
  for (std::uint32_t v = 1; v < n; ++v) edges.push_back(EdgeRec{v, v + 1});
  edges.push_back(EdgeRec{1, n});
  return GlobalGraph::from_edges(n, edges);
}

// independent component count by BFS flood fill (no union-find)
std::uint32_t cc_by_bfs(const GlobalGraph& g) {
  std::vector<std::uint8_t> seen(g.n + 1, 0);
  std::uint32_t count = 0;
  for (std::uint32_t s = 1; s <= g.n; ++s) {
    if (seen[s]) continue;
    ++count;
    std::deque<std::uint32_t> q{s};
    seen[s] = 1;
    while (!q.empty()) {
      const auto u = q.front();
      q.pop_front();
      for (auto v : g.adj[u]) {
        if (!seen[v]) {
          seen[v] = 1;
          q.push_back(v);
        }
      }
    }
  }
  return count;
}

// exhaustive odd-closed-walk detection, usable for n <= 8
bool has_odd_closed_walk(const GlobalGraph& g) {
  // walk of odd length from v back to v exists iff v's component is non-bipartite
  for (std::uint32_t start = 1; start <= g.n; ++start) {
    std::vector<std::vector<std::uint8_t>> reach(2, std::vector<std::uint8_t>(g.n + 1, 0));
    reach[0][start] = 1;
    for (std::uint32_t step = 1; step <= 2 * g.n + 1; ++step) {
      const auto& prev = reach[(step - 1) % 2];
      auto& cur = reach[step % 2];
      std::fill(cur.begin(), cur.end(), 0);
      for (std::uint32_t u = 1; u <= g.n; ++u) {
        if (!prev[u]) continue;
        for (auto v : g.adj[u]) cur[v] = 1;
      }
      if (step % 2 == 1 && cur[start]) return true;
    }
  }
  return false;
}

bool brute_force_triangle(const GlobalGraph& g) {
  for (std::uint32_t a = 1; a <= g.n; ++a) {
    for (std::uint32_t b = a + 1; b <= g.n; ++b) {
      for (std::uint32_t c = b + 1; c <= g.n; ++c) {
        if (g.has_edge(a, b) && g.has_edge(b, c) && g.has_edge(a, c)) return true;
      }
    }
  }
  return false;
}

}  // namespace

TEST_CASE("oracle basics") {
  CHECK(oracle::diameter(path_graph(5)) == 4);
  CHECK(oracle::num_cc(GlobalGraph::from_edges(7, {})) == 7);
  CHECK_FALSE(oracle::bipartite(cycle_graph(5)));
  CHECK(oracle::bipartite(cycle_graph(6)));
  CHECK(oracle::has_cycle(cycle_graph(4)));
  CHECK_FALSE(oracle::has_cycle(path_graph(6)));
  CHECK(oracle::degree(path_graph(5), 1) == 1);
  CHECK(oracle::degree(path_graph(5), 3) == 2);
  CHECK_FALSE(oracle::triangle_free(cycle_graph(3)));
  CHECK(oracle::triangle_free(cycle_graph(4)));
  CHECK(oracle::diameter(GlobalGraph::from_edges(3, {{1, 2}})) == std::nullopt);
}

TEST_CASE("f0 and linfty") {
  SetFamilyInstance inst;
  inst.k = 3;
  inst.n = 8;
  inst.sets = {{1, 2}, {2}, {2, 5}};
  CHECK(oracle::f0(inst) == 3);
  const auto [elt, freq] = oracle::linfty(inst);
  CHECK(elt == 2);
  CHECK(freq == 3);

  inst.sets = {{3, 4}, {1, 7}, {}};
  const auto [e2, f2] = oracle::linfty(inst);
  CHECK(f2 == 1);
  CHECK(e2 == 1);  // ties break toward the smallest element

  inst.sets = {{}, {}, {}};
  CHECK(oracle::f0(inst) == 0);
  CHECK_THROWS_AS(oracle::linfty(inst), EmptyInputError);
}

TEST_CASE("disjointness oracle") {
  DisjInstance d;
  d.r = 7;
  d.ell = 2;
  d.x = {1, 2};
  d.y = {3, 4};
  CHECK(oracle::disj(d) == 0);
  d.y = {2, 4};
  CHECK(oracle::disj(d) == 1);
}

TEST_CASE("self-consistency on random graphs") {
  SplitRng rng(77);
  for (int trial = 0; trial < 60; ++trial) {
    const std::uint32_t n = 2 + static_cast<std::uint32_t>(rng.below(7));
    const std::uint64_t max_m = static_cast<std::uint64_t>(n) * (n - 1) / 2;
    const std::uint64_t m = rng.below(max_m + 1);
    const auto g =
        GlobalGraph::from_partition(sample_gnm(n, m, 2, false, rng.next_u64()));

    CHECK(oracle::num_cc(g) == cc_by_bfs(g));
    if (!oracle::has_cycle(g)) {
      CHECK(g.edge_count() <= n - oracle::num_cc(g));  // forests have n - #cc edges
    }
    CHECK(oracle::bipartite(g) == !has_odd_closed_walk(g));
    CHECK(oracle::triangle_free(g) == !brute_force_triangle(g));
    CHECK(oracle::diameter(g) == oracle::diameter_floyd_warshall(g));
  }
}

TEST_CASE("bfs distances agree with diameter eccentricities") {
  SplitRng rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const std::uint32_t n = 3 + static_cast<std::uint32_t>(rng.below(10));
    const auto g =
        GlobalGraph::from_partition(sample_gnp(n, 0.5, 2, false, rng.next_u64()));
    const auto diam = oracle::diameter(g);
    if (!diam) continue;
    std::uint32_t worst = 0;
    for (std::uint32_t s = 1; s <= n; ++s) {
      for (auto d : oracle::bfs_distances(g, s)) worst = std::max(worst, std::uint32_t(std::max(0, d)));
    }
    CHECK(worst == *diam);
  }
}

TEST_CASE("duplicated partitions collapse to one union graph") {
  const auto inst = sample_gnm(10, 12, 4, true, 31337);
  const GlobalGraph g = GlobalGraph::from_partition(inst);
  CHECK(g.edge_count() == inst.distinct_edge_count());
  for (std::uint32_t u = 1; u <= g.n; ++u) {
    for (std::size_t i = 1; i < g.adj[u].size(); ++i) {
      CHECK(g.adj[u][i - 1] < g.adj[u][i]);  // sorted, deduplicated
    }
  }
}
