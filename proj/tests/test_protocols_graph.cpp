#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <set>

#include "msgpass/distributions.hpp"
#include "msgpass/errors.hpp"
#include "msgpass/oracle.hpp"
#include "msgpass/payload.hpp"
#include "msgpass/protocols.hpp"
#include "msgpass/rng.hpp"
#include "msgpass/union_find.hpp"

using namespace msgpass;

namespace {

GraphPartitionInstance graph_of(std::uint32_t n, int k, bool dup,
                                std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> sites) {
  GraphPartitionInstance g;
  g.n = n;
  g.k = k;
  g.allow_duplication = dup;
  g.local_edges.assign(k, {});
  for (int i = 0; i < static_cast<int>(sites.size()); ++i) {
    for (auto [a, b] : sites[i]) g.local_edges[i].push_back(make_edge(a, b));
    std::sort(g.local_edges[i].begin(), g.local_edges[i].end());
  }
  return g;
}

ThreshInstance planted_thresh(bool positive) {
  ThreshInstance t;
  t.r = 7;
  t.theta = 5;
  t.witness_Y = std::vector<std::uint32_t>{1, 2};
  std::vector<std::vector<std::uint32_t>> supports = {{3, 4}, {5, 6}, {6, 7}, {4, 7}};
  if (positive) supports.push_back({1, 3});
  t.k = static_cast<int>(supports.size());
  t.rows.assign(t.k, std::vector<std::uint8_t>(t.r, 0));
  for (int i = 0; i < t.k; ++i) {
    for (std::uint32_t e : supports[i]) t.rows[i][e - 1] = 1;
  }
  return t;
}

}  // namespace

TEST_CASE("degree_nodup: exact answer at exact cost") {
  // star centred at 1 with 6 spokes split over 3 sites
  const auto g = graph_of(8, 3, false, {{{1, 2}, {1, 3}}, {{1, 4}, {1, 5}}, {{1, 6}, {1, 7}}});
  const auto r = degree_nodup(g, 1, 0);
  CHECK(std::get<DegreeAnswer>(r.answer).value == 6);
  CHECK(r.ledger.total_bits == (3 - 1) * ceil_log2(8));  // (k-1)*ceil(log2 n)
  CHECK(r.ledger.total_messages == 2);

  CHECK(std::get<DegreeAnswer>(degree_nodup(g, 8, 0).answer).value == 0);  // isolated vertex
  CHECK_THROWS_AS(degree_nodup(g, 9, 0), UsageError);

  auto dup = g;
  dup.allow_duplication = true;
  CHECK_THROWS_AS(degree_nodup(dup, 1, 0), UsageError);
}

TEST_CASE("degree_nodup matches the oracle on random partitions") {
  SplitRng rng(80);
  for (int t = 0; t < 50; ++t) {
    const auto g = sample_gnp(20, 0.3, 5, false, rng.next_u64());
    const GlobalGraph gg = GlobalGraph::from_partition(g);
    for (std::uint32_t v = 1; v <= 20; v += 3) {
      CHECK(std::get<DegreeAnswer>(degree_nodup(g, v, 0).answer).value == oracle::degree(gg, v));
    }
  }
}

TEST_CASE("degree_dup: union of neighbour lists") {
  // two remote sites hold the same 3 neighbours of vertex 1, n = 16
  const auto g = graph_of(
      16, 3, true, {{}, {{1, 2}, {1, 3}, {1, 4}}, {{1, 2}, {1, 3}, {1, 4}}});
  const auto r = degree_dup(g, 1, 0);
  CHECK(std::get<DegreeAnswer>(r.answer).value == 3);
  // each remote list: prefix ceil(log2((n-1)+1)) = 4 plus 3 ids of 4 bits
  CHECK(r.ledger.total_bits == 2 * (4 + 12));
  CHECK(std::get<DegreeAnswer>(degree_dup(g, 16, 0).answer).value == 0);

  // a duplicated star yields the same answer as the duplication-free one, at higher cost
  const auto nodup = graph_of(16, 2, false, {{{1, 2}, {1, 3}}, {{1, 4}}});
  auto dup = nodup;
  dup.allow_duplication = true;
  dup.local_edges[1] = {make_edge(1, 2), make_edge(1, 3), make_edge(1, 4)};
  CHECK(std::get<DegreeAnswer>(degree_dup(nodup, 1, 0).answer).value ==
        std::get<DegreeAnswer>(degree_dup(dup, 1, 0).answer).value);
  CHECK(degree_dup(dup, 1, 0).ledger.total_bits > degree_dup(nodup, 1, 0).ledger.total_bits);
}

TEST_CASE("cycle_free_nodup: short-circuit when m >= n") {
  // 6 vertices, 7 edges: a cycle must exist; only counts are ever sent
  const auto g = graph_of(
      6, 3, false,
      {{{1, 2}, {2, 3}, {3, 4}}, {{4, 5}, {5, 6}, {1, 6}}, {{2, 6}}});
  const auto r = cycle_free_nodup(g, 0);
  CHECK_FALSE(std::get<BoolAnswer>(r.answer).value);
  for (const auto& e : r.transcript.entries) {
    CHECK(e.round == 0);
    CHECK(e.payload.kind() == PayloadKind::UInt);
  }
  // short-circuit cost stays within k * ceil(log2(m+1))
  CHECK(r.ledger.total_bits <= 3 * ceil_log2(7 + 1));
}

TEST_CASE("cycle_free_nodup: forest path with exact cost formula") {
  const auto g = graph_of(8, 3, false, {{{1, 2}, {2, 3}}, {{4, 5}}, {{6, 7}}});
  const auto r = cycle_free_nodup(g, 0);
  CHECK(std::get<BoolAnswer>(r.answer).value);
  // phase 1: counts declared at their own value; phase 2: 1-bit go-aheads,
  // then edge lists with capacity n-1
  std::uint64_t expect = 0;
  const std::uint64_t m_counts[] = {2, 1, 1};
  for (int i = 1; i < 3; ++i) expect += std::max<std::uint64_t>(1, ceil_log2(m_counts[i] + 1));
  expect += 2 * 1;  // go-ahead bits
  for (int i = 1; i < 3; ++i) expect += ceil_log2(8) + m_counts[i] * 2 * ceil_log2(8);
  CHECK(r.ledger.total_bits == expect);

  // triangle split across three sites
  const auto tri = graph_of(3, 3, false, {{{1, 2}}, {{2, 3}}, {{1, 3}}});
  CHECK_FALSE(std::get<BoolAnswer>(cycle_free_nodup(tri, 0).answer).value);

  auto dup = g;
  dup.allow_duplication = true;
  CHECK_THROWS_AS(cycle_free_nodup(dup, 0), UsageError);
}

TEST_CASE("cycle_free_dup: local cycle reported with a single bit") {
  // site 3 (index 2) holds a triangle; nobody ships edges
  const auto g = graph_of(8, 4, true,
                          {{{1, 2}}, {{2, 3}}, {{5, 6}, {6, 7}, {5, 7}}, {}});
  const auto r = cycle_free_dup(g, 0);
  CHECK_FALSE(std::get<BoolAnswer>(r.answer).value);
  REQUIRE(r.transcript.entries.size() == 1);
  CHECK(r.transcript.entries[0].src == 2);
  CHECK(r.transcript.entries[0].payload.bit_length() == 1);

  // duplicated forest: all sites ship, answer stays cycle-free
  const auto forest = graph_of(6, 2, true, {{{1, 2}, {2, 3}}, {{1, 2}, {4, 5}}});
  CHECK(std::get<BoolAnswer>(cycle_free_dup(forest, 0).answer).value);

  // cross-site cycle with duplication: no local alarm, caught at the first site
  const auto cross = graph_of(4, 2, true, {{{1, 2}, {2, 3}}, {{1, 3}}});
  CHECK_FALSE(std::get<BoolAnswer>(cycle_free_dup(cross, 0).answer).value);
}

TEST_CASE("sigma_c2 instances drive cycle_free_dup to the right answer") {
  const auto neg = build_cycle_k(planted_thresh(false));
  CHECK(std::get<BoolAnswer>(cycle_free_dup(neg, 0).answer).value);
  const auto pos = build_cycle_k(planted_thresh(true));
  CHECK_FALSE(std::get<BoolAnswer>(cycle_free_dup(pos, 0).answer).value);
}

TEST_CASE("connectivity and num_cc") {
  const auto isolated = graph_of(5, 2, false, {{}, {}});
  CHECK(std::get<CcCountAnswer>(num_cc(isolated, 0).answer).value == 5);
  CHECK_FALSE(std::get<BoolAnswer>(connectivity(isolated, 0).answer).value);

  const auto conn = build_connectivity_nodup(planted_thresh(true));
  CHECK(std::get<BoolAnswer>(connectivity(conn, 0).answer).value);
  const auto disc = build_connectivity_nodup(planted_thresh(false));
  CHECK_FALSE(std::get<BoolAnswer>(connectivity(disc, 0).answer).value);

  SplitRng rng(90);
  for (int t = 0; t < 60; ++t) {
    const auto g = sample_gnp(50, 0.1, 8, t % 2 == 1, rng.next_u64());
    const GlobalGraph gg = GlobalGraph::from_partition(g);
    CHECK(std::get<CcCountAnswer>(num_cc(g, 0).answer).value == oracle::num_cc(gg));
  }
}

TEST_CASE("forest shipping preserves the component structure") {
  // the union of per-site spanning forests must have the same components as G
  SplitRng rng(91);
  for (int t = 0; t < 40; ++t) {
    const auto g = sample_gnm(24, 20, 4, false, rng.next_u64());
    // reconstruct what the sites ship, directly from the transcript
    const auto r = connectivity(g, 0);
    UnionFind from_ship(g.n + 1);
    for (const EdgeRec& e : g.local_edges[0]) from_ship.unite(e.u, e.v);
    for (const auto& entry : r.transcript.entries) {
      for (const auto& [u, v] : entry.payload.edges()) from_ship.unite(u, v);
    }
    UnionFind full(g.n + 1);
    for (const auto& site : g.local_edges) {
      for (const EdgeRec& e : site) full.unite(e.u, e.v);
    }
    CHECK(from_ship.components() == full.components());
  }
}

TEST_CASE("bfs_tree: layers, parents and odd-cycle flag") {
  const auto path = graph_of(3, 2, false, {{{1, 2}}, {{2, 3}}});
  const auto r = bfs_tree(path, 1, 0);
  const auto& ans = std::get<BfsAnswer>(r.answer);
  CHECK(ans.layer == std::vector<std::int32_t>{0, 1, 2});
  CHECK(ans.parent == std::vector<std::uint32_t>{0, 1, 2});
  CHECK_FALSE(ans.odd_cycle_found);

  // rooted at an isolated vertex
  const auto iso = graph_of(4, 2, false, {{{1, 2}}, {}});
  const auto r2 = bfs_tree(iso, 4, 0);
  const auto& a2 = std::get<BfsAnswer>(r2.answer);
  CHECK(a2.layer == std::vector<std::int32_t>{-1, -1, -1, 0});
  CHECK(a2.parent == std::vector<std::uint32_t>{0, 0, 0, 0});
}

TEST_CASE("bfs_tree matches the centralized reference on random instances") {
  SplitRng rng(92);
  const ProtocolInfo* info = find_protocol("bfs_tree");
  REQUIRE(info);
  for (int t = 0; t < 200; ++t) {
    const std::uint32_t n = 2 + static_cast<std::uint32_t>(rng.below(24));
    const std::uint64_t max_m = static_cast<std::uint64_t>(n) * (n - 1) / 2;
    const Instance inst =
        sample_gnm(n, rng.below(std::min<std::uint64_t>(max_m + 1, 3 * n)), 4,
                   t % 2 == 1, rng.next_u64());
    ProtoParams params;
    params.bfs_root = 1 + static_cast<std::uint32_t>(rng.below(n));
    const RunResult run = info->run(inst, 0, params, {});
    const Answer want = info->oracle(inst, params);
    CHECK(answers_equal(run.answer, want));
  }
}

TEST_CASE("bipartiteness") {
  CHECK(std::get<BoolAnswer>(
            bipartiteness(graph_of(6, 2, false,
                                   {{{1, 2}, {2, 3}, {3, 4}}, {{4, 5}, {5, 6}, {1, 6}}}), 0)
                .answer)
            .value);
  // odd cycle split across sites
  CHECK_FALSE(std::get<BoolAnswer>(
                  bipartiteness(graph_of(5, 3, false,
                                         {{{1, 2}, {2, 3}}, {{3, 4}}, {{4, 5}, {1, 5}}}), 0)
                      .answer)
                  .value);

  CHECK(std::get<BoolAnswer>(bipartiteness(build_bipartite_nodup(planted_thresh(false)), 0).answer)
            .value);
  CHECK_FALSE(
      std::get<BoolAnswer>(bipartiteness(build_bipartite_nodup(planted_thresh(true)), 0).answer)
          .value);
  CHECK_FALSE(
      std::get<BoolAnswer>(bipartiteness(build_bipartite_dup(planted_thresh(true)), 0).answer)
          .value);

  SplitRng rng(93);
  for (int t = 0; t < 80; ++t) {
    const std::uint32_t n = 2 + static_cast<std::uint32_t>(rng.below(20));
    const std::uint64_t max_m = static_cast<std::uint64_t>(n) * (n - 1) / 2;
    const auto g =
        sample_gnm(n, rng.below(std::min<std::uint64_t>(2 * n, max_m + 1)), 5, t % 2 == 1,
                   rng.next_u64());
    CHECK(std::get<BoolAnswer>(bipartiteness(g, 0).answer).value ==
          oracle::bipartite(GlobalGraph::from_partition(g)));
  }
}

TEST_CASE("triangle_free") {
  const auto k3 = graph_of(3, 2, false, {{{1, 2}, {2, 3}}, {{1, 3}}});
  CHECK_FALSE(std::get<BoolAnswer>(triangle_free(k3, 0).answer).value);

  SplitRng rng(94);
  for (int t = 0; t < 60; ++t) {
    const DisjInstance d = sample_disj(15, 0.25, rng.next_u64());
    const auto g = build_triangle_2party(d, 4);
    CHECK(std::get<BoolAnswer>(triangle_free(g, 0).answer).value == (oracle::disj(d) == 0));
  }
  for (int t = 0; t < 60; ++t) {
    const std::uint32_t n = 3 + static_cast<std::uint32_t>(rng.below(16));
    const auto g = sample_gnp(n, 0.4, 4, t % 2 == 1, rng.next_u64());
    CHECK(std::get<BoolAnswer>(triangle_free(g, 0).answer).value ==
          oracle::triangle_free(GlobalGraph::from_partition(g)));
  }
}

TEST_CASE("reconstruct_y: degenerate matrices") {
  ThreshInstance t;
  t.k = 16;
  t.r = 15;
  t.theta = 11;
  t.rows.assign(t.k, std::vector<std::uint8_t>(t.r, 1));
  const auto all_ones = reconstruct_y(t, 16, 3);
  CHECK(std::get<ElementSetAnswer>(all_ones.answer).elements.empty());

  t.rows.assign(t.k, std::vector<std::uint8_t>(t.r, 0));
  const auto all_zero = reconstruct_y(t, 16, 3);
  std::vector<std::uint32_t> everything(t.r);
  std::iota(everything.begin(), everything.end(), 1u);
  CHECK(std::get<ElementSetAnswer>(all_zero.answer).elements == everything);

  CHECK_THROWS_AS(reconstruct_y(t, 0, 3), UsageError);
}

TEST_CASE("reconstruct_y: planted witness recovery and cost bound") {
  SplitRng rng(95);
  int exact = 0;
  const int trials = 100;
  const int c_y = 16;
  for (int t = 0; t < trials; ++t) {
    const ThreshInstance zeta = sample_zeta(64, 31, rng.next_u64());
    const auto r = reconstruct_y(zeta, c_y, rng.next_u64());
    if (std::get<ElementSetAnswer>(r.answer).elements == *zeta.witness_Y) ++exact;
    const std::uint64_t bound = 2ULL * c_y * 31 * ceil_log2(31) * ceil_log2(31);
    CHECK(r.ledger.total_bits <= bound);
  }
  CHECK(exact >= 95);
}

TEST_CASE("diameter_additive2: exact on tiny graphs, infinite when disconnected") {
  const auto path5 = graph_of(5, 2, false, {{{1, 2}, {2, 3}}, {{3, 4}, {4, 5}}});
  const auto r = diameter_additive2(path5, 17);
  CHECK(std::get<DiameterAnswer>(r.answer).value == 4);

  const auto disc = graph_of(4, 2, false, {{{1, 2}}, {{3, 4}}});
  CHECK_FALSE(std::get<DiameterAnswer>(diameter_additive2(disc, 17).answer).value.has_value());

  const auto single = graph_of(1, 2, false, {{}, {}});
  CHECK(std::get<DiameterAnswer>(diameter_additive2(single, 17).answer).value == 0);
}

TEST_CASE("diameter_additive2: never underestimates") {
  SplitRng rng(96);
  int done = 0;
  for (int t = 0; done < 40 && t < 200; ++t) {
    const auto g = sample_gnp(30, 0.15, 4, t % 2 == 1, rng.next_u64());
    const auto truth = oracle::diameter(GlobalGraph::from_partition(g));
    if (!truth) continue;
    ++done;
    const auto est = std::get<DiameterAnswer>(diameter_additive2(g, rng.next_u64()).answer).value;
    REQUIRE(est.has_value());
    CHECK(*est >= *truth);
    CHECK(*est <= *truth + 2);
  }
  CHECK(done == 40);
}

TEST_CASE("coordinator re-routing doubles graph protocol ledgers") {
  const auto g = sample_gnm(20, 25, 4, false, 5);
  RunOptions routed;
  routed.coordinator_mode = true;
  const auto direct = connectivity(g, 3);
  const auto via = connectivity(g, 3, routed);
  CHECK(via.ledger.total_bits == 2 * direct.ledger.total_bits);
  CHECK(via.ledger.total_messages == 2 * direct.ledger.total_messages);
  CHECK(answers_equal(via.answer, direct.answer));
}
