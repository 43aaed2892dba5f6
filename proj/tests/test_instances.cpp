#include <doctest.h>

#include <cstdio>
#include <filesystem>

#include "msgpass/distributions.hpp"
#include "msgpass/errors.hpp"
#include "msgpass/instances.hpp"
#include "msgpass/rng.hpp"

using namespace msgpass;

TEST_CASE("set family validation") {
  SetFamilyInstance inst;
  inst.k = 2;
  inst.n = 5;
  inst.sets = {{1, 3}, {2}};
  CHECK(validate(inst).ok);

  inst.sets[0] = {0, 3};
  const auto rep = validate(inst);
  CHECK_FALSE(rep.ok);
  CHECK(rep.message == "element below 1");

  inst.sets[0] = {3, 6};
  CHECK_FALSE(validate(inst).ok);
  inst.sets[0] = {3, 3};
  CHECK_FALSE(validate(inst).ok);
  inst.sets[0] = {3, 1};
  CHECK_FALSE(validate(inst).ok);
}

TEST_CASE("graph partition validation") {
  GraphPartitionInstance g;
  g.n = 4;
  g.k = 2;
  g.allow_duplication = false;
  g.local_edges = {{{1, 2}}, {{2, 3}}};
  CHECK(validate(g).ok);

  SUBCASE("edge duplicated across sites is rejected without duplication") {
    g.local_edges[1] = {{1, 2}};
    const auto rep = validate(g);
    CHECK_FALSE(rep.ok);
    CHECK(rep.message == "edge duplicated across sites");
    g.allow_duplication = true;
    CHECK(validate(g).ok);
  }
  SUBCASE("duplicate within one site is rejected in either mode") {
    g.allow_duplication = true;
    g.local_edges[0] = {{1, 2}, {1, 2}};
    CHECK_FALSE(validate(g).ok);
  }
  SUBCASE("self loops and non-canonical order are rejected") {
    g.local_edges[0] = {{2, 2}};
    CHECK_FALSE(validate(g).ok);
    g.local_edges[0] = {{3, 1}};
    CHECK_FALSE(validate(g).ok);
    g.local_edges[0] = {{1, 5}};
    CHECK_FALSE(validate(g).ok);
  }
}

TEST_CASE("disjointness validation") {
  DisjInstance d;
  d.r = 7;
  d.ell = 2;
  d.x = {1, 2};
  d.y = {3, 4};
  CHECK(validate(d).ok);

  d.y = {2, 3};
  CHECK(validate(d).ok);  // one common element is allowed
  d.y = {1, 2};
  CHECK_FALSE(validate(d).ok);  // two common elements are not
  d.y = {3, 4};
  d.ell = 3;
  CHECK_FALSE(validate(d).ok);
  d.ell = 2;
  d.r = 8;
  CHECK_FALSE(validate(d).ok);
}

TEST_CASE("thresh validation") {
  ThreshInstance t;
  t.k = 2;
  t.r = 7;
  t.theta = 5;
  t.rows = {{1, 0, 0, 0, 0, 0, 1}, {0, 1, 0, 0, 0, 0, 0}};
  CHECK(validate(t).ok);

  t.witness_Y = std::vector<std::uint32_t>{2, 5};
  CHECK(validate(t).ok);
  t.witness_Y = std::vector<std::uint32_t>{2};
  CHECK_FALSE(validate(t).ok);  // witness must have (r+1)/4 elements
  t.witness_Y = std::vector<std::uint32_t>{2, 9};
  CHECK_FALSE(validate(t).ok);
  t.witness_Y.reset();
  t.theta = 9;
  CHECK_FALSE(validate(t).ok);
  t.theta = 5;
  t.rows[0].pop_back();
  CHECK_FALSE(validate(t).ok);
}

TEST_CASE("json round trip for every instance type") {
  SplitRng rng(2024);
  for (int i = 0; i < 25; ++i) {
    const Instance zeta = sample_zeta(8, 15, rng.next_u64());
    CHECK(instance_from_json(to_json(zeta)) == zeta);

    const Instance disj = sample_disj(11, 0.25, rng.next_u64());
    CHECK(instance_from_json(to_json(disj)) == disj);

    const Instance graph = sample_gnm(9, 7, 3, i % 2 == 1, rng.next_u64());
    CHECK(instance_from_json(to_json(graph)) == graph);

    const Instance sets = sample_random_sets(3, 12, 6, rng.next_u64());
    CHECK(instance_from_json(to_json(sets)) == sets);
  }
}

TEST_CASE("graph serialization preserves edge order") {
  GraphPartitionInstance g;
  g.n = 5;
  g.k = 2;
  g.allow_duplication = false;
  g.local_edges = {{{2, 3}, {1, 2}}, {{4, 5}}};  // deliberately not sorted
  const Instance back = instance_from_json(to_json(Instance(g)));
  const auto& gb = std::get<GraphPartitionInstance>(back);
  REQUIRE(gb.local_edges[0].size() == 2);
  CHECK(gb.local_edges[0][0] == EdgeRec{2, 3});
  CHECK(gb.local_edges[0][1] == EdgeRec{1, 2});
}

TEST_CASE("thresh matrix serializes as bit strings") {
  const Instance zeta = sample_zeta(4, 7, 99);
  const nlohmann::json j = to_json(zeta);
  CHECK(j["type"] == "thresh");
  CHECK(j["format"] == 1);
  CHECK(j["matrix"].size() == 4);
  CHECK(j["matrix"][0].get<std::string>().size() == 7);
  CHECK(j.contains("witness_Y"));
}

TEST_CASE("malformed input yields parse errors") {
  CHECK_THROWS_AS(parse_instance("{\"type\": \"sets\", \"k\": 2"), ParseError);  // truncated
  CHECK_THROWS_AS(parse_instance("{\"type\": \"wat\"}"), ParseError);
  CHECK_THROWS_AS(parse_instance("{\"type\": \"sets\", \"k\": 2}"), ParseError);  // missing n
  CHECK_THROWS_AS(parse_instance("[1,2,3]"), ParseError);
  CHECK_THROWS_AS(
      parse_instance("{\"type\": \"thresh\", \"k\":1, \"r\":3, \"theta\":1, \"matrix\":[\"0x1\"]}"),
      ParseError);
  CHECK_THROWS_AS(load_instance("/nonexistent/path.json"), ParseError);
}

TEST_CASE("file round trip") {
  const auto path = std::filesystem::temp_directory_path() / "msgpass_inst_test.json";
  const Instance zeta = sample_zeta(8, 15, 5);
  save_instance(zeta, path.string());
  CHECK(load_instance(path.string()) == zeta);
  std::filesystem::remove(path);
}

TEST_CASE("mutating a valid instance is caught by validate") {
  SplitRng rng(7);
  for (int i = 0; i < 20; ++i) {
    auto g = sample_gnm(8, 6, 3, false, rng.next_u64());
    if (g.local_edges[0].empty()) continue;
    SUBCASE("") {}  // keep doctest happy about shared setup
    auto bad = g;
    bad.local_edges[1].push_back(bad.local_edges[0][0]);  // cross-site duplicate
    CHECK_FALSE(validate(bad).ok);
    auto bad2 = g;
    bad2.local_edges[0][0].v = bad2.n + 1;
    CHECK_FALSE(validate(bad2).ok);
  }
}

TEST_CASE("instance helpers") {
  const Instance zeta = sample_zeta(8, 15, 5);
  CHECK(instance_type_name(zeta) == "thresh");
  CHECK(instance_site_count(zeta) == 8);
  CHECK(instance_dimension(zeta) == 15);
  const Instance disj = sample_disj(7, 0.25, 5);
  CHECK(instance_site_count(disj) == 2);
  CHECK(instance_meta(disj).has_value());
}
