#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

namespace msgpass {

// Provenance attached to generated instances.
struct InstanceMeta {
  std::string source_dist;
  std::uint64_t seed = 0;
  std::optional<std::vector<std::uint32_t>> witness;
  std::optional<bool> coverage;
  std::optional<int> source_value;  // evaluation of the source problem, when known
  bool operator==(const InstanceMeta&) const = default;
};

// k sets over the universe [1, n].
struct SetFamilyInstance {
  int k = 0;
  std::uint64_t n = 0;
  std::vector<std::vector<std::uint32_t>> sets;  // sorted, strictly increasing
  std::optional<InstanceMeta> meta;
  bool operator==(const SetFamilyInstance&) const = default;
};

struct EdgeRec {
  std::uint32_t u = 0;
  std::uint32_t v = 0;  // canonical form requires u < v
  auto operator<=>(const EdgeRec&) const = default;
};

// Canonicalizes endpoint order; throws UsageError on self-loops.
EdgeRec make_edge(std::uint32_t a, std::uint32_t b);

// An n-vertex undirected graph whose edges are split across k sites. When
// allow_duplication is false the per-site edge lists must be pairwise
// disjoint; duplicates within a single site are forbidden in either mode.
struct GraphPartitionInstance {
  std::uint32_t n = 0;
  int k = 0;
  bool allow_duplication = false;
  std::vector<std::vector<EdgeRec>> local_edges;
  std::optional<InstanceMeta> meta;

  std::uint64_t distinct_edge_count() const;  // m
  bool operator==(const GraphPartitionInstance&) const = default;
};

// A k x r boolean matrix with threshold theta; row i lives at site i.
// witness_Y optionally records the planted special columns.
struct ThreshInstance {
  int k = 0;
  std::uint32_t r = 0;
  std::uint32_t theta = 0;
  std::vector<std::vector<std::uint8_t>> rows;
  std::optional<std::vector<std::uint32_t>> witness_Y;  // sorted, 1-based columns
  bool below_k_floor = false;  // sampled with k under the configured floor
  std::optional<InstanceMeta> meta;
  bool operator==(const ThreshInstance&) const = default;
};

// Two-party disjointness input: x at site 1, y at site 2.
struct DisjInstance {
  std::uint32_t r = 0;
  std::vector<std::uint32_t> x;
  std::vector<std::uint32_t> y;
  std::uint32_t ell = 0;  // (r+1)/4
  std::optional<InstanceMeta> meta;
  bool operator==(const DisjInstance&) const = default;
};

using Instance =
    std::variant<SetFamilyInstance, GraphPartitionInstance, ThreshInstance, DisjInstance>;

struct ValidationReport {
  bool ok = true;
  std::string location;
  std::string message;
};

ValidationReport validate(const SetFamilyInstance& inst);
ValidationReport validate(const GraphPartitionInstance& inst);
ValidationReport validate(const ThreshInstance& inst);
ValidationReport validate(const DisjInstance& inst);
ValidationReport validate(const Instance& inst);

nlohmann::json to_json(const InstanceMeta& meta);
nlohmann::json to_json(const SetFamilyInstance& inst);
nlohmann::json to_json(const GraphPartitionInstance& inst);
nlohmann::json to_json(const ThreshInstance& inst);
nlohmann::json to_json(const DisjInstance& inst);
nlohmann::json to_json(const Instance& inst);

// Throws ParseError on malformed input.
Instance instance_from_json(const nlohmann::json& j);
Instance parse_instance(const std::string& text);
Instance load_instance(const std::string& path);
void save_instance(const Instance& inst, const std::string& path);

std::string instance_type_name(const Instance& inst);
int instance_site_count(const Instance& inst);
std::uint64_t instance_dimension(const Instance& inst);  // n for sets/graphs, r otherwise
const std::optional<InstanceMeta>& instance_meta(const Instance& inst);
void set_instance_meta(Instance& inst, InstanceMeta meta);

}  // namespace msgpass
