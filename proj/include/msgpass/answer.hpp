#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

namespace msgpass {

struct CountAnswer {
  std::uint64_t value = 0;
  bool operator==(const CountAnswer&) const = default;
};

// Element of maximum frequency together with that frequency.
struct ArgMaxAnswer {
  std::uint64_t element = 0;
  std::uint32_t frequency = 0;
  bool operator==(const ArgMaxAnswer&) const = default;
};

struct DegreeAnswer {
  std::uint32_t value = 0;
  bool operator==(const DegreeAnswer&) const = default;
};

// Semantics depend on the protocol (cycle-free, connected, bipartite, ...).
struct BoolAnswer {
  bool value = false;
  bool operator==(const BoolAnswer&) const = default;
};

struct CcCountAnswer {
  std::uint32_t value = 0;
  bool operator==(const CcCountAnswer&) const = default;
};

// nullopt encodes an infinite diameter (disconnected input). The spanner the
// estimate was computed on rides along for inspection/export.
struct DiameterAnswer {
  std::optional<std::uint32_t> value;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> spanner;
  bool operator==(const DiameterAnswer&) const = default;
};

struct ElementSetAnswer {
  std::vector<std::uint32_t> elements;  // sorted ascending
  bool operator==(const ElementSetAnswer&) const = default;
};

struct BfsAnswer {
  std::uint32_t root = 0;
  std::vector<std::uint32_t> parent;  // 1-based, parent[v]==0 for root/unreached
  std::vector<std::int32_t> layer;    // 1-based, -1 for unreached
  bool odd_cycle_found = false;
  bool operator==(const BfsAnswer&) const = default;
};

using Answer = std::variant<std::monostate, CountAnswer, ArgMaxAnswer, DegreeAnswer, BoolAnswer,
                            CcCountAnswer, DiameterAnswer, ElementSetAnswer, BfsAnswer>;

nlohmann::json answer_to_json(const Answer& a);
std::string answer_to_string(const Answer& a);

inline bool answers_equal(const Answer& a, const Answer& b) { return a == b; }

}  // namespace msgpass
