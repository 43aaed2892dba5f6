#include "msgpass/instances.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "msgpass/errors.hpp"

namespace msgpass {

EdgeRec make_edge(std::uint32_t a, std::uint32_t b) {
  if (a == b) throw UsageError("self-loop edge");
  return a < b ? EdgeRec{a, b} : EdgeRec{b, a};
}

std::uint64_t GraphPartitionInstance::distinct_edge_count() const {
  std::set<EdgeRec> all;
  for (const auto& site : local_edges) all.insert(site.begin(), site.end());
  return all.size();
}

namespace {

ValidationReport fail(std::string location, std::string message) {
  return ValidationReport{false, std::move(location), std::move(message)};
}

template <typename T>
bool strictly_increasing(const std::vector<T>& v) {
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (!(v[i - 1] < v[i])) return false;
  }
  return true;
}

std::string site_loc(const char* what, int i) {
  std::ostringstream os;
  os << what << "[" << i << "]";
  return os.str();
}

}  // namespace

ValidationReport validate(const SetFamilyInstance& inst) {
  if (inst.k < 1) return fail("k", "site count must be at least 1");
  if (inst.n < 1) return fail("n", "universe size must be at least 1");
  if (static_cast<int>(inst.sets.size()) != inst.k) return fail("sets", "expected k lists");
  for (int i = 0; i < inst.k; ++i) {
    const auto& s = inst.sets[i];
    for (std::uint32_t e : s) {
      if (e < 1) return fail(site_loc("sets", i), "element below 1");
      if (e > inst.n) return fail(site_loc("sets", i), "element above n");
    }
    if (!strictly_increasing(s)) {
      return fail(site_loc("sets", i), "elements must be strictly increasing");
    }
  }
  return {};
}

ValidationReport validate(const GraphPartitionInstance& inst) {
  if (inst.k < 1) return fail("k", "site count must be at least 1");
  if (inst.n < 1) return fail("n", "vertex count must be at least 1");
  if (static_cast<int>(inst.local_edges.size()) != inst.k) {
    return fail("local_edges", "expected k lists");
  }
  std::set<EdgeRec> seen;
  for (int i = 0; i < inst.k; ++i) {
    std::set<EdgeRec> site_seen;
    for (const EdgeRec& e : inst.local_edges[i]) {
      if (e.u == e.v) return fail(site_loc("local_edges", i), "self-loop");
      if (e.u < 1 || e.v > inst.n) return fail(site_loc("local_edges", i), "vertex out of range");
      if (e.u > e.v) return fail(site_loc("local_edges", i), "edge not in canonical u < v order");
      if (!site_seen.insert(e).second) {
        return fail(site_loc("local_edges", i), "duplicate edge within one site");
      }
      if (!inst.allow_duplication && !seen.insert(e).second) {
        return fail(site_loc("local_edges", i), "edge duplicated across sites");
      }
    }
  }
  return {};
}

ValidationReport validate(const ThreshInstance& inst) {
  if (inst.k < 1) return fail("k", "site count must be at least 1");
  if (inst.r < 1) return fail("r", "column count must be at least 1");
  if (inst.theta > inst.r) return fail("theta", "threshold above column count");
  if (static_cast<int>(inst.rows.size()) != inst.k) return fail("rows", "expected k rows");
  for (int i = 0; i < inst.k; ++i) {
    if (inst.rows[i].size() != inst.r) return fail(site_loc("rows", i), "row length != r");
    for (std::uint8_t b : inst.rows[i]) {
      if (b > 1) return fail(site_loc("rows", i), "matrix entries must be 0/1");
    }
  }
  if (inst.witness_Y) {
    const auto& y = *inst.witness_Y;
    if (inst.r % 4 != 3) return fail("witness_Y", "witness requires r == 3 (mod 4)");
    if (y.size() != (inst.r + 1) / 4) return fail("witness_Y", "witness size must be (r+1)/4");
    if (!strictly_increasing(y)) return fail("witness_Y", "witness must be strictly increasing");
    for (std::uint32_t j : y) {
      if (j < 1 || j > inst.r) return fail("witness_Y", "witness column out of range");
    }
  }
  return {};
}

ValidationReport validate(const DisjInstance& inst) {
  if (inst.r % 4 != 3) return fail("r", "r must be 3 (mod 4) so that (r+1)/4 is integral");
  if (inst.ell != (inst.r + 1) / 4) return fail("ell", "ell must equal (r+1)/4");
  auto check_side = [&](const std::vector<std::uint32_t>& s, const char* name) {
    if (s.size() != inst.ell) return fail(name, "set size must equal ell");
    if (!strictly_increasing(s)) return fail(name, "set must be strictly increasing");
    for (std::uint32_t e : s) {
      if (e < 1 || e > inst.r) return fail(name, "element out of range");
    }
    return ValidationReport{};
  };
  if (auto rep = check_side(inst.x, "x"); !rep.ok) return rep;
  if (auto rep = check_side(inst.y, "y"); !rep.ok) return rep;
  std::vector<std::uint32_t> both;
  std::set_intersection(inst.x.begin(), inst.x.end(), inst.y.begin(), inst.y.end(),
                        std::back_inserter(both));
  if (both.size() > 1) return fail("x,y", "intersection size must be 0 or 1");
  return {};
}

ValidationReport validate(const Instance& inst) {
  return std::visit([](const auto& typed) { return validate(typed); }, inst);
}

// ---------------------------------------------------------------------------
// JSON serialization

namespace {

void attach_meta(nlohmann::json& j, const std::optional<InstanceMeta>& meta) {
  if (meta) j["meta"] = to_json(*meta);
}

InstanceMeta meta_from_json(const nlohmann::json& j) {
  InstanceMeta meta;
  meta.source_dist = j.value("source_dist", std::string{});
  meta.seed = j.value("seed", std::uint64_t{0});
  if (j.contains("witness") && !j["witness"].is_null()) {
    meta.witness = j["witness"].get<std::vector<std::uint32_t>>();
  }
  if (j.contains("coverage") && !j["coverage"].is_null()) {
    meta.coverage = j["coverage"].get<bool>();
  }
  if (j.contains("source_value") && !j["source_value"].is_null()) {
    meta.source_value = j["source_value"].get<int>();
  }
  return meta;
}

}  // namespace

nlohmann::json to_json(const InstanceMeta& meta) {
  nlohmann::json j{{"source_dist", meta.source_dist}, {"seed", meta.seed}};
  if (meta.witness) j["witness"] = *meta.witness;
  if (meta.coverage) j["coverage"] = *meta.coverage;
  if (meta.source_value) j["source_value"] = *meta.source_value;
  return j;
}

nlohmann::json to_json(const SetFamilyInstance& inst) {
  nlohmann::json j{
      {"format", 1}, {"type", "sets"}, {"k", inst.k}, {"n", inst.n}, {"sets", inst.sets}};
  attach_meta(j, inst.meta);
  return j;
}

nlohmann::json to_json(const GraphPartitionInstance& inst) {
  nlohmann::json lists = nlohmann::json::array();
  for (const auto& site : inst.local_edges) {
    nlohmann::json edges = nlohmann::json::array();
    for (const EdgeRec& e : site) edges.push_back({e.u, e.v});
    lists.push_back(std::move(edges));
  }
  nlohmann::json j{{"format", 1},
                   {"type", "graph"},
                   {"n", inst.n},
                   {"k", inst.k},
                   {"allow_duplication", inst.allow_duplication},
                   {"m", inst.distinct_edge_count()},
                   {"local_edges", std::move(lists)}};
  attach_meta(j, inst.meta);
  return j;
}

nlohmann::json to_json(const ThreshInstance& inst) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : inst.rows) {
    std::string bits(row.size(), '0');
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (row[j]) bits[j] = '1';
    }
    rows.push_back(std::move(bits));
  }
  nlohmann::json j{{"format", 1},
                   {"type", "thresh"},
                   {"k", inst.k},
                   {"r", inst.r},
                   {"theta", inst.theta},
                   {"matrix", std::move(rows)}};
  if (inst.witness_Y) j["witness_Y"] = *inst.witness_Y;
  if (inst.below_k_floor) j["below_k_floor"] = true;
  attach_meta(j, inst.meta);
  return j;
}

nlohmann::json to_json(const DisjInstance& inst) {
  nlohmann::json j{{"format", 1}, {"type", "disj"},  {"r", inst.r},
                   {"x", inst.x}, {"y", inst.y},     {"ell", inst.ell}};
  attach_meta(j, inst.meta);
  return j;
}

nlohmann::json to_json(const Instance& inst) {
  return std::visit([](const auto& typed) { return to_json(typed); }, inst);
}

namespace {

[[noreturn]] void parse_fail(const std::string& where, const std::string& why) {
  throw ParseError("instance parse error at '" + where + "': " + why);
}

template <typename T>
T get_field(const nlohmann::json& j, const char* name) {
  if (!j.contains(name)) parse_fail(name, "missing field");
  try {
    return j.at(name).get<T>();
  } catch (const nlohmann::json::exception& e) {
    parse_fail(name, e.what());
  }
}

std::optional<InstanceMeta> opt_meta(const nlohmann::json& j) {
  if (!j.contains("meta") || j["meta"].is_null()) return std::nullopt;
  return meta_from_json(j["meta"]);
}

}  // namespace

Instance instance_from_json(const nlohmann::json& j) {
  if (!j.is_object()) parse_fail("$", "expected a JSON object");
  const auto type = get_field<std::string>(j, "type");
  if (type == "sets") {
    SetFamilyInstance inst;
    inst.k = get_field<int>(j, "k");
    inst.n = get_field<std::uint64_t>(j, "n");
    inst.sets = get_field<std::vector<std::vector<std::uint32_t>>>(j, "sets");
    inst.meta = opt_meta(j);
    return inst;
  }
  if (type == "graph") {
    GraphPartitionInstance inst;
    inst.n = get_field<std::uint32_t>(j, "n");
    inst.k = get_field<int>(j, "k");
    inst.allow_duplication = get_field<bool>(j, "allow_duplication");
    const auto lists = get_field<std::vector<std::vector<std::vector<std::uint32_t>>>>(
        j, "local_edges");
    for (const auto& site : lists) {
      std::vector<EdgeRec> edges;
      edges.reserve(site.size());
      for (const auto& pair : site) {
        if (pair.size() != 2) parse_fail("local_edges", "edge must be a [u, v] pair");
        edges.push_back(EdgeRec{pair[0], pair[1]});
      }
      inst.local_edges.push_back(std::move(edges));
    }
    inst.meta = opt_meta(j);
    return inst;
  }
  if (type == "thresh") {
    ThreshInstance inst;
    inst.k = get_field<int>(j, "k");
    inst.r = get_field<std::uint32_t>(j, "r");
    inst.theta = get_field<std::uint32_t>(j, "theta");
    const auto rows = get_field<std::vector<std::string>>(j, "matrix");
    for (const std::string& bits : rows) {
      std::vector<std::uint8_t> row;
      row.reserve(bits.size());
      for (char c : bits) {
        if (c != '0' && c != '1') parse_fail("matrix", "rows must be 0/1 strings");
        row.push_back(c == '1' ? 1 : 0);
      }
      inst.rows.push_back(std::move(row));
    }
    if (j.contains("witness_Y") && !j["witness_Y"].is_null()) {
      inst.witness_Y = get_field<std::vector<std::uint32_t>>(j, "witness_Y");
    }
    inst.below_k_floor = j.value("below_k_floor", false);
    inst.meta = opt_meta(j);
    return inst;
  }
  if (type == "disj") {
    DisjInstance inst;
    inst.r = get_field<std::uint32_t>(j, "r");
    inst.x = get_field<std::vector<std::uint32_t>>(j, "x");
    inst.y = get_field<std::vector<std::uint32_t>>(j, "y");
    inst.ell = get_field<std::uint32_t>(j, "ell");
    inst.meta = opt_meta(j);
    return inst;
  }
  parse_fail("type", "unknown instance type '" + type + "'");
}

Instance parse_instance(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  return instance_from_json(j);
}

Instance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open instance file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_instance(buf.str());
}

void save_instance(const Instance& inst, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw UsageError("cannot write instance file: " + path);
  out << to_json(inst).dump(2) << '\n';
}

std::string instance_type_name(const Instance& inst) {
  switch (inst.index()) {
    case 0: return "sets";
    case 1: return "graph";
    case 2: return "thresh";
    case 3: return "disj";
  }
  return "?";
}

int instance_site_count(const Instance& inst) {
  if (const auto* s = std::get_if<SetFamilyInstance>(&inst)) return s->k;
  if (const auto* g = std::get_if<GraphPartitionInstance>(&inst)) return g->k;
  if (const auto* t = std::get_if<ThreshInstance>(&inst)) return t->k;
  return 2;  // disjointness is two-party
}

std::uint64_t instance_dimension(const Instance& inst) {
  if (const auto* s = std::get_if<SetFamilyInstance>(&inst)) return s->n;
  if (const auto* g = std::get_if<GraphPartitionInstance>(&inst)) return g->n;
  if (const auto* t = std::get_if<ThreshInstance>(&inst)) return t->r;
  return std::get<DisjInstance>(inst).r;
}

const std::optional<InstanceMeta>& instance_meta(const Instance& inst) {
  return std::visit([](const auto& typed) -> const std::optional<InstanceMeta>& {
    return typed.meta;
  }, inst);
}

void set_instance_meta(Instance& inst, InstanceMeta meta) {
  std::visit([&](auto& typed) { typed.meta = std::move(meta); }, inst);
}

}  // namespace msgpass
