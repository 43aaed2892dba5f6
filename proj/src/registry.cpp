#include <algorithm>
#include <sstream>

#include "msgpass/errors.hpp"
#include "msgpass/oracle.hpp"
#include "msgpass/protocols.hpp"

namespace msgpass {

namespace {

template <typename T>
const T& as(const Instance& inst, const char* proto) {
  const T* typed = std::get_if<T>(&inst);
  if (!typed) throw UsageError(std::string(proto) + ": instance type mismatch");
  return *typed;
}

Answer oracle_bfs_answer(const GraphPartitionInstance& g, std::uint32_t root) {
  const GlobalGraph gg = GlobalGraph::from_partition(g);
  const auto dist = oracle::bfs_distances(gg, root);
  BfsAnswer ans;
  ans.root = root;
  ans.parent.assign(g.n, 0);
  ans.layer.assign(g.n, -1);
  bool odd = false;
  for (std::uint32_t v = 1; v <= g.n; ++v) {
    ans.layer[v - 1] = dist[v];
    if (dist[v] <= 0) continue;
    // deterministic parent rule: smallest neighbour one layer closer
    for (std::uint32_t w : gg.adj[v]) {
      if (dist[w] == dist[v] - 1) {
        ans.parent[v - 1] = w;
        break;
      }
    }
  }
  for (std::uint32_t v = 1; v <= g.n && !odd; ++v) {
    if (dist[v] == -1) continue;
    for (std::uint32_t w : gg.adj[v]) {
      if (w > v && dist[w] == dist[v]) {
        odd = true;
        break;
      }
    }
  }
  ans.odd_cycle_found = odd;
  return ans;
}

std::vector<ProtocolInfo> build_catalog() {
  std::vector<ProtocolInfo> cat;

  cat.push_back({"f0_baseline", "sets", true, false,
                 [](const Instance& inst, std::uint64_t seed, const ProtoParams&,
                    const RunOptions& opts) {
                   return f0_baseline(as<SetFamilyInstance>(inst, "f0_baseline"), seed, opts);
                 },
                 [](const Instance& inst, const ProtoParams&) -> Answer {
                   return CountAnswer{oracle::f0(as<SetFamilyInstance>(inst, "f0_baseline"))};
                 }});

  cat.push_back({"f0_hashed", "sets", false, true,
                 [](const Instance& inst, std::uint64_t seed, const ProtoParams&,
                    const RunOptions& opts) {
                   return f0_hashed(as<SetFamilyInstance>(inst, "f0_hashed"), seed, opts);
                 },
                 [](const Instance& inst, const ProtoParams&) -> Answer {
                   return CountAnswer{oracle::f0(as<SetFamilyInstance>(inst, "f0_hashed"))};
                 }});

  cat.push_back({"linfty_counts", "sets", true, false,
                 [](const Instance& inst, std::uint64_t seed, const ProtoParams&,
                    const RunOptions& opts) {
                   return linfty_counts(as<SetFamilyInstance>(inst, "linfty_counts"), seed, opts);
                 },
                 [](const Instance& inst, const ProtoParams&) -> Answer {
                   const auto [elt, freq] = oracle::linfty(as<SetFamilyInstance>(inst, "linfty"));
                   return ArgMaxAnswer{elt, freq};
                 }});

  cat.push_back({"degree_nodup", "graph", true, false,
                 [](const Instance& inst, std::uint64_t seed, const ProtoParams& p,
                    const RunOptions& opts) {
                   return degree_nodup(as<GraphPartitionInstance>(inst, "degree_nodup"),
                                       p.query_vertex, seed, opts);
                 },
                 [](const Instance& inst, const ProtoParams& p) -> Answer {
                   const auto& g = as<GraphPartitionInstance>(inst, "degree_nodup");
                   return DegreeAnswer{
                       oracle::degree(GlobalGraph::from_partition(g), p.query_vertex)};
                 }});

  cat.push_back({"degree_dup", "graph", true, false,
                 [](const Instance& inst, std::uint64_t seed, const ProtoParams& p,
                    const RunOptions& opts) {
                   return degree_dup(as<GraphPartitionInstance>(inst, "degree_dup"),
                                     p.query_vertex, seed, opts);
                 },
                 [](const Instance& inst, const ProtoParams& p) -> Answer {
                   const auto& g = as<GraphPartitionInstance>(inst, "degree_dup");
                   return DegreeAnswer{
                       oracle::degree(GlobalGraph::from_partition(g), p.query_vertex)};
                 }});

  cat.push_back({"cycle_free_nodup", "graph", true, false,
                 [](const Instance& inst, std::uint64_t seed, const ProtoParams&,
                    const RunOptions& opts) {
                   return cycle_free_nodup(as<GraphPartitionInstance>(inst, "cycle_free_nodup"),
                                           seed, opts);
                 },
                 [](const Instance& inst, const ProtoParams&) -> Answer {
                   const auto& g = as<GraphPartitionInstance>(inst, "cycle_free_nodup");
                   return BoolAnswer{!oracle::has_cycle(GlobalGraph::from_partition(g))};
                 }});

  cat.push_back({"cycle_free_dup", "graph", true, false,
                 [](const Instance& inst, std::uint64_t seed, const ProtoParams&,
                    const RunOptions& opts) {
                   return cycle_free_dup(as<GraphPartitionInstance>(inst, "cycle_free_dup"), seed,
                                         opts);
                 },
                 [](const Instance& inst, const ProtoParams&) -> Answer {
                   const auto& g = as<GraphPartitionInstance>(inst, "cycle_free_dup");
                   return BoolAnswer{!oracle::has_cycle(GlobalGraph::from_partition(g))};
                 }});

  cat.push_back({"connectivity", "graph", true, false,
                 [](const Instance& inst, std::uint64_t seed, const ProtoParams&,
                    const RunOptions& opts) {
                   return connectivity(as<GraphPartitionInstance>(inst, "connectivity"), seed,
                                       opts);
                 },
                 [](const Instance& inst, const ProtoParams&) -> Answer {
                   const auto& g = as<GraphPartitionInstance>(inst, "connectivity");
                   return BoolAnswer{oracle::num_cc(GlobalGraph::from_partition(g)) == 1};
                 }});

  cat.push_back({"num_cc", "graph", true, false,
                 [](const Instance& inst, std::uint64_t seed, const ProtoParams&,
                    const RunOptions& opts) {
                   return num_cc(as<GraphPartitionInstance>(inst, "num_cc"), seed, opts);
                 },
                 [](const Instance& inst, const ProtoParams&) -> Answer {
                   const auto& g = as<GraphPartitionInstance>(inst, "num_cc");
                   return CcCountAnswer{oracle::num_cc(GlobalGraph::from_partition(g))};
                 }});

  cat.push_back({"bfs_tree", "graph", true, false,
                 [](const Instance& inst, std::uint64_t seed, const ProtoParams& p,
                    const RunOptions& opts) {
                   return bfs_tree(as<GraphPartitionInstance>(inst, "bfs_tree"), p.bfs_root, seed,
                                   opts);
                 },
                 [](const Instance& inst, const ProtoParams& p) -> Answer {
                   return oracle_bfs_answer(as<GraphPartitionInstance>(inst, "bfs_tree"),
                                            p.bfs_root);
                 }});

  cat.push_back({"bipartiteness", "graph", true, false,
                 [](const Instance& inst, std::uint64_t seed, const ProtoParams&,
                    const RunOptions& opts) {
                   return bipartiteness(as<GraphPartitionInstance>(inst, "bipartiteness"), seed,
                                        opts);
                 },
                 [](const Instance& inst, const ProtoParams&) -> Answer {
                   const auto& g = as<GraphPartitionInstance>(inst, "bipartiteness");
                   return BoolAnswer{oracle::bipartite(GlobalGraph::from_partition(g))};
                 }});

  cat.push_back({"triangle_free", "graph", true, false,
                 [](const Instance& inst, std::uint64_t seed, const ProtoParams&,
                    const RunOptions& opts) {
                   return triangle_free(as<GraphPartitionInstance>(inst, "triangle_free"), seed,
                                        opts);
                 },
                 [](const Instance& inst, const ProtoParams&) -> Answer {
                   const auto& g = as<GraphPartitionInstance>(inst, "triangle_free");
                   return BoolAnswer{oracle::triangle_free(GlobalGraph::from_partition(g))};
                 }});

  cat.push_back({"reconstruct_y", "thresh", false, true,
                 [](const Instance& inst, std::uint64_t seed, const ProtoParams& p,
                    const RunOptions& opts) {
                   return reconstruct_y(as<ThreshInstance>(inst, "reconstruct_y"), p.c_y, seed,
                                        opts);
                 },
                 [](const Instance& inst, const ProtoParams&) -> Answer {
                   const auto& t = as<ThreshInstance>(inst, "reconstruct_y");
                   if (!t.witness_Y) return ElementSetAnswer{};
                   return ElementSetAnswer{*t.witness_Y};
                 }});

  cat.push_back({"diameter_additive2", "graph", false, true,
                 [](const Instance& inst, std::uint64_t seed, const ProtoParams& p,
                    const RunOptions& opts) {
                   return diameter_additive2(as<GraphPartitionInstance>(inst, "diameter"), seed,
                                             p.c_s, opts);
                 },
                 [](const Instance& inst, const ProtoParams&) -> Answer {
                   const auto& g = as<GraphPartitionInstance>(inst, "diameter");
                   return DiameterAnswer{oracle::diameter(GlobalGraph::from_partition(g))};
                 }});

  return cat;
}

}  // namespace

const std::vector<ProtocolInfo>& protocol_catalog() {
  static const std::vector<ProtocolInfo> cat = build_catalog();
  return cat;
}

const ProtocolInfo* find_protocol(const std::string& name) {
  for (const ProtocolInfo& info : protocol_catalog()) {
    if (info.name == name) return &info;
  }
  return nullptr;
}

std::string protocol_name_list() {
  std::ostringstream os;
  bool first = true;
  for (const ProtocolInfo& info : protocol_catalog()) {
    if (!first) os << ", ";
    os << info.name;
    first = false;
  }
  return os.str();
}

}  // namespace msgpass
