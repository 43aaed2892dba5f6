#pragma once

// Internal helpers shared by the protocol implementations.

#include <algorithm>
#include <cstdint>
#include <vector>

#include "msgpass/errors.hpp"
#include "msgpass/instances.hpp"
#include "msgpass/payload.hpp"
#include "msgpass/sim.hpp"
#include "msgpass/union_find.hpp"

namespace msgpass::detail {

// Elements are 1-based in [1, n]; payload ids are 0-based below the universe.
inline Payload element_list_1based(const std::vector<std::uint32_t>& elems, std::uint64_t universe,
                                   std::uint64_t cap) {
  std::vector<std::uint64_t> ids;
  ids.reserve(elems.size());
  for (std::uint32_t e : elems) ids.push_back(e - 1);
  return Payload::element_list(std::move(ids), universe, cap);
}

inline std::vector<std::uint32_t> read_element_list_1based(const Payload& p) {
  std::vector<std::uint32_t> out;
  out.reserve(p.ids().size());
  for (std::uint64_t id : p.ids()) out.push_back(static_cast<std::uint32_t>(id) + 1);
  return out;
}

inline Payload edge_list_payload(const std::vector<EdgeRec>& edges, std::uint32_t n,
                                 std::uint64_t cap) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
  pairs.reserve(edges.size());
  for (const EdgeRec& e : edges) pairs.emplace_back(e.u, e.v);
  return Payload::edge_list(std::move(pairs), n, cap);
}

inline std::vector<EdgeRec> read_edge_list(const Payload& p) {
  std::vector<EdgeRec> out;
  out.reserve(p.edges().size());
  for (const auto& [u, v] : p.edges()) out.push_back(EdgeRec{u, v});
  return out;
}

// Local adjacency (1-based, sorted) from one site's edge list.
inline std::vector<std::vector<std::uint32_t>> local_adjacency(const std::vector<EdgeRec>& edges,
                                                               std::uint32_t n) {
  std::vector<std::vector<std::uint32_t>> adj(n + 1);
  for (const EdgeRec& e : edges) {
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  for (auto& nbrs : adj) {
    std::sort(nbrs.begin(), nbrs.end());
    nbrs.erase(std::unique(nbrs.begin(), nbrs.end()), nbrs.end());
  }
  return adj;
}

// Spanning forest of one site's local edges, scanning in lexicographic order.
inline std::vector<EdgeRec> local_spanning_forest(std::vector<EdgeRec> edges, std::uint32_t n) {
  std::sort(edges.begin(), edges.end());
  UnionFind uf(n + 1);
  std::vector<EdgeRec> forest;
  for (const EdgeRec& e : edges) {
    if (uf.unite(e.u, e.v)) forest.push_back(e);
  }
  return forest;
}

inline bool edges_contain_cycle(const std::vector<EdgeRec>& edges, std::uint32_t n) {
  UnionFind uf(n + 1);
  std::vector<EdgeRec> sorted(edges);
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  for (const EdgeRec& e : sorted) {
    if (!uf.unite(e.u, e.v)) return true;
  }
  return false;
}

// Typed protocol base: dispatches check_instance/make_sites on the expected
// instance alternative.
template <typename InstT>
class TypedProtocol : public Protocol {
 public:
  void check_instance(const Instance& inst) const final {
    const auto* typed = std::get_if<InstT>(&inst);
    if (!typed) throw UsageError(name() + ": instance type mismatch");
    check_typed(*typed);
  }
  std::vector<std::unique_ptr<SiteProgram>> make_sites(const Instance& inst) const final {
    return make_typed(std::get<InstT>(inst));
  }
  long round_limit_hint(const Instance& inst) const override {
    return typed_round_limit(std::get<InstT>(inst));
  }

 protected:
  virtual void check_typed(const InstT&) const {}
  virtual std::vector<std::unique_ptr<SiteProgram>> make_typed(const InstT& inst) const = 0;
  virtual long typed_round_limit(const InstT& inst) const {
    return Protocol::round_limit_hint(Instance(inst));
  }
};

}  // namespace msgpass::detail
