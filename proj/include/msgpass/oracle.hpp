#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "msgpass/instances.hpp"

namespace msgpass {

// The union graph of an edge partition, with deduplicated sorted adjacency.
struct GlobalGraph {
  std::uint32_t n = 0;
  std::vector<std::vector<std::uint32_t>> adj;  // adj[0] unused; vertices are 1-based

  static GlobalGraph from_partition(const GraphPartitionInstance& inst);
  static GlobalGraph from_edges(std::uint32_t n, const std::vector<EdgeRec>& edges);

  std::uint64_t edge_count() const;
  bool has_edge(std::uint32_t u, std::uint32_t v) const;
};

// Centralized brute-force reference implementations. These favour
// obviousness over speed and are the ground truth for every protocol test.
namespace oracle {

std::uint64_t f0(const SetFamilyInstance& inst);

// (element, frequency) of the most frequent element, ties broken by smallest
// element id. Throws EmptyInputError when every set is empty.
std::pair<std::uint64_t, std::uint32_t> linfty(const SetFamilyInstance& inst);

std::uint32_t degree(const GlobalGraph& g, std::uint32_t v);
bool has_cycle(const GlobalGraph& g);
std::uint32_t num_cc(const GlobalGraph& g);
bool bipartite(const GlobalGraph& g);
bool triangle_free(const GlobalGraph& g);

// All-pairs BFS; nullopt when the graph is disconnected (or n == 0).
std::optional<std::uint32_t> diameter(const GlobalGraph& g);
// Independent second route used to cross-validate `diameter` in tests.
std::optional<std::uint32_t> diameter_floyd_warshall(const GlobalGraph& g);

// Single-source distances by BFS; -1 for unreachable vertices.
std::vector<std::int32_t> bfs_distances(const GlobalGraph& g, std::uint32_t root);

int disj(const DisjInstance& inst);

}  // namespace oracle
}  // namespace msgpass
