#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "msgpass/answer.hpp"
#include "msgpass/instances.hpp"
#include "msgpass/sim.hpp"

namespace msgpass {

// Extra knobs for protocols that take a query or a tuning constant.
struct ProtoParams {
  std::uint32_t query_vertex = 1;  // degree protocols
  std::uint32_t bfs_root = 1;      // bfs_tree
  int c_y = 16;                    // column-sample multiplier for reconstruct_y
  double c_s = 3.0;                // BFS-root sample multiplier for the diameter protocol
};

// --- statistics protocols ----------------------------------------------------

// every remote site ships its raw element list to the first site
RunResult f0_baseline(const SetFamilyInstance& inst, std::uint64_t seed,
                      const RunOptions& opts = {});

// two-phase protocol: local counts fix an overestimate F0', then everyone
// ships elements hashed into a universe of size (F0')^3
RunResult f0_hashed(const SetFamilyInstance& inst, std::uint64_t seed,
                    const RunOptions& opts = {});

// exact max-frequency element; ties go to the smallest element id
RunResult linfty_counts(const SetFamilyInstance& inst, std::uint64_t seed = 0,
                        const RunOptions& opts = {});

// --- graph protocols ---------------------------------------------------------

RunResult degree_nodup(const GraphPartitionInstance& inst, std::uint32_t v, std::uint64_t seed = 0,
                       const RunOptions& opts = {});
RunResult degree_dup(const GraphPartitionInstance& inst, std::uint32_t v, std::uint64_t seed = 0,
                     const RunOptions& opts = {});
RunResult cycle_free_nodup(const GraphPartitionInstance& inst, std::uint64_t seed = 0,
                           const RunOptions& opts = {});
RunResult cycle_free_dup(const GraphPartitionInstance& inst, std::uint64_t seed = 0,
                         const RunOptions& opts = {});
RunResult connectivity(const GraphPartitionInstance& inst, std::uint64_t seed = 0,
                       const RunOptions& opts = {});
RunResult num_cc(const GraphPartitionInstance& inst, std::uint64_t seed = 0,
                 const RunOptions& opts = {});
RunResult bfs_tree(const GraphPartitionInstance& inst, std::uint32_t root, std::uint64_t seed = 0,
                   const RunOptions& opts = {});
RunResult bipartiteness(const GraphPartitionInstance& inst, std::uint64_t seed = 0,
                        const RunOptions& opts = {});
RunResult triangle_free(const GraphPartitionInstance& inst, std::uint64_t seed = 0,
                        const RunOptions& opts = {});

// Site 0 reconstructs the planted column set by sampling c_y*ceil(log2 r)
// site bits per column.
RunResult reconstruct_y(const ThreshInstance& inst, int c_y, std::uint64_t seed,
                        const RunOptions& opts = {});

// Additive-2 diameter estimate from a BFS-tree/low-degree spanner.
RunResult diameter_additive2(const GraphPartitionInstance& inst, std::uint64_t seed,
                             double c_s = 3.0, const RunOptions& opts = {});

// --- protocol catalog --------------------------------------------------------

struct ProtocolInfo {
  std::string name;
  std::string instance_kind;  // "sets" | "graph" | "thresh"
  bool exact;                 // answers must equal the oracle on every run
  bool randomized;
  // run the protocol on a type-checked instance
  std::function<RunResult(const Instance&, std::uint64_t, const ProtoParams&, const RunOptions&)>
      run;
  // centralized reference answer for the same instance/params
  std::function<Answer(const Instance&, const ProtoParams&)> oracle;
};

const std::vector<ProtocolInfo>& protocol_catalog();
const ProtocolInfo* find_protocol(const std::string& name);
std::string protocol_name_list();

}  // namespace msgpass
