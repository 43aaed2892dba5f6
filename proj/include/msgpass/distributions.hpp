#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "msgpass/instances.hpp"

namespace msgpass {

// k subsets X_1..X_k of [r] sharing one hidden side Y; each X_i either meets
// Y in exactly one element or avoids it entirely.
struct OrDisjInstance {
  int k = 0;
  std::uint32_t r = 0;
  std::vector<std::vector<std::uint32_t>> X;
  std::vector<std::uint32_t> Y;
};

// Two-party disjointness input: with probability beta the sides share exactly
// one element, otherwise they are disjoint. Both sides have (r+1)/4 elements.
DisjInstance sample_disj(std::uint32_t r, double beta, std::uint64_t seed);

// Y is a uniform (r+1)/4-subset; each X_i independently meets Y in one
// element with probability 1/k^2 and otherwise avoids Y.
OrDisjInstance sample_or_disj(int k, std::uint32_t r, std::uint64_t seed);

struct ZetaOptions {
  double c_k = 4.0;  // floor k >= c_k * log2(r) for the coverage guarantee
};

// Threshold instance with theta = (3r-1)/4, rows X_i, witness Y retained.
ThreshInstance sample_zeta(int k, std::uint32_t r, std::uint64_t seed, const ZetaOptions& = {});

// 1 iff the number of columns whose OR is 1 exceeds theta.
int eval_thresh(const ThreshInstance& t);
int eval_or_disj(const OrDisjInstance& inst);

// The coverage event: every column outside witness_Y has at least one 1.
// Throws UsageError when the instance carries no witness.
bool coverage_holds(const ThreshInstance& t);

// --- reduction builders -----------------------------------------------------
// Each builder emits an instance whose meta block records the source
// distribution, witness and coverage flag. Builders that need the witness
// throw UsageError when it is missing.

// sets S_i = row supports; THRESH = 1 iff F0 > (3n-1)/4 under coverage
SetFamilyInstance build_f0_instance(const ThreshInstance& t);

struct LinftyReduction {
  SetFamilyInstance instance;
  std::vector<int> flipped_sites;  // R: sites whose rows were complemented (0-based)
};
// complements the rows of a random site set R (each site kept w.p. 7/8)
LinftyReduction build_linfty_instance(const ThreshInstance& t, std::uint64_t seed);

// two-party cycle gadget on {s, t, v_1..v_h}; DISJ = 1 iff a cycle exists
GraphPartitionInstance build_cycle_2party(const DisjInstance& d, std::uint32_t h);

// apex star plus a matching from Y to the first (r+1)/4 columns outside Y;
// THRESH = 0 iff cycle-free, under coverage
GraphPartitionInstance build_cycle_k(const ThreshInstance& t);

// u_1..u_k stars plus two paths through Y and its complement;
// THRESH = 1 iff connected, under coverage
GraphPartitionInstance build_connectivity_nodup(const ThreshInstance& t);
// same construction with u_1..u_k merged into a single apex
GraphPartitionInstance build_connectivity_dup(const ThreshInstance& t);

// tripartite gadget; THRESH = 0 iff bipartite, under coverage
GraphPartitionInstance build_bipartite_nodup(const ThreshInstance& t);
GraphPartitionInstance build_bipartite_dup(const ThreshInstance& t);

// pair-index gadget on A/B/C blocks; DISJ = 0 iff triangle-free
GraphPartitionInstance build_triangle_2party(const DisjInstance& d, std::uint32_t n);
// THRESH = 0 iff triangle-free, under coverage
GraphPartitionInstance build_triangle_k(const ThreshInstance& t, std::uint32_t n);

// --- generic samplers used by the harness -----------------------------------

// Uniform m-edge graph on n vertices, edges assigned to k sites. With dup on,
// every edge is additionally copied to further sites with probability dup_p.
GraphPartitionInstance sample_gnm(std::uint32_t n, std::uint64_t m, int k, bool duplication,
                                  std::uint64_t seed, double dup_p = 0.3);

// Each possible edge present independently with probability p.
GraphPartitionInstance sample_gnp(std::uint32_t n, double p, int k, bool duplication,
                                  std::uint64_t seed, double dup_p = 0.3);

// k random subsets of [n], sizes uniform in [0, max_size].
SetFamilyInstance sample_random_sets(int k, std::uint64_t n, std::uint64_t max_size,
                                     std::uint64_t seed);

}  // namespace msgpass
