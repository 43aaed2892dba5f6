#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "msgpass/instances.hpp"
#include "msgpass/protocols.hpp"

namespace msgpass {

// Per-trial seeds derive from the root seed and the trial index, so trials
// can run in any order (or concurrently) without changing results.
std::uint64_t derive_seed(std::uint64_t root, std::uint64_t index);

std::string build_id();

// One protocol execution compared against its oracle.
struct RunReport {
  std::string protocol;
  std::string instance_type;
  int k = 0;
  std::uint64_t n = 0;
  std::optional<std::uint64_t> m;
  std::string dist;
  std::uint64_t seed = 0;
  bool coordinator = false;
  Answer answer;
  Answer oracle_answer;
  bool match = false;
  CostLedger ledger;
  int rounds = 0;
  double wall_time_s = 0.0;

  nlohmann::json to_json() const;
};

RunReport run_and_compare(const std::string& protocol, const Instance& inst, std::uint64_t seed,
                          const ProtoParams& params = {}, bool coordinator = false);

// Instance generation shared by `gen` and `sweep`.
struct GenSpec {
  std::string dist;  // disj | zeta | ordisj | sigma-* | gnm | gnp | sets
  int k = 2;
  std::uint64_t n = 0;
  std::uint32_t r = 0;
  std::uint64_t m = 0;
  double beta = 0.25;
  double p = 0.0;  // gnp only
  bool duplication = false;
  std::uint64_t seed = 0;
};
Instance generate_instance(const GenSpec& spec);

struct SweepSpec {
  std::string protocol;
  std::string dist;
  std::vector<int> ks;
  std::vector<std::uint64_t> ns;  // n for set/graph distributions, r otherwise
  std::vector<std::uint64_t> ms;
  int trials = 1;
  bool duplication = false;
  double beta = 0.25;
  std::uint64_t seed = 0;
};

struct SweepRow {
  std::string protocol;
  int k;
  std::uint64_t n;
  std::uint64_t m;
  std::string dist;
  int trials;
  double mean_bits;
  std::uint64_t max_bits;
  double mean_msgs;
  double match_rate;
};

extern const char* const kSweepCsvHeader;  // protocol,k,n,m,dist,trials,...
std::vector<SweepRow> run_sweep(const SweepSpec& spec);
void write_sweep_csv(const std::vector<SweepRow>& rows, std::ostream& out);

// Randomized plus exhaustive-small verification campaign for one protocol.
struct VerifySummary {
  std::string protocol;
  std::uint64_t runs = 0;
  std::uint64_t mismatches = 0;
  std::uint64_t attributed_collisions = 0;
  std::uint64_t contract_violations = 0;
  bool pass = false;
  std::string detail;

  nlohmann::json to_json() const;
};
VerifySummary run_verify(const std::string& protocol, int trials, std::uint64_t seed);

// The repeated bit-flip reduction experiment for the max-frequency protocol.
struct LinftyExperimentReport {
  int k = 0;
  std::uint32_t n = 0;
  int c_t = 0;
  int repetitions = 0;  // T = c_t * log2(k)
  int trials = 0;
  int positives = 0;
  int negatives = 0;
  int detected = 0;
  int false_positives = 0;
  int coverage_failures = 0;
  // trials whose decision relied on a max-frequency column outside the
  // witness set (diagnostic for every false positive)
  int concentration_failures = 0;
  double detection_rate = 0.0;
  double false_positive_rate = 0.0;

  nlohmann::json to_json() const;
};
LinftyExperimentReport linfty_experiment(int k, std::uint32_t n, int c_t, int trials,
                                         std::uint64_t seed);

}  // namespace msgpass
