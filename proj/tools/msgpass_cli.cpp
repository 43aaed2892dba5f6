// Command-line front end: generate instances, run protocols against oracles,
// verify, sweep parameter grids, and run the repeated bit-flip experiment.
//
// Exit codes: 0 success, 2 usage error, 3 verification failure, 4 divergence.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "msgpass/distributions.hpp"
#include "msgpass/errors.hpp"
#include "msgpass/oracle.hpp"
#include "msgpass/report.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitVerifyFailed = 3;
constexpr int kExitDivergence = 4;

std::vector<std::uint64_t> parse_u64_list(const std::string& text) {
  std::vector<std::uint64_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(std::stoull(item));
  }
  return out;
}

// check the documented source<->target equivalence for a sigma instance
bool sigma_equivalence_ok(const msgpass::Instance& inst) {
  using namespace msgpass;
  const auto& meta = instance_meta(inst);
  if (!meta || !meta->source_value) return true;
  const int src = *meta->source_value;
  const std::string& dist = meta->source_dist;
  if (meta->coverage && !*meta->coverage) return true;  // flagged, not judged

  if (dist == "sigma_f") {
    const auto& sets = std::get<SetFamilyInstance>(inst);
    const bool high = oracle::f0(sets) > (3 * sets.n - 1) / 4;
    return (src == 1) == high;
  }
  const auto* g = std::get_if<GraphPartitionInstance>(&inst);
  if (!g) return true;
  const GlobalGraph gg = GlobalGraph::from_partition(*g);
  if (dist == "sigma_c1") return (src == 1) == oracle::has_cycle(gg);
  if (dist == "sigma_c2") return (src == 0) == !oracle::has_cycle(gg);
  if (dist == "sigma_n1" || dist == "sigma_n2") return (src == 1) == (oracle::num_cc(gg) == 1);
  if (dist == "sigma_b1" || dist == "sigma_b2") return (src == 0) == oracle::bipartite(gg);
  if (dist == "sigma_t1" || dist == "sigma_t2") return (src == 0) == oracle::triangle_free(gg);
  return true;
}

int cmd_gen(const std::string& dist, int k, std::uint64_t n, std::uint32_t r, std::uint64_t m,
            double beta, bool dup, std::uint64_t seed, int trials, const std::string& out_dir,
            bool theta_check) {
  using namespace msgpass;
  std::filesystem::create_directories(out_dir);
  for (int t = 0; t < trials; ++t) {
    GenSpec spec;
    spec.dist = dist;
    spec.k = k;
    spec.n = n;
    spec.r = r;
    spec.m = m;
    spec.beta = beta;
    spec.duplication = dup;
    spec.seed = derive_seed(seed, t);
    Instance inst = generate_instance(spec);

    const ValidationReport rep = validate(inst);
    if (!rep.ok) {
      std::cerr << "generated instance failed validation at " << rep.location << ": "
                << rep.message << '\n';
      return kExitVerifyFailed;
    }
    if (theta_check) {
      if (const auto* th = std::get_if<ThreshInstance>(&inst)) {
        if (th->theta != (3 * th->r - 1) / 4) {
          std::cerr << "theta-check: theta != (3r-1)/4\n";
          return kExitVerifyFailed;
        }
      }
      if (!sigma_equivalence_ok(inst)) {
        std::cerr << "theta-check: reduction equivalence violated on a coverage-true instance\n";
        return kExitVerifyFailed;
      }
    }
    std::ostringstream name;
    name << out_dir << "/" << dist << "_" << std::hex << spec.seed << std::dec << "_" << t
         << ".json";
    save_instance(inst, name.str());
    std::cout << name.str() << '\n';
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace msgpass;

  CLI::App app{"deterministic message-passing protocol simulator with exact bit accounting"};
  app.require_subcommand(1);

  // ---- gen ----
  auto* gen = app.add_subcommand("gen", "generate instance files");
  std::string gen_dist = "zeta", gen_out = ".";
  int gen_k = 8, gen_trials = 1;
  std::uint64_t gen_n = 64, gen_m = 0, gen_seed = 1;
  std::uint32_t gen_r = 31;
  double gen_beta = 0.25;
  std::string gen_dup = "off";
  bool gen_theta_check = false;
  gen->add_option("--dist", gen_dist, "distribution: disj|zeta|ordisj|sigma-*|gnm|gnp|sets");
  gen->add_option("--k", gen_k, "site count");
  gen->add_option("--n", gen_n, "universe / vertex count");
  gen->add_option("--r", gen_r, "column / element count for disj, zeta and sigma-*");
  gen->add_option("--m", gen_m, "edge count (gnm) or max set size (sets)");
  gen->add_option("--beta", gen_beta, "intersection probability for disj");
  gen->add_option("--seed", gen_seed, "root seed");
  gen->add_option("--trials", gen_trials, "number of instances");
  gen->add_option("--out", gen_out, "output directory");
  gen->add_option("--dup", gen_dup, "edge duplication: on|off")
      ->check(CLI::IsMember({"on", "off"}));
  gen->add_flag("--theta-check", gen_theta_check,
                "re-check theta and the reduction equivalence before writing");

  // ---- run ----
  auto* run = app.add_subcommand("run", "run one protocol on an instance file");
  std::string run_protocol, run_file;
  std::uint64_t run_seed = 1;
  bool run_coordinator = false;
  std::uint32_t run_vertex = 1, run_root = 1;
  int run_cy = 16;
  double run_cs = 3.0;
  run->add_option("protocol", run_protocol, "protocol name")->required();
  run->add_option("instance", run_file, "instance JSON file")->required();
  run->add_option("--seed", run_seed, "run seed");
  run->add_flag("--coordinator", run_coordinator, "re-route every message via the coordinator");
  run->add_option("--v", run_vertex, "query vertex for degree protocols");
  run->add_option("--root", run_root, "root vertex for bfs_tree");
  run->add_option("--c-y", run_cy, "sample multiplier for reconstruct_y");
  run->add_option("--c-s", run_cs, "BFS-root sample multiplier for diameter_additive2");
  std::string run_transcript;
  run->add_option("--transcript", run_transcript, "write the transcript to this file");

  // ---- verify ----
  auto* verify = app.add_subcommand("verify", "randomized + exhaustive verification campaign");
  std::string verify_protocol;
  int verify_trials = 200;
  std::uint64_t verify_seed = 1;
  verify->add_option("protocol", verify_protocol, "protocol name")->required();
  verify->add_option("--trials", verify_trials, "randomized trials");
  verify->add_option("--seed", verify_seed, "root seed");

  // ---- sweep ----
  auto* sweep = app.add_subcommand("sweep", "run a parameter grid and emit CSV");
  std::string sweep_protocol, sweep_dist = "gnm", sweep_out;
  std::string sweep_ks = "4", sweep_ns = "32", sweep_ms;
  int sweep_trials = 1;
  std::uint64_t sweep_seed = 1;
  double sweep_beta = 0.25;
  std::string sweep_dup = "off";
  sweep->add_option("--protocol", sweep_protocol, "protocol name")->required();
  sweep->add_option("--dist", sweep_dist, "instance distribution");
  sweep->add_option("--k", sweep_ks, "comma-separated site counts");
  sweep->add_option("--n", sweep_ns, "comma-separated n (or r) values");
  sweep->add_option("--r", sweep_ns, "alias for --n on r-based distributions");
  sweep->add_option("--m", sweep_ms, "comma-separated edge counts");
  sweep->add_option("--beta", sweep_beta, "intersection probability for disj");
  sweep->add_option("--trials", sweep_trials, "trials per grid point");
  sweep->add_option("--seed", sweep_seed, "root seed");
  sweep->add_option("--out", sweep_out, "CSV output path (stdout when omitted)");
  sweep->add_option("--dup", sweep_dup, "edge duplication: on|off")
      ->check(CLI::IsMember({"on", "off"}));

  // ---- linfty-experiment ----
  auto* lexp = app.add_subcommand("linfty-experiment",
                                  "repeated bit-flip reduction experiment with the "
                                  "max-frequency protocol");
  int lexp_k = 64, lexp_ct = 8, lexp_trials = 100;
  std::uint32_t lexp_n = 127;
  std::uint64_t lexp_seed = 1;
  lexp->add_option("--k", lexp_k, "site count");
  lexp->add_option("--n", lexp_n, "column count (congruent to 3 mod 4)");
  lexp->add_option("--c-t", lexp_ct, "repetition multiplier (T = c_t * log2 k)");
  lexp->add_option("--trials", lexp_trials, "number of source instances");
  lexp->add_option("--seed", lexp_seed, "root seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (gen->parsed()) {
      return cmd_gen(gen_dist, gen_k, gen_n, gen_r, gen_m, gen_beta, gen_dup == "on", gen_seed,
                     gen_trials, gen_out, gen_theta_check);
    }
    if (run->parsed()) {
      const Instance inst = load_instance(run_file);
      ProtoParams params;
      params.query_vertex = run_vertex;
      params.bfs_root = run_root;
      params.c_y = run_cy;
      params.c_s = run_cs;
      const RunReport rep = run_and_compare(run_protocol, inst, run_seed, params, run_coordinator);
      if (!run_transcript.empty()) {
        const ProtocolInfo* info = find_protocol(run_protocol);
        RunOptions opts;
        opts.coordinator_mode = run_coordinator;
        const RunResult rr = info->run(inst, run_seed, params, opts);
        std::ofstream out(run_transcript);
        out << rr.transcript.to_lines();
      }
      std::cout << rep.to_json().dump(2) << '\n';
      return kExitOk;
    }
    if (verify->parsed()) {
      const VerifySummary sum = run_verify(verify_protocol, verify_trials, verify_seed);
      std::cout << sum.to_json().dump(2) << '\n';
      return sum.pass ? kExitOk : kExitVerifyFailed;
    }
    if (sweep->parsed()) {
      SweepSpec spec;
      spec.protocol = sweep_protocol;
      spec.dist = sweep_dist;
      for (std::uint64_t k : parse_u64_list(sweep_ks)) spec.ks.push_back(static_cast<int>(k));
      spec.ns = parse_u64_list(sweep_ns);
      spec.ms = parse_u64_list(sweep_ms);
      spec.trials = sweep_trials;
      spec.duplication = sweep_dup == "on";
      spec.beta = sweep_beta;
      spec.seed = sweep_seed;
      const auto rows = run_sweep(spec);
      if (sweep_out.empty()) {
        write_sweep_csv(rows, std::cout);
      } else {
        std::ofstream out(sweep_out);
        if (!out) throw UsageError("cannot open sweep output file: " + sweep_out);
        write_sweep_csv(rows, out);
      }
      return kExitOk;
    }
    if (lexp->parsed()) {
      const LinftyExperimentReport rep =
          linfty_experiment(lexp_k, lexp_n, lexp_ct, lexp_trials, lexp_seed);
      std::cout << rep.to_json().dump(2) << '\n';
      return kExitOk;
    }
  } catch (const DivergenceError& e) {
    std::cerr << "divergence: " << e.what() << '\n';
    return kExitDivergence;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const EmptyInputError& e) {
    std::cerr << "empty input: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitVerifyFailed;
  }
  return kExitUsage;
}
