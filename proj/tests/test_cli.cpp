#include <doctest.h>

#include <sys/wait.h>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

namespace {

namespace fs = std::filesystem;

struct CmdResult {
  int exit_code;
  std::string out;
};

CmdResult run_cli(const std::string& args) {
  static int counter = 0;
  const fs::path out_path =
      fs::temp_directory_path() / ("msgpass_cli_out_" + std::to_string(counter++) + ".txt");
  const std::string cmd =
      std::string(MSGPASS_CLI_PATH) + " " + args + " > " + out_path.string() + " 2>&1";
  const int raw = std::system(cmd.c_str());
  CmdResult result;
  result.exit_code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  std::ifstream in(out_path);
  std::ostringstream buf;
  buf << in.rdbuf();
  result.out = buf.str();
  fs::remove(out_path);
  return result;
}

fs::path temp_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("gen writes the requested number of valid files") {
  const auto dir = temp_dir("msgpass_cli_gen");
  const auto r = run_cli("gen --dist zeta --k 16 --r 15 --trials 3 --seed 5 --out " + dir.string());
  CHECK(r.exit_code == 0);
  int files = 0;
  for (const auto& entry : fs::directory_iterator(dir)) {
    ++files;
    std::ifstream in(entry.path());
    nlohmann::json j;
    in >> j;
    CHECK(j["type"] == "thresh");
    CHECK(j["format"] == 1);
  }
  CHECK(files == 3);
  fs::remove_all(dir);
}

TEST_CASE("gen --theta-check validates reductions") {
  const auto dir = temp_dir("msgpass_cli_gen2");
  const auto r = run_cli("gen --dist sigma-b1 --k 16 --r 15 --trials 2 --seed 6 --theta-check --out " +
                         dir.string());
  CHECK(r.exit_code == 0);
  fs::remove_all(dir);
}

TEST_CASE("run emits a matching report, repeatably") {
  const auto dir = temp_dir("msgpass_cli_run");
  REQUIRE(run_cli("gen --dist sigma-n1 --k 8 --r 15 --trials 1 --seed 9 --out " + dir.string())
              .exit_code == 0);
  std::string file;
  for (const auto& entry : fs::directory_iterator(dir)) file = entry.path().string();

  const auto a = run_cli("run connectivity " + file + " --seed 4");
  const auto b = run_cli("run connectivity " + file + " --seed 4");
  REQUIRE(a.exit_code == 0);
  auto ja = nlohmann::json::parse(a.out);
  auto jb = nlohmann::json::parse(b.out);
  CHECK(ja["match"] == true);
  ja.erase("wall_time_s");
  jb.erase("wall_time_s");
  CHECK(ja == jb);

  // coordinator mode doubles the ledger
  const auto c = run_cli("run connectivity " + file + " --seed 4 --coordinator");
  const auto jc = nlohmann::json::parse(c.out);
  CHECK(jc["ledger"]["total_bits"].get<std::uint64_t>() ==
        2 * ja["ledger"]["total_bits"].get<std::uint64_t>());
  fs::remove_all(dir);
}

TEST_CASE("run writes transcripts on request") {
  const auto dir = temp_dir("msgpass_cli_tr");
  REQUIRE(run_cli("gen --dist gnm --k 3 --n 8 --m 6 --trials 1 --seed 2 --out " + dir.string())
              .exit_code == 0);
  std::string file;
  for (const auto& entry : fs::directory_iterator(dir)) file = entry.path().string();
  const auto tr = dir / "transcript.txt";
  const auto r = run_cli("run triangle_free " + file + " --transcript " + tr.string());
  CHECK(r.exit_code == 0);
  std::ifstream in(tr);
  std::string line;
  REQUIRE(std::getline(in, line));
  // round,src,dst,kind,bits
  CHECK(std::count(line.begin(), line.end(), ',') == 4);
  fs::remove_all(dir);
}

TEST_CASE("unknown protocol exits with the usage code and lists the catalog") {
  const auto dir = temp_dir("msgpass_cli_unknown");
  REQUIRE(run_cli("gen --dist gnm --k 2 --n 6 --m 3 --trials 1 --seed 3 --out " + dir.string())
              .exit_code == 0);
  std::string file;
  for (const auto& entry : fs::directory_iterator(dir)) file = entry.path().string();
  const auto r = run_cli("run not_a_protocol " + file);
  CHECK(r.exit_code == 2);
  CHECK(r.out.find("f0_baseline") != std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("malformed instance files exit with the usage code") {
  const auto dir = temp_dir("msgpass_cli_bad");
  const auto bad = dir / "bad.json";
  std::ofstream(bad) << "{\"type\": \"sets\", \"k\": 2";
  const auto r = run_cli("run f0_baseline " + bad.string());
  CHECK(r.exit_code == 2);
  fs::remove_all(dir);
}

TEST_CASE("verify exits 0 on pass and 3 under fault injection") {
  const auto ok = run_cli("verify degree_nodup --trials 20 --seed 5");
  CHECK(ok.exit_code == 0);

  setenv("MSGPASS_INJECT_FAULT", "1", 1);
  const auto bad = run_cli("verify degree_nodup --trials 5 --seed 5");
  unsetenv("MSGPASS_INJECT_FAULT");
  CHECK(bad.exit_code == 3);
}

TEST_CASE("sweep writes the pinned CSV schema") {
  const auto dir = temp_dir("msgpass_cli_sweep");
  const auto csv = dir / "sweep.csv";
  const auto r = run_cli("sweep --protocol connectivity --dist sigma-n1 --k 4,8 --r 15 "
                         "--trials 2 --seed 3 --out " + csv.string());
  CHECK(r.exit_code == 0);
  std::ifstream in(csv);
  std::string header;
  REQUIRE(std::getline(in, header));
  CHECK(header == "protocol,k,n,m,dist,trials,mean_bits,max_bits,mean_msgs,match_rate");
  int rows = 0;
  std::string line;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == 2);
  fs::remove_all(dir);
}

TEST_CASE("sweep with an empty grid exits with the usage code") {
  const auto r = run_cli("sweep --protocol connectivity --dist sigma-n1 --k '' --r 15");
  CHECK(r.exit_code == 2);
}

TEST_CASE("linfty-experiment: usage errors and JSON output") {
  const auto bad = run_cli("linfty-experiment --k 8 --n 15 --c-t 0 --trials 2");
  CHECK(bad.exit_code == 2);

  const auto ok = run_cli("linfty-experiment --k 8 --n 15 --c-t 2 --trials 3 --seed 4");
  CHECK(ok.exit_code == 0);
  const auto j = nlohmann::json::parse(ok.out);
  CHECK(j["trials"] == 3);
}
