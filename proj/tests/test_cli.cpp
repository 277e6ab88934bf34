// Copyright 2026 The Riskhorizon Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "riskhorizon/csv_io.hpp"

namespace fs = std::filesystem;

namespace
{

#ifndef RISKHORIZON_CLI_PATH
#define RISKHORIZON_CLI_PATH "riskhorizon"
#endif

int run_cli(const std::string & args, const std::string & env_prefix = "")
{
  const std::string command =
    env_prefix + std::string(RISKHORIZON_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(command.c_str());
  return WEXITSTATUS(status);
}

std::string slurp(const fs::path & path)
{
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::size_t count_files(const fs::path & dir)
{
  std::size_t n = 0;
  for (const auto & entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file()) ++n;
  }
  return n;
}

struct TempDir
{
  fs::path path;
  explicit TempDir(const std::string & tag)
  {
    path = fs::temp_directory_path() / ("riskhorizon_cli_" + tag);
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_SUITE("cli")
{

TEST_CASE("gen produces the default set deterministically")
{
  TempDir dir("gen");
  const auto out1 = (dir.path / "o1").string();
  const auto out2 = (dir.path / "o2").string();
  REQUIRE(run_cli("gen --out " + out1 + " --seed 42") == 0);
  REQUIRE(run_cli("gen --out " + out2 + " --seed 42") == 0);

  CHECK(count_files(dir.path / "o1" / "trajectories") == 84);
  CHECK(fs::exists(dir.path / "o1" / "manifest.json"));

  // identical bytes across reruns with the same seed
  CHECK(slurp(dir.path / "o1" / "manifest.json") == slurp(dir.path / "o2" / "manifest.json"));
  CHECK(slurp(dir.path / "o1" / "trajectories" / "lon_crash_0_a.csv") ==
        slurp(dir.path / "o2" / "trajectories" / "lon_crash_0_a.csv"));
}

TEST_CASE("gen rejects an empty scenario list")
{
  TempDir dir("gen_empty");
  const fs::path config = dir.path / "empty.json";
  std::ofstream(config) << "[]";
  CHECK(run_cli("gen --config " + config.string() + " --out " + (dir.path / "o").string()) != 0);
  CHECK_FALSE(fs::exists(dir.path / "o" / "manifest.json"));
}

TEST_CASE("run and stats on a reduced scenario set")
{
  TempDir dir("pipeline");
  // a reduced config keeps this test quick: one instance per kind and case
  auto specs = riskhorizon::default_scenario_set(42);
  std::vector<riskhorizon::ScenarioSpec> reduced;
  for (std::size_t i = 0; i < specs.size(); i += 7) reduced.push_back(specs[i]);
  const fs::path config = dir.path / "specs.json";
  riskhorizon::write_scenario_config(config, reduced);

  const auto gen_dir = (dir.path / "gen").string();
  const auto run_dir = (dir.path / "run").string();
  REQUIRE(run_cli("gen --config " + config.string() + " --out " + gen_dir) == 0);
  REQUIRE(run_cli("run --config " + gen_dir + "/manifest.json --out " + run_dir) == 0);

  // 6 instances x 3 always-applicable measures, plus TTC where it applies
  const std::size_t traces = count_files(dir.path / "run" / "traces");
  CHECK(traces >= 6 * 3);
  CHECK(fs::exists(dir.path / "run" / "traces" / "lon_crash_0_TTC.csv"));
  CHECK_FALSE(fs::exists(dir.path / "run" / "traces" / "lon_near_crash_0_TTC.csv"));

  const auto stats_file = (dir.path / "stats.csv").string();
  REQUIRE(run_cli("stats --config " + run_dir + "/run_manifest.json --out " + stats_file) == 0);
  const std::string stats = slurp(stats_file);
  CHECK(stats.find("measure,kind,case,t_d,sigma_t,R_max,sigma_R,FP,N") == 0);
  CHECK(stats.find("SA,longitudinal,crash,") != std::string::npos);

  SUBCASE("rerunning the pipeline is byte-identical")
  {
    const auto run_dir2 = (dir.path / "run2").string();
    const auto stats_file2 = (dir.path / "stats2.csv").string();
    // a worker cap must not change any output bytes
    REQUIRE(run_cli("run --config " + gen_dir + "/manifest.json --out " + run_dir2,
                    "RISKHORIZON_THREADS=1 ") == 0);
    REQUIRE(
      run_cli("stats --config " + run_dir2 + "/run_manifest.json --out " + stats_file2) == 0);
    CHECK(slurp(stats_file) == slurp(stats_file2));
    CHECK(slurp(dir.path / "run" / "traces" / "inter_crash_0_SA.csv") ==
          slurp(dir.path / "run2" / "traces" / "inter_crash_0_SA.csv"));
  }

  SUBCASE("calibrate writes a parameter file and reports the floor")
  {
    const auto params_file = (dir.path / "params.json").string();
    REQUIRE(run_cli("calibrate --measure sa --config " + config.string() + " --out " +
                    params_file) == 0);
    const std::string params = slurp(params_file);
    CHECK(params.find("\"tau0_inv\"") != std::string::npos);
    CHECK(params.find("\"calibration\"") != std::string::npos);

    // identical rerun: the grid search is deterministic
    const auto params_file2 = (dir.path / "params2.json").string();
    REQUIRE(run_cli("calibrate --measure sa --config " + config.string() + " --out " +
                    params_file2) == 0);
    CHECK(params == slurp(params_file2));

    // an unreachable floor is reported explicitly
    CHECK(run_cli("calibrate --measure sa --config " + config.string() + " --floor 1.0 --out " +
                  (dir.path / "params3.json").string()) == 3);
    CHECK(slurp(dir.path / "params3.json").find("floor_satisfied\": 0") != std::string::npos);
  }

  SUBCASE("a stricter threshold never adds false positives")
  {
    const auto strict_file = (dir.path / "strict.csv").string();
    REQUIRE(run_cli("stats --config " + run_dir + "/run_manifest.json --rth 0.999 --out " +
                    strict_file) == 0);
    // count total FP column values
    const auto total_fp = [](const std::string & csv) {
      int fp = 0;
      std::stringstream stream(csv);
      std::string line;
      std::getline(stream, line);
      while (std::getline(stream, line)) {
        std::size_t pos = 0;
        for (int c = 0; c < 7; ++c) pos = line.find(',', pos) + 1;
        const std::string cell = line.substr(pos, line.find(',', pos) - pos);
        if (!cell.empty()) fp += std::stoi(cell);
      }
      return fp;
    };
    CHECK(total_fp(slurp(strict_file)) <= total_fp(stats));
  }
}

TEST_CASE("run fails cleanly on a missing trajectory file")
{
  TempDir dir("missing");
  const fs::path manifest = dir.path / "manifest.json";
  std::ofstream(manifest) << R"({"instances":[{"name":"x","kind":"longitudinal",)"
                          << R"("case":"crash","t_event":0.0,"dt":0.02,)"
                          << R"("traj_a":"nope_a.csv","traj_b":"nope_b.csv"}]})";
  CHECK(run_cli("run --config " + manifest.string() + " --out " + (dir.path / "o").string()) !=
        0);
}

TEST_CASE("oracle subcommands pass")
{
  CHECK(run_cli("oracle encounter") == 0);
  CHECK(run_cli("oracle overlap --samples 50000") == 0);
  CHECK(run_cli("oracle survival --samples 20000") == 0);
  CHECK(run_cli("oracle unknown") == 2);
}

}  // TEST_SUITE
