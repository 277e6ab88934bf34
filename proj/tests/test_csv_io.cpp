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

#include "riskhorizon/csv_io.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "doctest.h"
#include "riskhorizon/oracle.hpp"

using namespace riskhorizon;
namespace fs = std::filesystem;

namespace
{

struct TempDir
{
  fs::path path;
  TempDir()
  {
    path = fs::temp_directory_path() /
           ("riskhorizon_test_" + std::to_string(splitmix64_at(
                                    static_cast<std::uint64_t>(
                                      std::chrono::steady_clock::now().time_since_epoch().count()),
                                    0)));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_SUITE("csv_io")
{

TEST_CASE("format_double parses back exactly")
{
  CHECK(format_double(0.5) == "0.5");
  CHECK(format_double(-1.25) == "-1.25");
  CHECK(parse_double("0.7") == doctest::Approx(0.7));
  for (int i = 0; i < 200; ++i) {
    const double x = (uniform01_at(5, i) - 0.5) * 1e6;
    CHECK(parse_double(format_double(x)) == x);  // shortest round trip
  }
  CHECK_THROWS_AS(parse_double("abc"), std::invalid_argument);
}

TEST_CASE("trajectory round trip keeps velocities")
{
  TempDir dir;
  std::vector<KinematicState> states;
  for (int i = 0; i < 10; ++i) {
    states.push_back(
      {0.1 * i, {1.0 + 0.3 * i, -2.0 + 0.01 * i * i}, {3.0, 0.02 * i}});
  }
  const Trajectory original("p1", states);
  const fs::path file = dir.path / "traj.csv";
  write_trajectory_csv(file, original);
  const Trajectory loaded = read_trajectory_csv(file, "p1");
  REQUIRE(loaded.size() == original.size());
  for (std::size_t i = 0; i < loaded.size(); ++i) {
    CHECK(loaded[i].time == original[i].time);
    CHECK(loaded[i].position.x == original[i].position.x);
    CHECK(loaded[i].velocity.y == original[i].velocity.y);
  }
  CHECK_FALSE(fs::exists(dir.path / "traj.csv.tmp"));
}

TEST_CASE("position-only files fall back to finite differences")
{
  TempDir dir;
  const fs::path file = dir.path / "pos.csv";
  std::ofstream(file) << "t,x,y\n0,0,0\n1,2,0\n2,4,0\n";
  const Trajectory loaded = read_trajectory_csv(file, "p");
  for (const auto & s : loaded.samples()) {
    CHECK(s.velocity.x == doctest::Approx(2.0));
    CHECK(s.velocity.y == doctest::Approx(0.0));
  }
}

TEST_CASE("velocity columns win over finite differences")
{
  TempDir dir;
  const fs::path file = dir.path / "vel.csv";
  // finite differences would say vx = 2; the file says vx = 9
  std::ofstream(file) << "t,x,y,vx,vy\n0,0,0,9,0\n1,2,0,9,0\n2,4,0,9,0\n";
  const Trajectory loaded = read_trajectory_csv(file, "p");
  for (const auto & s : loaded.samples()) CHECK(s.velocity.x == doctest::Approx(9.0));
}

TEST_CASE("malformed trajectory files are rejected")
{
  TempDir dir;
  const fs::path file = dir.path / "bad.csv";
  SUBCASE("wrong header")
  {
    std::ofstream(file) << "a,b,c\n0,0,0\n";
    CHECK_THROWS_WITH_AS(read_trajectory_csv(file, "p"), doctest::Contains("header"),
                         std::runtime_error);
  }
  SUBCASE("short row")
  {
    std::ofstream(file) << "t,x,y\n0,0\n";
    CHECK_THROWS_AS(read_trajectory_csv(file, "p"), std::runtime_error);
  }
  SUBCASE("missing file")
  {
    CHECK_THROWS_AS(read_trajectory_csv(dir.path / "nope.csv", "p"), std::runtime_error);
  }
}

TEST_CASE("trace round trip")
{
  TempDir dir;
  RiskTrace trace;
  trace.measure = Measure::kSa;
  trace.times = {-2.0, -1.0, 0.0};
  trace.values = {0.25, 0.5, 1.0};
  const fs::path file = dir.path / "trace.csv";
  write_trace_csv(file, trace);
  const RiskTrace loaded = read_trace_csv(file);
  CHECK(loaded.measure == Measure::kSa);
  REQUIRE(loaded.values.size() == 3);
  CHECK(loaded.values[1] == 0.5);
  CHECK(loaded.times[0] == -2.0);
}

TEST_CASE("stats table has the full grid and dash pattern")
{
  TempDir dir;
  DetectionStats crash_row;
  crash_row.measure = Measure::kSa;
  crash_row.kind = ScenarioKind::kLongitudinal;
  crash_row.case_ = ScenarioCase::kCrash;
  crash_row.n = 7;
  crash_row.t_d_mean = -1.5;
  crash_row.sigma_t = 0.25;
  const fs::path file = dir.path / "stats.csv";
  write_stats_csv(file, {crash_row});

  std::ifstream in(file);
  std::string line;
  std::getline(in, line);
  CHECK(line == "measure,kind,case,t_d,sigma_t,R_max,sigma_R,FP,N");
  int rows = 0;
  bool found = false;
  while (std::getline(in, line)) {
    ++rows;
    if (line.rfind("SA,longitudinal,crash,", 0) == 0) {
      found = true;
      CHECK(line == "SA,longitudinal,crash,-1.5,0.25,,,,7");
    }
    if (line.rfind("TTC,intersection,non_crash,", 0) == 0) {
      CHECK(line == "TTC,intersection,non_crash,,,,,,0");
    }
  }
  CHECK(rows == 24);  // 4 measures x 2 kinds x 3 cases
  CHECK(found);
}

TEST_CASE("scenario config round trip")
{
  TempDir dir;
  auto specs = default_scenario_set(7);
  specs.resize(5);
  const fs::path file = dir.path / "scenarios.json";
  write_scenario_config(file, specs);
  const auto loaded = read_scenario_config(file);
  REQUIRE(loaded.size() == specs.size());
  for (std::size_t i = 0; i < specs.size(); ++i) {
    CHECK(loaded[i].name == specs[i].name);
    CHECK(loaded[i].kind == specs[i].kind);
    CHECK(loaded[i].case_ == specs[i].case_);
    CHECK(loaded[i].speed_a == specs[i].speed_a);
    CHECK(loaded[i].accel_b.size() == specs[i].accel_b.size());
  }
}

TEST_CASE("scenario config errors carry the entry index")
{
  TempDir dir;
  const fs::path file = dir.path / "bad.json";
  std::ofstream(file) << R"([{"name":"x","kind":"longitudinal","case":"crash",)"
                      << R"("speed_a":5.0,"speed_b":1.0,"dt":-1.0}])";
  CHECK_THROWS_WITH_AS(read_scenario_config(file), doctest::Contains("entry 0"),
                       std::runtime_error);
  std::ofstream(file, std::ios::trunc) << "{}";
  CHECK_THROWS_WITH_AS(read_scenario_config(file), doctest::Contains("array"),
                       std::runtime_error);
}

}  // TEST_SUITE
