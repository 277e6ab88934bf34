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
//
// End-to-end checks of the full harness, one pass/fail line per criterion.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "riskhorizon/calibration.hpp"
#include "riskhorizon/csv_io.hpp"
#include "riskhorizon/evaluation.hpp"
#include "riskhorizon/oracle.hpp"
#include "riskhorizon/parallel.hpp"
#include "riskhorizon/scenarios.hpp"

namespace fs = std::filesystem;
using namespace riskhorizon;
using Clock = std::chrono::steady_clock;

namespace
{

int g_failures = 0;

void report(int index, const std::string & label, bool pass, const std::string & detail)
{
  std::cout << (pass ? "PASS" : "FAIL") << " criterion " << index << ": " << label;
  if (!detail.empty()) std::cout << " (" << detail << ")";
  std::cout << std::endl;
  if (!pass) ++g_failures;
}

double seconds_since(Clock::time_point start)
{
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// Seeded relative-state generator shared by criteria 1 and 2: rejection keeps
// the unclamped minimizer inside the brute-force scan window.
std::vector<RelativeState> sampled_relative_states(std::uint64_t seed, std::size_t count,
                                                   double grid_max)
{
  std::vector<RelativeState> states;
  std::uint64_t draw = 0;
  while (states.size() < count) {
    const RelativeState rel{
      {uniform01_at(seed, 4 * draw) * 100 - 50, uniform01_at(seed, 4 * draw + 1) * 100 - 50},
      {uniform01_at(seed, 4 * draw + 2) * 30 - 15, uniform01_at(seed, 4 * draw + 3) * 30 - 15}};
    ++draw;
    const double vv = norm_sq(rel.delta_v);
    if (vv >= kVelocityEpsSq && -dot(rel.delta_x, rel.delta_v) / vv > 0.9 * grid_max) continue;
    states.push_back(rel);
  }
  return states;
}

ScenarioInstance canonical_crash()
{
  ScenarioSpec spec;
  spec.name = "canonical";
  spec.kind = ScenarioKind::kLongitudinal;
  spec.case_ = ScenarioCase::kCrash;
  spec.speed_a = 15.0;
  spec.speed_b = 5.0;
  return gen_longitudinal(spec);
}

void criterion_1_and_2()
{
  const auto start = Clock::now();
  OracleConfig config;
  const auto states = sampled_relative_states(20260808, 1000, config.grid_max);

  bool geometry_ok = true;
  bool identity_ok = true;
  double worst_s = 0.0, worst_d = 0.0, worst_identity = 0.0;
  for (const auto & rel : states) {
    const auto closed = closest_encounter(rel);
    const auto brute = brute_force_encounter(rel, config);
    worst_s = std::max(worst_s, std::abs(closed.s_e - brute.s_e));
    worst_d = std::max(worst_d, std::abs(closed.d_e - brute.d_e));
    if (std::abs(closed.s_e - brute.s_e) > config.grid_step ||
        std::abs(closed.d_e - brute.d_e) > 1e-6) {
      geometry_ok = false;
    }
    // angle identity on non-degenerate approaching cases
    const double vv = norm_sq(rel.delta_v);
    if (vv >= kVelocityEpsSq && dot(rel.delta_x, rel.delta_v) < 0.0) {
      const double identity = std::abs(cross(rel.delta_x, rel.delta_v)) / std::sqrt(vv);
      const double err = std::abs(closed.d_e - identity) / (1.0 + norm(rel.delta_x));
      worst_identity = std::max(worst_identity, err);
      if (err > 1e-9) identity_ok = false;
    }
  }
  const double elapsed = seconds_since(start);
  std::ostringstream detail1;
  detail1 << "max |ds|=" << worst_s << ", max |dd|=" << worst_d << ", " << elapsed << " s";
  report(1, "closed-form encounter matches the brute-force scan on 1000 seeded cases",
         geometry_ok && elapsed < 5.0, detail1.str());
  std::ostringstream detail2;
  detail2 << "max scaled error " << worst_identity;
  report(2, "closest distance equals |dx| |sin(angle)| on approaching cases", identity_ok,
         detail2.str());
}

void criterion_3()
{
  const auto start = Clock::now();
  OracleConfig config;
  config.mc_samples = 1000000;
  const std::uint64_t seed = 31415;
  bool ok = true;
  double worst_sigma = 0.0;
  for (int i = 0; i < 50; ++i) {
    const auto seq = static_cast<std::uint64_t>(i);
    const double mu1 = uniform01_at(seed, 4 * seq) * 6 - 3;
    const double mu2 = uniform01_at(seed, 4 * seq + 1) * 6 - 3;
    const double var1 = 0.25 + uniform01_at(seed, 4 * seq + 2) * 3.75;
    const double var2 = 0.25 + uniform01_at(seed, 4 * seq + 3) * 3.75;
    config.rng_seed = 100 + seq;
    const auto estimate = mc_gaussian_overlap(mu1, var1, mu2, var2, config);
    const double analytic = gaussian_product(mu1, var1, mu2, var2).s_c;
    const double sigmas = std::abs(estimate.value - analytic) / estimate.std_error;
    worst_sigma = std::max(worst_sigma, sigmas);
    if (sigmas > 3.0) ok = false;
  }
  const double elapsed = seconds_since(start);
  std::ostringstream detail;
  detail << "worst deviation " << worst_sigma << " sigma, " << elapsed << " s";
  report(3, "analytic Gaussian overlap matches the Monte Carlo oracle on 50 pairs",
         ok && elapsed < 30.0, detail.str());
}

void criterion_4()
{
  const std::uint64_t seed = 6174;
  bool ok = true;
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    const double escape = 0.05 + uniform01_at(seed, 2 * i) * 0.75;
    const double critical = 0.05 + uniform01_at(seed, 2 * i + 1) * 1.75;
    RateProfile rates;
    rates.step = 1e-3;
    rates.escape_rate = escape;
    rates.critical_rate.assign(grid_size(20.0 / (escape + critical), rates.step), critical);
    const auto curve = integrate_survival(rates);
    const double defect = std::abs(curve.accumulated.back() + curve.survival.back() - 1.0);
    worst = std::max(worst, defect);
    if (defect > 1e-4) ok = false;
  }
  std::ostringstream detail;
  detail << "worst |A + S - 1| = " << worst;
  report(4, "accumulated event probability normalizes on 20 constant-rate profiles", ok,
         detail.str());
}

void criterion_5()
{
  const auto start = Clock::now();
  RateProfile quad_rates;
  quad_rates.step = 1e-3;
  quad_rates.escape_rate = 0.2;
  quad_rates.critical_rate.assign(grid_size(200.0, quad_rates.step), 0.8);
  const double quadrature = risk_sa_from_rates(quad_rates);

  RateProfile mc_rates;
  mc_rates.step = 0.01;
  mc_rates.escape_rate = 0.2;
  mc_rates.critical_rate.assign(grid_size(200.0, mc_rates.step), 0.8);
  OracleConfig config;
  config.mc_samples = 1000000;
  config.rng_seed = 99;
  const auto mc = mc_survival(mc_rates, config);

  const double elapsed = seconds_since(start);
  const bool quad_ok = std::abs(quadrature - 0.8) <= 1e-3;
  const bool mc_ok = std::abs(mc.value - 0.8) <= 3.0 * mc.std_error;
  std::ostringstream detail;
  detail << "quadrature " << quadrature << ", MC " << mc.value << " +- " << mc.std_error << ", "
         << elapsed << " s";
  report(5, "constant-rate risk equals the closed form by quadrature and simulation",
         quad_ok && mc_ok && elapsed < 60.0, detail.str());
}

void criterion_6()
{
  const auto params = calibrated_eval_params();
  const auto crash = canonical_crash();
  bool ok = true;
  std::ostringstream detail;

  for (const Measure m : {Measure::kTtc, Measure::kTtce, Measure::kGauss, Measure::kSa}) {
    const auto trace = compute_trace(crash, m, params);
    if (m == Measure::kTtc && !trace.applicable) {
      ok = false;
      detail << "TTC inapplicable on the collinear crash; ";
      continue;
    }
    const double one_step_before = trace.values[trace.values.size() - 2];
    detail << to_string(m) << "=" << one_step_before << " ";
    if (one_step_before < 0.99) ok = false;
  }

  // receding pair at 100 m
  std::vector<KinematicState> a, b;
  for (int i = 0; i <= 50; ++i) {
    const double t = -1.0 + 0.02 * i;
    a.push_back({t, {-2.5 * t, 0.0}, {-2.5, 0.0}});
    b.push_back({t, {100.0 + 2.5 * t, 0.0}, {2.5, 0.0}});
  }
  ScenarioInstance receding;
  receding.spec.name = "receding";
  receding.spec.start_offset = 1.0;
  receding.spec.dt = 0.02;
  receding.traj_a = Trajectory("a", a);
  receding.traj_b = Trajectory("b", b);
  detail << "| receding: ";
  for (const Measure m : {Measure::kTtce, Measure::kGauss, Measure::kSa}) {
    const double r = max_value(compute_trace(receding, m, params));
    detail << to_string(m) << "=" << r << " ";
    if (r > 0.05) ok = false;
  }
  // the time-to-collision trace refuses a receding pair
  if (compute_trace(receding, Measure::kTtc, params).applicable) {
    ok = false;
    detail << "TTC applicable on receding input";
  }
  report(6, "imminent crashes score >= 0.99 and receding pairs <= 0.05", ok, detail.str());
}

void criterion_7()
{
  const std::uint64_t seed = 777;
  const auto params = calibrated_eval_params().ttce;
  bool ok = true;
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double gap = 0.5 + uniform01_at(seed, 3 * i) * 80.0;
    const double speed = 0.5 + uniform01_at(seed, 3 * i + 1) * 20.0;
    const double angle = uniform01_at(seed, 3 * i + 2) * 6.283185307179586;
    const Vec2 dir{std::cos(angle), std::sin(angle)};
    const auto enc = closest_encounter({dir * gap, dir * -speed});
    const double ttce = risk_ttce(enc, params);
    const double ttc = risk_ttc(enc.s_e, params);
    const double rel_err = std::abs(ttce - ttc) / std::max(ttc, 1e-300);
    worst = std::max(worst, rel_err);
    if (rel_err > 1e-12) ok = false;
  }
  std::ostringstream detail;
  detail << "worst relative difference " << worst;
  report(7, "the encounter measure reduces to the collision measure on collinear courses", ok,
         detail.str());
}

void criterion_8()
{
  // slow crash course: closing 1 m/s, predicted encounter 3 s out
  const KinematicState a{0.0, {0.0, 0.0}, {1.0, 0.0}};
  const KinematicState b{0.0, {3.0, 0.0}, {0.0, 0.0}};
  const double grid_step = 0.01;
  const auto profile = distance_profile(a, b, 6.0, grid_step);
  const double s_ttce = closest_encounter(relative_state(a, b)).s_e;

  bool ok = true;
  std::ostringstream detail;
  double previous = 1e300;
  double final_diff = 0.0;
  double d_c = 1.0;
  for (int step = 0; step <= 8; ++step) {
    const auto gauss = risk_gauss(profile, GaussParams::with_joint_diffusion(1.0, d_c));
    const double diff = std::abs(gauss.s_e - s_ttce);
    detail << diff << (step < 8 ? " " : "");
    if (diff > previous + 1e-12) ok = false;
    previous = diff;
    final_diff = diff;
    d_c *= 0.5;
  }
  if (final_diff >= grid_step) ok = false;
  report(8, "halving the diffusion drives the Gaussian argmax onto the encounter time", ok,
         detail.str());
}

void criterion_9()
{
  const auto start = Clock::now();
  const auto params = calibrated_eval_params();
  const auto specs = default_scenario_set(42);
  std::vector<ScenarioInstance> instances(specs.size());
  parallel_for(specs.size(), [&](std::size_t i) { instances[i] = generate(specs[i]); });

  struct Job
  {
    const ScenarioInstance * instance;
    Measure measure;
    RiskTrace trace;
  };
  std::vector<Job> jobs;
  for (const auto & instance : instances) {
    for (const Measure m : kAllMeasures) jobs.push_back({&instance, m, {}});
  }
  parallel_for(jobs.size(), [&](std::size_t i) {
    jobs[i].trace = compute_trace(*jobs[i].instance, jobs[i].measure, params);
  });

  double sum_t_d[4] = {};
  int n_t_d[4] = {};
  int fp[4] = {};
  bool all_detected = true;
  for (const auto & job : jobs) {
    if (!job.trace.applicable) continue;
    const int m = static_cast<int>(job.measure);
    if (job.instance->spec.case_ == ScenarioCase::kCrash) {
      const auto t_d = detect(job.trace, 0.7);
      if (!t_d || !(*t_d < 0.0)) {
        all_detected = false;
      } else {
        sum_t_d[m] += std::abs(*t_d);
        n_t_d[m] += 1;
      }
    } else if (max_value(job.trace) > 0.7) {
      fp[m] += 1;
    }
  }
  const double mean_ttce = sum_t_d[1] / std::max(1, n_t_d[1]);
  const double mean_gauss = sum_t_d[2] / std::max(1, n_t_d[2]);
  const double mean_sa = sum_t_d[3] / std::max(1, n_t_d[3]);
  const double elapsed = seconds_since(start);

  const bool order_ok = mean_sa >= mean_gauss && mean_gauss >= mean_ttce;
  const bool fp_ok = fp[3] <= fp[2] && fp[3] <= fp[1];
  std::ostringstream detail;
  detail << "|t_d| SA=" << mean_sa << " Gauss=" << mean_gauss << " TTCE=" << mean_ttce
         << "; FP SA=" << fp[3] << " Gauss=" << fp[2] << " TTCE=" << fp[1] << "; " << elapsed
         << " s";
  report(9, "the survival measure detects earliest with the fewest false positives",
         order_ok && fp_ok && all_detected && elapsed < 120.0, detail.str());
}

std::string slurp(const fs::path & path)
{
  std::ifstream in(path, std::ios::binary);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

bool directories_identical(const fs::path & lhs, const fs::path & rhs)
{
  std::vector<fs::path> files;
  for (const auto & entry : fs::recursive_directory_iterator(lhs)) {
    if (entry.is_regular_file()) files.push_back(fs::relative(entry.path(), lhs));
  }
  std::size_t rhs_count = 0;
  for (const auto & entry : fs::recursive_directory_iterator(rhs)) {
    if (entry.is_regular_file()) ++rhs_count;
  }
  if (files.size() != rhs_count) return false;
  for (const auto & rel : files) {
    if (!fs::exists(rhs / rel) || slurp(lhs / rel) != slurp(rhs / rel)) return false;
  }
  return true;
}

void criterion_10(const std::string & cli)
{
  if (cli.empty()) {
    report(10, "pipeline determinism", false, "no --cli path given");
    return;
  }
  const fs::path base = fs::temp_directory_path() / "riskhorizon_acceptance_determinism";
  fs::remove_all(base);
  fs::create_directories(base);

  const auto shell = [&cli](const std::string & args) {
    const std::string command = cli + " " + args + " > /dev/null 2>&1";
    return WEXITSTATUS(std::system(command.c_str()));
  };

  bool ok = true;
  for (const char * tag : {"one", "two"}) {
    const std::string root = (base / tag).string();
    if (shell("gen --out " + root + "/gen --seed 42") != 0 ||
        shell("run --config " + root + "/gen/manifest.json --out " + root + "/run") != 0 ||
        shell("stats --config " + root + "/run/run_manifest.json --out " + root +
              "/stats.csv") != 0) {
      ok = false;
    }
  }
  if (ok) {
    ok = directories_identical(base / "one", base / "two");
  }
  report(10, "gen + run + stats twice produce byte-identical outputs", ok, "");
  fs::remove_all(base);
}

}  // namespace

int main(int argc, char ** argv)
{
  std::string cli;
  for (int i = 1; i + 1 < argc; ++i) {
    if (std::string(argv[i]) == "--cli") cli = argv[i + 1];
  }

  criterion_1_and_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_10(cli);

  if (g_failures > 0) {
    std::cout << g_failures << " criterion(s) failed" << std::endl;
    return 1;
  }
  std::cout << "all criteria passed" << std::endl;
  return 0;
}
