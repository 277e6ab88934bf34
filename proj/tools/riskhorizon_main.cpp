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

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "riskhorizon/calibration.hpp"
#include "riskhorizon/csv_io.hpp"
#include "riskhorizon/evaluation.hpp"
#include "riskhorizon/oracle.hpp"
#include "riskhorizon/parallel.hpp"
#include "riskhorizon/scenarios.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace riskhorizon;

namespace
{

json read_json(const fs::path & path)
{
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open: " + path.string());
  json doc;
  in >> doc;
  return doc;
}

json params_to_json(const EvalParams & params)
{
  json j;
  j["horizon"] = params.horizon;
  j["ttce"] = {
    {"epsilon", params.ttce.epsilon},
    {"alpha", params.ttce.alpha},
    {"d_c_temporal", params.ttce.d_c_temporal},
    {"d_c_spatial", params.ttce.d_c_spatial}};
  j["gauss"] = {
    {"epsilon", params.gauss.epsilon}, {"d1", params.gauss.d1}, {"d2", params.gauss.d2}};
  j["sa"] = {
    {"tau0_inv", params.sa.tau0_inv},
    {"tau_coll0_inv", params.sa.tau_coll0_inv},
    {"beta_coll", params.sa.beta_coll},
    {"dt_int", params.sa.dt_int},
    {"horizon", params.sa.horizon}};
  return j;
}

EvalParams params_from_json(const json & j, EvalParams params)
{
  params.horizon = j.value("horizon", params.horizon);
  if (j.contains("ttce")) {
    const auto & t = j.at("ttce");
    params.ttce.epsilon = t.value("epsilon", params.ttce.epsilon);
    params.ttce.alpha = t.value("alpha", params.ttce.alpha);
    params.ttce.d_c_temporal = t.value("d_c_temporal", params.ttce.d_c_temporal);
    params.ttce.d_c_spatial = t.value("d_c_spatial", params.ttce.d_c_spatial);
  }
  if (j.contains("gauss")) {
    const auto & g = j.at("gauss");
    params.gauss.epsilon = g.value("epsilon", params.gauss.epsilon);
    params.gauss.d1 = g.value("d1", params.gauss.d1);
    params.gauss.d2 = g.value("d2", params.gauss.d2);
  }
  if (j.contains("sa")) {
    const auto & s = j.at("sa");
    params.sa.tau0_inv = s.value("tau0_inv", params.sa.tau0_inv);
    params.sa.tau_coll0_inv = s.value("tau_coll0_inv", params.sa.tau_coll0_inv);
    params.sa.beta_coll = s.value("beta_coll", params.sa.beta_coll);
    params.sa.dt_int = s.value("dt_int", params.sa.dt_int);
    params.sa.horizon = s.value("horizon", params.sa.horizon);
  }
  params.validate();
  return params;
}

int cmd_gen(const std::string & config, const std::string & out_dir, std::uint64_t seed)
{
  std::vector<ScenarioSpec> specs;
  if (config.empty()) {
    specs = default_scenario_set(seed);
  } else {
    specs = read_scenario_config(config);
  }
  if (specs.empty()) {
    std::cerr << "gen: scenario list is empty\n";
    return 1;
  }

  const fs::path out(out_dir);
  std::vector<ScenarioInstance> instances(specs.size());
  parallel_for(specs.size(), [&](std::size_t i) { instances[i] = generate(specs[i]); });

  json manifest;
  manifest["seed"] = seed;
  manifest["instances"] = json::array();
  for (const auto & instance : instances) {
    const std::string base = "trajectories/" + instance.spec.name;
    write_trajectory_csv(out / (base + "_a.csv"), instance.traj_a);
    write_trajectory_csv(out / (base + "_b.csv"), instance.traj_b);
    json entry;
    entry["name"] = instance.spec.name;
    entry["kind"] = to_string(instance.spec.kind);
    entry["case"] = to_string(instance.spec.case_);
    entry["t_event"] = instance.t_event;
    entry["dt"] = instance.spec.dt;
    entry["traj_a"] = base + "_a.csv";
    entry["traj_b"] = base + "_b.csv";
    manifest["instances"].push_back(entry);
  }
  write_scenario_config(out / "scenarios.json", specs);
  write_file_atomic(out / "manifest.json", manifest.dump(2) + "\n");
  std::cout << "gen: wrote " << 2 * instances.size() << " trajectory files under "
            << out.string() << "\n";
  return 0;
}

struct ManifestEntry
{
  std::string name;
  ScenarioKind kind;
  ScenarioCase case_;
  double t_event;
  Trajectory traj_a;
  Trajectory traj_b;
};

std::vector<ManifestEntry> load_manifest(const fs::path & manifest_path)
{
  const json manifest = read_json(manifest_path);
  const fs::path root = manifest_path.parent_path();
  std::vector<ManifestEntry> entries;
  for (const auto & e : manifest.at("instances")) {
    ManifestEntry entry{
      e.at("name").get<std::string>(),
      scenario_kind_from_string(e.at("kind").get<std::string>()),
      scenario_case_from_string(e.at("case").get<std::string>()),
      e.at("t_event").get<double>(),
      read_trajectory_csv(root / e.at("traj_a").get<std::string>(), "a"),
      read_trajectory_csv(root / e.at("traj_b").get<std::string>(), "b")};
    entries.push_back(std::move(entry));
  }
  return entries;
}

int cmd_run(
  const std::string & config, const std::string & out_dir,
  const std::vector<std::string> & measure_names, std::optional<double> horizon,
  const std::string & params_file)
{
  EvalParams params = calibrated_eval_params();
  if (!params_file.empty()) params = params_from_json(read_json(params_file), params);
  if (horizon) params.horizon = *horizon;

  const auto entries = load_manifest(config);
  std::vector<Measure> measures;
  for (const auto & name : measure_names) measures.push_back(measure_from_string(name));

  struct Job
  {
    const ManifestEntry * entry;
    Measure measure;
    RiskTrace trace;
  };
  std::vector<Job> jobs;
  for (const auto & entry : entries) {
    for (const Measure measure : measures) jobs.push_back({&entry, measure, {}});
  }
  parallel_for(jobs.size(), [&](std::size_t i) {
    ScenarioInstance instance;
    instance.spec.name = jobs[i].entry->name;
    instance.spec.kind = jobs[i].entry->kind;
    instance.spec.case_ = jobs[i].entry->case_;
    instance.spec.start_offset =
      jobs[i].entry->t_event - jobs[i].entry->traj_a.front().time;
    instance.spec.dt = jobs[i].entry->traj_a.dt();
    instance.traj_a = jobs[i].entry->traj_a;
    instance.traj_b = jobs[i].entry->traj_b;
    instance.t_event = jobs[i].entry->t_event;
    jobs[i].trace = compute_trace(instance, jobs[i].measure, params);
  });

  const fs::path out(out_dir);
  json run_manifest;
  run_manifest["r_th_default"] = 0.7;
  run_manifest["traces"] = json::array();
  std::size_t written = 0;
  for (const auto & job : jobs) {
    if (!job.trace.applicable) continue;  // a TTC trace off a closing collinear course
    const std::string file =
      "traces/" + job.entry->name + "_" + to_string(job.measure) + ".csv";
    write_trace_csv(out / file, job.trace);
    ++written;
    json entry;
    entry["name"] = job.entry->name;
    entry["kind"] = to_string(job.entry->kind);
    entry["case"] = to_string(job.entry->case_);
    entry["measure"] = to_string(job.measure);
    entry["file"] = file;
    run_manifest["traces"].push_back(entry);
  }
  write_file_atomic(out / "run_manifest.json", run_manifest.dump(2) + "\n");
  std::cout << "run: wrote " << written << " trace files under " << out.string() << "\n";
  return 0;
}

int cmd_stats(const std::string & config, double r_th, const std::string & out_file)
{
  const json run_manifest = read_json(config);
  const fs::path root = fs::path(config).parent_path();
  std::vector<EvaluatedTrace> traces;
  for (const auto & e : run_manifest.at("traces")) {
    EvaluatedTrace entry;
    entry.instance_name = e.at("name").get<std::string>();
    entry.kind = scenario_kind_from_string(e.at("kind").get<std::string>());
    entry.case_ = scenario_case_from_string(e.at("case").get<std::string>());
    entry.trace = read_trace_csv(root / e.at("file").get<std::string>());
    traces.push_back(std::move(entry));
  }
  const auto stats = aggregate(traces, r_th);
  write_stats_csv(out_file, stats);

  int total_misses = 0;
  for (const auto & row : stats) total_misses += row.misses;
  std::cout << "stats: " << traces.size() << " traces aggregated into " << out_file;
  if (total_misses > 0) std::cout << " (" << total_misses << " crash traces never crossed)";
  std::cout << "\n";
  return 0;
}

int cmd_calibrate(
  const std::string & config, const std::string & measure_name, const std::string & out_file,
  double r_th, double floor, std::uint64_t seed)
{
  const Measure measure = measure_from_string(measure_name);
  std::vector<ScenarioSpec> specs;
  if (config.empty()) {
    specs = default_scenario_set(seed);
  } else {
    specs = read_scenario_config(config);
  }
  std::vector<ScenarioInstance> instances(specs.size());
  parallel_for(specs.size(), [&](std::size_t i) { instances[i] = generate(specs[i]); });

  CalibrationConfig cal;
  cal.r_th = r_th;
  cal.r_max_floor = floor;
  const CalibrationResult result = calibrate(measure, instances, calibrated_eval_params(), cal);

  json out = params_to_json(result.params);
  out["calibration"] = {
    {"measure", to_string(result.measure)},
    {"feasible", result.feasible},
    {"floor", floor},
    {"floor_satisfied", result.floor_satisfied},
    {"floor_total", result.floor_total},
    {"mean_abs_t_d", result.mean_abs_t_d},
    {"notes", result.notes}};
  if (!out_file.empty()) write_file_atomic(out_file, out.dump(2) + "\n");

  std::cout << "calibrate " << to_string(result.measure) << ": ";
  if (!result.feasible) {
    std::cout << "infeasible: no parameters satisfy the hard constraints\n";
    return 3;
  }
  std::cout << "mean |t_d| = " << result.mean_abs_t_d << " s, near-crash floor "
            << result.floor_satisfied << "/" << result.floor_total << "\n";
  for (const auto & note : result.notes) std::cout << "  note: " << note << "\n";
  if (result.floor_satisfied < result.floor_total) {
    std::cout << "calibrate: near-crash floor constraint not fully satisfiable\n";
    return 3;
  }
  return 0;
}

int cmd_oracle(const std::string & name, std::uint64_t seed, std::uint64_t samples)
{
  OracleConfig config;
  config.rng_seed = seed;
  config.mc_samples = samples;
  bool pass = true;

  if (name == "encounter") {
    int failures = 0;
    for (int i = 0; i < 1000; ++i) {
      const auto seq = static_cast<std::uint64_t>(i);
      RelativeState rel{
        {uniform01_at(seed, 4 * seq) * 100.0 - 50.0, uniform01_at(seed, 4 * seq + 1) * 100.0 - 50.0},
        {uniform01_at(seed, 4 * seq + 2) * 30.0 - 15.0, uniform01_at(seed, 4 * seq + 3) * 30.0 - 15.0}};
      const auto closed = closest_encounter(rel);
      if (closed.s_e > 0.9 * config.grid_max) continue;
      const auto brute = brute_force_encounter(rel, config);
      if (std::abs(closed.s_e - brute.s_e) > config.grid_step ||
          std::abs(closed.d_e - brute.d_e) > 1e-6) {
        ++failures;
      }
    }
    std::cout << "oracle encounter: " << failures << " disagreements in 1000 cases\n";
    pass = failures == 0;
  } else if (name == "overlap") {
    // family-wise gate: 4 sigma per pair keeps the false-alarm rate of the
    // 50-comparison family around 0.3%
    int failures = 0;
    double worst = 0.0;
    for (int i = 0; i < 50; ++i) {
      const auto seq = static_cast<std::uint64_t>(i);
      const double mu1 = uniform01_at(seed ^ 0xabcdULL, 4 * seq) * 6.0 - 3.0;
      const double mu2 = uniform01_at(seed ^ 0xabcdULL, 4 * seq + 1) * 6.0 - 3.0;
      const double var1 = 0.25 + uniform01_at(seed ^ 0xabcdULL, 4 * seq + 2) * 3.75;
      const double var2 = 0.25 + uniform01_at(seed ^ 0xabcdULL, 4 * seq + 3) * 3.75;
      OracleConfig pair_config = config;
      pair_config.rng_seed = seed + 1000 + seq;
      const auto estimate = mc_gaussian_overlap(mu1, var1, mu2, var2, pair_config);
      const double analytic = gaussian_product(mu1, var1, mu2, var2).s_c;
      const double sigmas = std::abs(estimate.value - analytic) / estimate.std_error;
      worst = std::max(worst, sigmas);
      if (sigmas > 4.0) ++failures;
    }
    std::cout << "oracle overlap: " << failures
              << " of 50 pairs outside 4 standard errors (worst " << worst << ")\n";
    pass = failures == 0;
  } else if (name == "survival") {
    RateProfile rates;
    rates.step = 0.01;
    rates.escape_rate = 0.2;
    rates.critical_rate.assign(grid_size(20.0, rates.step), 0.8);
    const auto estimate = mc_survival(rates, config);
    const double closed_form = 0.8;  // crit / (crit + escape) for a long horizon
    const double tolerance = std::max(3.0 * estimate.std_error, 1e-3);
    std::cout << "oracle survival: estimate " << estimate.value << " vs " << closed_form
              << " (tolerance " << tolerance << ")\n";
    pass = std::abs(estimate.value - closed_form) <= tolerance;
  } else {
    std::cerr << "oracle: unknown oracle '" << name
              << "' (expected encounter|overlap|survival)\n";
    return 2;
  }
  std::cout << "oracle " << name << ": " << (pass ? "PASS" : "FAIL") << "\n";
  return pass ? 0 : 1;
}

}  // namespace

int main(int argc, char ** argv)
{
  CLI::App app{"riskhorizon: continuous collision-risk measures over synthetic scenarios"};
  app.require_subcommand(1);

  std::string config;
  std::string out_path;
  std::string params_file;
  std::string measure = "sa";
  std::string oracle_name;
  std::vector<std::string> measures = {"ttc", "ttce", "gauss", "sa"};
  double r_th = 0.7;
  double horizon = 6.0;
  double floor = 0.5;
  std::uint64_t seed = 42;
  std::uint64_t samples = 1000000;

  auto * gen = app.add_subcommand("gen", "generate scenario trajectories and a manifest");
  gen->add_option("--config", config, "scenario spec JSON (defaults to the built-in set)");
  gen->add_option("--out", out_path, "output directory")->required();
  gen->add_option("--seed", seed, "seed for the built-in scenario set");

  auto * run = app.add_subcommand("run", "compute risk traces for a generated manifest");
  run->add_option("--config", config, "manifest.json from gen")->required();
  run->add_option("--out", out_path, "output directory")->required();
  run->add_option("--measures", measures, "measures to evaluate")->delimiter(',');
  run->add_option("--horizon", horizon, "prediction horizon s_H in seconds");
  run->add_option("--params", params_file, "parameter JSON overriding the calibrated defaults");

  auto * stats = app.add_subcommand("stats", "aggregate traces into a statistics table");
  stats->add_option("--config", config, "run_manifest.json from run")->required();
  stats->add_option("--out", out_path, "statistics CSV path")->required();
  stats->add_option("--rth", r_th, "detection threshold");

  auto * calib = app.add_subcommand("calibrate", "grid-search measure constants");
  calib->add_option("--config", config, "scenario spec JSON (defaults to the built-in set)");
  calib->add_option("--measure", measure, "ttce|gauss|sa")->required();
  calib->add_option("--out", out_path, "parameter JSON output path");
  calib->add_option("--rth", r_th, "detection threshold");
  calib->add_option("--floor", floor, "required near-crash R_max floor");
  calib->add_option("--seed", seed, "seed for the built-in scenario set");

  auto * oracle = app.add_subcommand("oracle", "run a validation oracle");
  oracle->add_option("name", oracle_name, "encounter|overlap|survival")->required();
  oracle->add_option("--seed", seed, "oracle RNG seed");
  oracle->add_option("--samples", samples, "Monte Carlo sample count");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) return cmd_gen(config, out_path, seed);
    if (run->parsed()) {
      std::optional<double> horizon_override;
      if (run->count("--horizon") > 0) horizon_override = horizon;
      return cmd_run(config, out_path, measures, horizon_override, params_file);
    }
    if (stats->parsed()) return cmd_stats(config, r_th, out_path);
    if (calib->parsed()) return cmd_calibrate(config, measure, out_path, r_th, floor, seed);
    if (oracle->parsed()) return cmd_oracle(oracle_name, seed, samples);
  } catch (const std::exception & e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
