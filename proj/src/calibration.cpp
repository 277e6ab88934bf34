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

#include "riskhorizon/calibration.hpp"

#include <cmath>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace riskhorizon
{

void CalibrationConfig::validate() const
{
  if (!(r_th > 0.0) || !(r_th < 1.0)) {
    throw std::invalid_argument("calibration: r_th must lie in (0, 1)");
  }
  if (!(limit_value > 0.0) || !(limit_value < 1.0)) {
    throw std::invalid_argument("calibration: limit_value must lie in (0, 1)");
  }
}

namespace
{

// Candidate search spaces. The bounds bracket constants whose detection
// behavior stays in the magnitude range of the reference results: the upper
// ends are capped by the imminent-crash limit contract, the lower ends keep
// risk curves from saturating the threshold at the trace start.
const double kTtceTemporalGrid[] = {0.40, 0.45, 0.50, 0.60, 0.80, 1.00, 1.20};
const double kTtceSpatialGrid[] = {50.0, 100.0, 150.0, 200.0};
const double kGaussDiffusionGrid[] = {0.70, 0.80, 0.90, 1.00, 1.20, 1.50};
const double kSaEscapeGrid[] = {0.06, 0.08, 0.10, 0.12, 0.14};
const double kSaBetaGrid[] = {0.45, 0.50, 0.55, 0.60, 0.65};
// The survival quadrature runs on the trajectory step during calibration; the
// collision rate scale is tied to it so the per-step event probability
// reaches 1 at contact.
constexpr double kSaDtInt = 0.02;
constexpr double kSaCollisionScale = 1.0 / kSaDtInt;

EvalParams with_candidate(const EvalParams & base, Measure measure, double p0, double p1)
{
  EvalParams params = base;
  switch (measure) {
    case Measure::kTtce:
      params.ttce.d_c_temporal = p0;
      params.ttce.d_c_spatial = p1;
      break;
    case Measure::kGauss:
      params.gauss = GaussParams::with_joint_diffusion(base.gauss.epsilon, p0);
      break;
    case Measure::kSa:
      params.sa.tau0_inv = p0;
      params.sa.beta_coll = p1;
      params.sa.tau_coll0_inv = kSaCollisionScale;
      params.sa.dt_int = kSaDtInt;
      break;
    default:
      break;
  }
  return params;
}

std::vector<std::pair<double, double>> candidate_grid(Measure measure)
{
  std::vector<std::pair<double, double>> grid;
  switch (measure) {
    case Measure::kTtce:
      for (double t : kTtceTemporalGrid) {
        for (double s : kTtceSpatialGrid) grid.emplace_back(t, s);
      }
      break;
    case Measure::kGauss:
      for (double d : kGaussDiffusionGrid) grid.emplace_back(d, 0.0);
      break;
    case Measure::kSa:
      for (double tau : kSaEscapeGrid) {
        for (double beta : kSaBetaGrid) grid.emplace_back(tau, beta);
      }
      break;
    default:
      break;
  }
  return grid;
}

ScenarioSpec canonical_crash_spec()
{
  ScenarioSpec spec;
  spec.name = "canonical_crash";
  spec.kind = ScenarioKind::kLongitudinal;
  spec.case_ = ScenarioCase::kCrash;
  spec.speed_a = 15.0;
  spec.speed_b = 5.0;
  return spec;
}

// Risk of one measure for a single pair of instantaneous states.
double single_risk(
  const KinematicState & a, const KinematicState & b, Measure measure, const EvalParams & params,
  double profile_dt)
{
  switch (measure) {
    case Measure::kTtce:
      return risk_ttce(closest_encounter(relative_state(a, b)), params.ttce);
    case Measure::kGauss:
      return risk_gauss(distance_profile(a, b, params.horizon, profile_dt), params.gauss).risk;
    case Measure::kSa: {
      SurvivalParams sa = params.sa;
      sa.horizon = params.horizon;
      return risk_sa(distance_profile(a, b, params.horizon, sa.dt_int), sa);
    }
    default:
      return 0.0;
  }
}

struct CandidateScore
{
  bool hard_ok = false;
  int floor_count = 0;
  double mean_abs_t_d = 0.0;
};

}  // namespace

CalibrationResult calibrate(
  Measure measure, const std::vector<ScenarioInstance> & instances, const EvalParams & base,
  const CalibrationConfig & config)
{
  config.validate();
  if (measure == Measure::kTtc) {
    throw std::invalid_argument("calibrate: the TTC trace shares the TTCE constants");
  }

  std::vector<const ScenarioInstance *> crash;
  std::vector<const ScenarioInstance *> near_crash;
  std::vector<const ScenarioInstance *> held_out;  // false-positive validation half
  std::map<std::pair<int, int>, int> group_index;
  for (const auto & instance : instances) {
    if (instance.spec.case_ == ScenarioCase::kCrash) {
      crash.push_back(&instance);
      continue;
    }
    if (instance.spec.case_ == ScenarioCase::kNearCrash) near_crash.push_back(&instance);
    const auto key = std::make_pair(
      static_cast<int>(instance.spec.kind), static_cast<int>(instance.spec.case_));
    if (group_index[key]++ % 2 == 1) held_out.push_back(&instance);
  }
  if (crash.empty() || near_crash.empty()) {
    throw std::invalid_argument("calibrate: need crash and near-crash instances");
  }

  const ScenarioInstance canonical = generate(canonical_crash_spec());
  const KinematicState receding_a{0.0, {0.0, 0.0}, {-2.5, 0.0}};
  const KinematicState receding_b{0.0, {100.0, 0.0}, {2.5, 0.0}};

  const auto grid = candidate_grid(measure);
  std::vector<CandidateScore> scores(grid.size());

  for (std::size_t g = 0; g < grid.size(); ++g) {
    const EvalParams params = with_candidate(base, measure, grid[g].first, grid[g].second);
    CandidateScore & score = scores[g];

    // Limit contracts: near-certain risk one step before a canonical crash,
    // near-zero risk for a receding pair at 100 m.
    const RiskTrace canonical_trace = compute_trace(canonical, measure, params);
    const double one_step_before = canonical_trace.values[canonical_trace.values.size() - 2];
    if (one_step_before < config.limit_value) continue;
    if (single_risk(receding_a, receding_b, measure, params, canonical.traj_a.dt()) > 0.05) {
      continue;
    }

    // Crash traces: detection must exist, fall before the event, and must not
    // already be saturated at the first sample.
    bool ok = true;
    double sum_abs_t_d = 0.0;
    for (const auto * instance : crash) {
      const RiskTrace trace = compute_trace(*instance, measure, params);
      const auto t_d = detect(trace, config.r_th);
      if (!t_d || !(*t_d < 0.0) || trace.values.front() >= config.r_th) {
        ok = false;
        break;
      }
      sum_abs_t_d += std::abs(*t_d);
    }
    if (!ok) continue;

    // No false positives on the held-out near/non-crash half.
    for (const auto * instance : held_out) {
      if (max_value(compute_trace(*instance, measure, params)) > config.r_th) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;

    score.hard_ok = true;
    score.mean_abs_t_d = sum_abs_t_d / static_cast<double>(crash.size());
    for (const auto * instance : near_crash) {
      if (max_value(compute_trace(*instance, measure, params)) > config.r_max_floor) {
        score.floor_count += 1;
      }
    }
  }

  // Lexicographic pick: hard constraints, then floor coverage, then earliness.
  std::ptrdiff_t best = -1;
  for (std::size_t g = 0; g < grid.size(); ++g) {
    if (!scores[g].hard_ok) continue;
    if (best < 0 || scores[g].floor_count > scores[best].floor_count ||
        (scores[g].floor_count == scores[best].floor_count &&
         scores[g].mean_abs_t_d > scores[best].mean_abs_t_d)) {
      best = static_cast<std::ptrdiff_t>(g);
    }
  }

  CalibrationResult result;
  result.measure = measure;
  result.floor_total = static_cast<int>(near_crash.size());
  if (best < 0) {
    result.feasible = false;
    result.params = base;
    result.notes.push_back("no grid point satisfies the hard constraints");
    return result;
  }
  result.feasible = true;
  result.params = with_candidate(base, measure, grid[best].first, grid[best].second);
  result.floor_satisfied = scores[best].floor_count;
  result.mean_abs_t_d = scores[best].mean_abs_t_d;
  if (result.floor_satisfied < result.floor_total) {
    result.notes.push_back(
      "near-crash risk floor infeasible on " +
      std::to_string(result.floor_total - result.floor_satisfied) + " of " +
      std::to_string(result.floor_total) +
      " instances; returning the best parameters under the remaining constraints");
  }
  return result;
}

}  // namespace riskhorizon
