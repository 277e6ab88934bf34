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

#include "riskhorizon/evaluation.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <stdexcept>
#include <tuple>

namespace riskhorizon
{

const char * to_string(Measure measure)
{
  switch (measure) {
    case Measure::kTtc: return "TTC";
    case Measure::kTtce: return "TTCE";
    case Measure::kGauss: return "Gauss";
    default: return "SA";
  }
}

Measure measure_from_string(const std::string & s)
{
  std::string lower;
  for (char c : s) {
    lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  if (lower == "ttc") return Measure::kTtc;
  if (lower == "ttce") return Measure::kTtce;
  if (lower == "gauss") return Measure::kGauss;
  if (lower == "sa") return Measure::kSa;
  throw std::invalid_argument("unknown measure: " + s);
}

void EvalParams::validate() const
{
  ttce.validate();
  gauss.validate();
  sa.validate();
  if (!(horizon > 0.0)) throw std::invalid_argument("EvalParams: horizon must be > 0");
}

EvalParams default_eval_params()
{
  EvalParams params;
  params.ttce = TtceParams{};
  params.gauss = GaussParams{};
  params.sa = SurvivalParams{};
  params.horizon = 6.0;
  return params;
}

EvalParams calibrated_eval_params()
{
  // Output of calibrate() over default_scenario_set(42); frozen here so runs
  // and the CLI defaults do not depend on re-searching.
  EvalParams params;
  params.ttce = TtceParams{1.0, 1.0, 0.4, 100.0};
  params.gauss = GaussParams::with_joint_diffusion(1.0, 0.7);
  params.sa = SurvivalParams{0.08, 50.0, 0.55, 0.02, 6.0};
  params.horizon = 6.0;
  return params;
}

namespace
{

// A time-to-collision value is meaningful only on a near-collinear closing
// course (or at contact).
bool ttc_applicable(const RelativeState & rel)
{
  const double dist = norm(rel.delta_x);
  if (dist < 1e-9) return true;
  const double vv = norm_sq(rel.delta_v);
  if (vv < kVelocityEpsSq) return false;
  if (dot(rel.delta_x, rel.delta_v) >= 0.0) return false;
  const double sin_angle = std::abs(cross(rel.delta_x, rel.delta_v)) / (dist * std::sqrt(vv));
  return sin_angle < 0.05;
}

}  // namespace

RiskTrace compute_trace(
  const ScenarioInstance & instance, Measure measure, const EvalParams & params)
{
  params.validate();
  if (params.horizon <= instance.spec.start_offset) {
    throw std::invalid_argument(
      "compute_trace: horizon too short (must exceed the scenario start offset)");
  }
  const auto & a = instance.traj_a.samples();
  const auto & b = instance.traj_b.samples();
  if (a.size() != b.size() ||
      std::abs(instance.traj_a.dt() - instance.traj_b.dt()) > 1e-9) {
    throw std::invalid_argument("compute_trace: trajectories do not share the time grid");
  }

  SurvivalParams sa = params.sa;
  sa.horizon = params.horizon;

  RiskTrace trace;
  trace.measure = measure;
  for (std::size_t i = 0; i < a.size() && a[i].time <= instance.t_event + 1e-12; ++i) {
    const RelativeState rel = relative_state(a[i], b[i]);
    double value = 0.0;
    switch (measure) {
      case Measure::kTtc: {
        if (!ttc_applicable(rel)) trace.applicable = false;
        value = risk_ttc(closest_encounter(rel).s_e, params.ttce);
        break;
      }
      case Measure::kTtce:
        value = risk_ttce(closest_encounter(rel), params.ttce);
        break;
      case Measure::kGauss: {
        const auto profile =
          distance_profile(a[i], b[i], params.horizon, instance.traj_a.dt());
        value = risk_gauss(profile, params.gauss).risk;
        break;
      }
      case Measure::kSa: {
        const auto profile = distance_profile(a[i], b[i], params.horizon, sa.dt_int);
        value = risk_sa(profile, sa);
        break;
      }
    }
    trace.times.push_back(a[i].time - instance.t_event);
    trace.values.push_back(value);
  }
  return trace;
}

std::optional<double> detect(const RiskTrace & trace, double r_th)
{
  if (!(r_th > 0.0) || !(r_th < 1.0)) {
    throw std::invalid_argument("detect: threshold must lie in (0, 1)");
  }
  if (!trace.applicable) return std::nullopt;
  for (std::size_t i = 0; i < trace.values.size(); ++i) {
    if (trace.values[i] >= r_th) return trace.times[i];
  }
  return std::nullopt;
}

double max_value(const RiskTrace & trace)
{
  double best = 0.0;
  for (double v : trace.values) best = std::max(best, v);
  return best;
}

namespace
{

struct Accumulator
{
  std::vector<double> t_d;
  std::vector<double> r_max;
  int n = 0;
  int misses = 0;
};

double mean(const std::vector<double> & xs)
{
  double sum = 0.0;
  for (double x : xs) sum += x;
  return sum / static_cast<double>(xs.size());
}

double population_stddev(const std::vector<double> & xs, double mu)
{
  double sum = 0.0;
  for (double x : xs) sum += (x - mu) * (x - mu);
  return std::sqrt(sum / static_cast<double>(xs.size()));
}

}  // namespace

std::vector<DetectionStats> aggregate(const std::vector<EvaluatedTrace> & traces, double r_th)
{
  if (traces.empty()) {
    throw std::invalid_argument("aggregate: no traces (empty group)");
  }
  std::map<std::tuple<int, int, int>, Accumulator> groups;
  for (const auto & entry : traces) {
    if (!entry.trace.applicable) continue;
    auto & acc = groups[{static_cast<int>(entry.trace.measure), static_cast<int>(entry.kind),
                         static_cast<int>(entry.case_)}];
    acc.n += 1;
    if (entry.case_ == ScenarioCase::kCrash) {
      if (const auto t_d = detect(entry.trace, r_th)) {
        acc.t_d.push_back(*t_d);
      } else {
        acc.misses += 1;
      }
    } else {
      acc.r_max.push_back(max_value(entry.trace));
    }
  }

  std::vector<DetectionStats> stats;
  for (const auto & [key, acc] : groups) {
    DetectionStats row;
    row.measure = static_cast<Measure>(std::get<0>(key));
    row.kind = static_cast<ScenarioKind>(std::get<1>(key));
    row.case_ = static_cast<ScenarioCase>(std::get<2>(key));
    row.n = acc.n;
    row.misses = acc.misses;
    if (row.case_ == ScenarioCase::kCrash) {
      if (!acc.t_d.empty()) {
        const double mu = mean(acc.t_d);
        row.t_d_mean = mu;
        row.sigma_t = population_stddev(acc.t_d, mu);
      }
    } else {
      const double mu = mean(acc.r_max);
      row.r_max_mean = mu;
      row.sigma_r = population_stddev(acc.r_max, mu);
      int fp = 0;
      for (double r : acc.r_max) {
        if (r > r_th) ++fp;
      }
      row.fp = fp;
    }
    stats.push_back(row);
  }
  // Fixed presentation order: measure, then kind, then case.
  std::sort(stats.begin(), stats.end(), [](const DetectionStats & a, const DetectionStats & b) {
    return std::make_tuple(static_cast<int>(a.measure), static_cast<int>(a.kind),
                           static_cast<int>(a.case_)) <
           std::make_tuple(static_cast<int>(b.measure), static_cast<int>(b.kind),
                           static_cast<int>(b.case_));
  });
  return stats;
}

}  // namespace riskhorizon
