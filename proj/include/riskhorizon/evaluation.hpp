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

#ifndef RISKHORIZON__EVALUATION_HPP_
#define RISKHORIZON__EVALUATION_HPP_

#include <optional>
#include <string>
#include <vector>

#include "riskhorizon/risk_measures.hpp"
#include "riskhorizon/scenarios.hpp"
#include "riskhorizon/survival.hpp"

namespace riskhorizon
{

enum class Measure { kTtc, kTtce, kGauss, kSa };

const char * to_string(Measure measure);
Measure measure_from_string(const std::string & s);

/// All measures along a fixed-kind list, in the stats table order.
inline constexpr Measure kAllMeasures[] = {
  Measure::kTtc, Measure::kTtce, Measure::kGauss, Measure::kSa};

/// Parameters for one evaluation run. The shared horizon is the look-ahead of
/// the per-timestep constant-velocity prediction; it overrides the survival
/// horizon when traces are computed.
struct EvalParams
{
  TtceParams ttce;
  GaussParams gauss;
  SurvivalParams sa;
  double horizon{6.0};  // s_H

  void validate() const;
};

/// Library defaults before calibration.
EvalParams default_eval_params();

/// The calibrated parameter set shipped with the harness; reproducible with
/// calibrate() over the default scenario set.
EvalParams calibrated_eval_params();

/// Risk time series of one measure over one scenario. Scene times are
/// negative before the critical moment. A time-to-collision trace is only
/// meaningful while the pair is on a near-collinear closing course; traces
/// violating that anywhere are marked not applicable.
struct RiskTrace
{
  Measure measure{Measure::kTtce};
  std::vector<double> times;   // s, relative to t_event
  std::vector<double> values;  // in [0, 1]
  bool applicable{true};
};

/// Runs one measure over every stored timestep up to the critical moment,
/// feeding it the constant-velocity distance prediction. Throws
/// std::invalid_argument when the horizon does not exceed the start offset.
RiskTrace compute_trace(
  const ScenarioInstance & instance, Measure measure, const EvalParams & params);

/// First time the trace reaches the threshold, relative to the event time;
/// empty when the threshold is never reached or the trace is not applicable.
std::optional<double> detect(const RiskTrace & trace, double r_th);

/// A computed trace together with the scenario class it came from.
struct EvaluatedTrace
{
  std::string instance_name;
  ScenarioKind kind{ScenarioKind::kLongitudinal};
  ScenarioCase case_{ScenarioCase::kCrash};
  RiskTrace trace;
};

/// Detection statistics of one measure on one scenario group. Detection-time
/// fields are populated for crash groups, max-risk and false-positive fields
/// for near- and non-crash groups. Spreads are population standard deviations.
struct DetectionStats
{
  Measure measure{Measure::kTtce};
  ScenarioKind kind{ScenarioKind::kLongitudinal};
  ScenarioCase case_{ScenarioCase::kCrash};
  int n{0};       // traces in the group
  int misses{0};  // crash traces that never reached the threshold
  std::optional<double> t_d_mean;
  std::optional<double> sigma_t;
  std::optional<double> r_max_mean;
  std::optional<double> sigma_r;
  std::optional<int> fp;  // count of R_max > r_th
};

/// Groups traces by measure, kind and case and reduces each group. Groups
/// without traces are omitted. Throws std::invalid_argument on empty input.
std::vector<DetectionStats> aggregate(const std::vector<EvaluatedTrace> & traces, double r_th);

/// Maximum trace value (0 for an empty trace).
double max_value(const RiskTrace & trace);

}  // namespace riskhorizon

#endif  // RISKHORIZON__EVALUATION_HPP_
