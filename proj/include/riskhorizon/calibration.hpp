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

#ifndef RISKHORIZON__CALIBRATION_HPP_
#define RISKHORIZON__CALIBRATION_HPP_

#include <string>
#include <vector>

#include "riskhorizon/evaluation.hpp"

namespace riskhorizon
{

/// Constraints of the parameter search.
struct CalibrationConfig
{
  double r_th{0.7};          // detection threshold for the false-positive check
  double r_max_floor{0.5};   // near-crash maxima must exceed this
  double limit_value{0.99};  // required risk one step before a canonical crash

  void validate() const;
};

/// Outcome of a grid search for one measure.
///
/// The search is lexicographic over a fixed in-code grid: hard constraints
/// first (limit contract on the canonical crash, receding limit, no detection
/// saturated at the trace start, zero false positives on the held-out half),
/// then the largest number of near-crash instances satisfying the risk floor,
/// then the largest mean detection earliness. floor_satisfied < floor_total
/// means the floor constraint is not fully satisfiable on this scenario set;
/// the returned parameters are the best under the remaining constraints.
struct CalibrationResult
{
  Measure measure{Measure::kTtce};
  EvalParams params;          // base params with the calibrated measure substituted
  bool feasible{false};       // some grid point passed the hard constraints
  int floor_satisfied{0};     // near-crash instances meeting the floor
  int floor_total{0};
  double mean_abs_t_d{0.0};   // over detected crash traces
  std::vector<std::string> notes;
};

/// Grid-searches the free constants of one measure over the instance set.
/// Deterministic: identical inputs produce identical results. Throws
/// std::invalid_argument when the set lacks crash or near-crash instances.
CalibrationResult calibrate(
  Measure measure, const std::vector<ScenarioInstance> & instances, const EvalParams & base,
  const CalibrationConfig & config);

}  // namespace riskhorizon

#endif  // RISKHORIZON__CALIBRATION_HPP_
