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

#ifndef RISKHORIZON__SCENARIOS_HPP_
#define RISKHORIZON__SCENARIOS_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "riskhorizon/kinematics.hpp"

namespace riskhorizon
{

enum class ScenarioKind { kLongitudinal, kIntersection };
enum class ScenarioCase { kCrash, kNearCrash, kNonCrash };

const char * to_string(ScenarioKind kind);
const char * to_string(ScenarioCase c);
ScenarioKind scenario_kind_from_string(const std::string & s);
ScenarioCase scenario_case_from_string(const std::string & s);

/// Constant acceleration applied over [t_from, t_to] of scene time; the speed
/// is clamped at zero.
struct AccelSegment
{
  double t_from{0.0};
  double t_to{0.0};
  double accel{0.0};  // m/s^2
};

/// Declarative description of one synthetic two-participant scenario.
///
/// Both participants move on straight paths. Participant A heads for the
/// conflict point and reaches it at t = 0; what B does depends on the case:
///   longitudinal: B leads A on a parallel line offset laterally by
///     lateral_offset (0 for a crash);
///   intersection crash: B arrives at the crossing simultaneously;
///   intersection near-crash: B would cross a tight pass_gap seconds behind A
///     but brakes at yield_trigger with yield_decel and falls further behind;
///   intersection non-crash: B crosses pass_gap seconds after A at constant
///     speed.
struct ScenarioSpec
{
  std::string name;
  ScenarioKind kind{ScenarioKind::kLongitudinal};
  ScenarioCase case_{ScenarioCase::kCrash};
  double start_offset{5.5};  // s of trace before the critical moment
  double speed_a{15.0};      // m/s
  double speed_b{5.0};       // m/s
  std::vector<AccelSegment> accel_a;
  std::vector<AccelSegment> accel_b;
  double lateral_offset{7.0};   // m, longitudinal near/non-crash shift
  double pass_gap{2.0};         // s, intersection arrival separation (near/non-crash)
  double yield_trigger{-5.0};   // s, intersection near-crash brake onset
  double yield_decel{3.0};      // m/s^2, intersection near-crash deceleration
  double dt{0.02};              // s, trajectory sampling step
  std::uint64_t seed{0};

  /// Throws std::invalid_argument on inconsistent fields.
  void validate() const;
};

/// A realized scenario: two trajectories sharing the time grid plus the point
/// of maximal criticality (t_event = 0 by convention).
struct ScenarioInstance
{
  ScenarioSpec spec;
  Trajectory traj_a;
  Trajectory traj_b;
  double t_event{0.0};
};

ScenarioInstance gen_longitudinal(const ScenarioSpec & spec);
ScenarioInstance gen_intersection(const ScenarioSpec & spec);

/// Dispatches on spec.kind.
ScenarioInstance generate(const ScenarioSpec & spec);

/// The default evaluation set: 7 speed variations for each kind and case
/// (42 instances). Speed factors are drawn deterministically from the seed.
std::vector<ScenarioSpec> default_scenario_set(std::uint64_t seed);

/// Minimal realized inter-participant distance over the stored time range,
/// with the scene time at which it is attained.
struct MinDistance
{
  double distance{0.0};
  double time{0.0};
};
MinDistance min_distance(const ScenarioInstance & instance);

}  // namespace riskhorizon

#endif  // RISKHORIZON__SCENARIOS_HPP_
