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

#ifndef RISKHORIZON__ORACLE_HPP_
#define RISKHORIZON__ORACLE_HPP_

#include <cstdint>

#include "riskhorizon/kinematics.hpp"
#include "riskhorizon/survival.hpp"

namespace riskhorizon
{

/// Counter-based generator: draw k of a stream seeded with s is
/// splitmix64(s + k * 0x9e3779b97f4a7c15), so results are reproducible across
/// platforms and independent of evaluation order.
std::uint64_t splitmix64_at(std::uint64_t seed, std::uint64_t counter);

/// Uniform double in [0, 1) from the counter-based stream.
double uniform01_at(std::uint64_t seed, std::uint64_t counter);

/// Standard normal via Box-Muller on two counter-based uniforms.
double normal_at(std::uint64_t seed, std::uint64_t counter);

struct OracleConfig
{
  double grid_step{1e-3};            // s, coarse scan resolution
  double grid_max{20.0};             // s, scan horizon
  std::uint64_t mc_samples{100000};  // Monte Carlo sample count
  std::uint64_t rng_seed{1};

  /// Throws std::invalid_argument unless grid_step > 0 and mc_samples >= 1e4.
  void validate() const;
};

/// Derivative-free minimizer of the predicted distance over s in
/// [0, grid_max]: a coarse grid scan at grid_step followed by repeated local
/// rescans at 100x finer steps around the incumbent, so the returned minimum
/// is resolved far below the coarse step.
Encounter brute_force_encounter(const RelativeState & rel, const OracleConfig & config);

struct McEstimate
{
  double value{0.0};
  double std_error{0.0};
};

/// Unbiased Monte Carlo estimate of the Gaussian product mass: the mean of
/// the second density over samples of the first. Throws on non-positive
/// variances.
McEstimate mc_gaussian_overlap(
  double mu1, double var1, double mu2, double var2, const OracleConfig & config);

/// Event-process simulation on the rate grid: per step an event fires with
/// probability total_rate * step and is critical with probability
/// crit/(crit + escape); runs surviving to the horizon count as escapes.
/// Returns the critical fraction. Throws std::invalid_argument when
/// max(total_rate) * step exceeds 0.1.
McEstimate mc_survival(const RateProfile & rates, const OracleConfig & config);

}  // namespace riskhorizon

#endif  // RISKHORIZON__ORACLE_HPP_
