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

#ifndef RISKHORIZON__SURVIVAL_HPP_
#define RISKHORIZON__SURVIVAL_HPP_

#include <string>
#include <vector>

#include "riskhorizon/kinematics.hpp"

namespace riskhorizon
{

/// Constants of the survival-analysis risk measure.
///
/// The collision rate scale is a free parameter bounded by the integration
/// step: tau_coll0_inv * dt_int <= 1 keeps the per-step event probability a
/// probability. Choosing tau_coll0_inv = 1/dt_int makes it reach 1 at contact.
struct SurvivalParams
{
  double tau0_inv{0.3};        // 1/s, escape rate
  double tau_coll0_inv{20.0};  // 1/s, collision rate at zero distance
  double beta_coll{0.3};       // 1/m, distance decay of the collision rate
  double dt_int{0.05};         // s, integration step
  double horizon{6.0};         // s, prediction horizon

  /// Throws std::invalid_argument when a rate or step is out of range or
  /// tau_coll0_inv * dt_int exceeds 1.
  void validate() const;
};

/// Extra critical-rate contribution sampled on the same grid as the profile.
/// The shipped measure uses only the collision term; additional named terms
/// can be composed in by callers.
struct NamedRateTerm
{
  std::string name;
  std::vector<double> rates;  // 1/s per grid point
};

/// Event rates on a uniform look-ahead grid covering [0, horizon].
struct RateProfile
{
  double step{0.0};                   // s
  std::vector<double> critical_rate;  // 1/s per grid point
  double escape_rate{0.0};            // 1/s, constant

  double horizon() const
  {
    return critical_rate.empty() ? 0.0
                                 : static_cast<double>(critical_rate.size() - 1) * step;
  }
};

/// Survival probability, event density and accumulated event probability on
/// the rate grid.
struct SurvivalCurve
{
  double step{0.0};
  std::vector<double> survival;       // S(s), starts at 1, non-increasing
  std::vector<double> event_density;  // 1/s
  std::vector<double> accumulated;    // A(s), starts at 0, non-decreasing
};

/// Instantaneous collision event rate tau_coll0_inv * exp(-beta_coll * d).
double collision_rate(double d, const SurvivalParams & params);

/// Samples the collision rate of a distance profile onto the integration grid
/// (nearest-point resampling when the profile is coarser) and attaches the
/// escape rate. Extra terms are added pointwise to the critical rate. Throws
/// std::invalid_argument when the profile does not reach the horizon or an
/// extra term has the wrong length.
RateProfile build_rate_profile(
  const DistanceProfile & profile, const SurvivalParams & params,
  const std::vector<NamedRateTerm> & extra_terms = {});

/// Trapezoidal integration of the total rate into the survival curve, the
/// event density and its running integral.
SurvivalCurve integrate_survival(const RateProfile & rates);

/// Survival-analysis risk: one minus the overall escape probability
/// tau0_inv * int_0^sH S ds + S(sH). Critical rates are taken as zero beyond
/// the horizon, so the surviving mass S(sH) escapes. Clamped to [0, 1].
double risk_sa(const DistanceProfile & profile, const SurvivalParams & params);

/// Same closure applied to a prebuilt rate profile.
double risk_sa_from_rates(const RateProfile & rates);

}  // namespace riskhorizon

#endif  // RISKHORIZON__SURVIVAL_HPP_
