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

#include "riskhorizon/survival.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace riskhorizon
{

void SurvivalParams::validate() const
{
  if (!(tau0_inv > 0.0)) throw std::invalid_argument("SurvivalParams: tau0_inv must be > 0");
  if (!(tau_coll0_inv > 0.0)) {
    throw std::invalid_argument("SurvivalParams: tau_coll0_inv must be > 0");
  }
  if (!(beta_coll > 0.0)) throw std::invalid_argument("SurvivalParams: beta_coll must be > 0");
  if (!(dt_int > 0.0) || dt_int > horizon) {
    throw std::invalid_argument("SurvivalParams: need 0 < dt_int <= horizon");
  }
  if (tau_coll0_inv * dt_int > 1.0 + 1e-12) {
    throw std::invalid_argument(
      "SurvivalParams: tau_coll0_inv * dt_int must not exceed 1 "
      "(per-step event probability would leave [0, 1])");
  }
}

double collision_rate(double d, const SurvivalParams & params)
{
  return params.tau_coll0_inv * std::exp(-params.beta_coll * d);
}

RateProfile build_rate_profile(
  const DistanceProfile & profile, const SurvivalParams & params,
  const std::vector<NamedRateTerm> & extra_terms)
{
  params.validate();
  if (profile.distances.empty() || !(profile.step > 0.0)) {
    throw std::invalid_argument("build_rate_profile: empty profile");
  }
  if (profile.horizon() + 1e-9 < params.horizon) {
    throw std::invalid_argument("build_rate_profile: profile too short for the horizon");
  }

  RateProfile rates;
  rates.step = params.dt_int;
  rates.escape_rate = params.tau0_inv;
  const std::size_t n = grid_size(params.horizon, params.dt_int);
  for (const auto & term : extra_terms) {
    if (term.rates.size() != n) {
      throw std::invalid_argument("build_rate_profile: extra term '" + term.name +
                                  "' does not match the integration grid");
    }
  }
  rates.critical_rate.reserve(n);
  const std::size_t last = profile.distances.size() - 1;
  for (std::size_t i = 0; i < n; ++i) {
    const double s = rates.step * static_cast<double>(i);
    // nearest profile sample; exact when the profile is generated on this grid
    const std::size_t j =
      std::min(last, static_cast<std::size_t>(std::llround(s / profile.step)));
    double rate = collision_rate(profile.distances[j], params);
    for (const auto & term : extra_terms) rate += term.rates[i];
    rates.critical_rate.push_back(rate);
  }
  return rates;
}

SurvivalCurve integrate_survival(const RateProfile & rates)
{
  const std::size_t n = rates.critical_rate.size();
  SurvivalCurve curve;
  curve.step = rates.step;
  curve.survival.resize(n);
  curve.event_density.resize(n);
  curve.accumulated.resize(n);

  double hazard = 0.0;       // cumulative integral of the total rate
  double accumulated = 0.0;  // cumulative integral of the event density
  double prev_rate = 0.0;
  double prev_density = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double rate = rates.escape_rate + rates.critical_rate[i];
    if (i > 0) {
      hazard += 0.5 * (prev_rate + rate) * rates.step;
    }
    const double survival = std::exp(-hazard);
    const double density = rate * survival;
    if (i > 0) {
      accumulated += 0.5 * (prev_density + density) * rates.step;
    }
    curve.survival[i] = survival;
    curve.event_density[i] = density;
    // the trapezoid rule can overshoot the probability range by O(step^2)
    curve.accumulated[i] = std::min(accumulated, 1.0);
    prev_rate = rate;
    prev_density = density;
  }
  return curve;
}

double risk_sa_from_rates(const RateProfile & rates)
{
  if (rates.critical_rate.size() < 2) {
    throw std::invalid_argument("risk_sa: rate profile needs at least two grid points");
  }
  const SurvivalCurve curve = integrate_survival(rates);
  double survival_integral = 0.0;
  for (std::size_t i = 1; i < curve.survival.size(); ++i) {
    survival_integral += 0.5 * (curve.survival[i - 1] + curve.survival[i]) * curve.step;
  }
  // Critical rates vanish beyond the horizon, so the remaining mass escapes.
  const double escape = rates.escape_rate * survival_integral + curve.survival.back();
  return std::clamp(1.0 - escape, 0.0, 1.0);
}

double risk_sa(const DistanceProfile & profile, const SurvivalParams & params)
{
  return risk_sa_from_rates(build_rate_profile(profile, params));
}

}  // namespace riskhorizon
