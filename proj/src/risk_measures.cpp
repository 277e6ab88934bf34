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

#include "riskhorizon/risk_measures.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace riskhorizon
{

void TtceParams::validate() const
{
  if (!(epsilon > 0.0)) throw std::invalid_argument("TtceParams: epsilon must be > 0");
  if (!(alpha > 0.0)) throw std::invalid_argument("TtceParams: alpha must be > 0");
  if (!(d_c_temporal > 0.0) || !(d_c_spatial > 0.0)) {
    throw std::invalid_argument("TtceParams: steepness constants must be > 0");
  }
}

void GaussParams::validate() const
{
  if (!(epsilon > 0.0)) throw std::invalid_argument("GaussParams: epsilon must be > 0");
  if (d1 < 0.0 || d2 < 0.0 || !(d1 + d2 > 0.0)) {
    throw std::invalid_argument("GaussParams: diffusion constants must be >= 0 with d1 + d2 > 0");
  }
}

double risk_ttc(double s_e, const TtceParams & params)
{
  return std::pow(params.epsilon / (params.epsilon + params.d_c_temporal * s_e), params.alpha);
}

double risk_ttce(const Encounter & encounter, const TtceParams & params)
{
  const double temporal = risk_ttc(encounter.s_e, params);
  if (encounter.d_e == 0.0) {
    return temporal;  // spatial factor is exactly 1 on a collision course
  }
  if (encounter.s_e == 0.0) {
    return 0.0;  // s -> 0+ limit of the spatial factor at positive distance
  }
  const double spatial =
    std::exp(-encounter.d_e * encounter.d_e / (2.0 * params.d_c_spatial * encounter.s_e));
  return temporal * spatial;
}

GaussianProduct gaussian_product(double mu1, double var1, double mu2, double var2)
{
  if (!(var1 > 0.0) || !(var2 > 0.0)) {
    throw std::invalid_argument("gaussian_product: variances must be > 0");
  }
  GaussianProduct product;
  const double var_sum = var1 + var2;
  product.sigma_c_sq = var1 * var2 / var_sum;
  product.mu_c = (mu1 * var2 + mu2 * var1) / var_sum;
  const double diff = mu1 - mu2;
  product.s_c =
    std::exp(-diff * diff / (2.0 * var_sum)) / std::sqrt(2.0 * std::numbers::pi * var_sum);
  return product;
}

double event_prob_gauss(double d, double s, const GaussParams & params)
{
  if (s == 0.0) {
    return d == 0.0 ? 1.0 : 0.0;
  }
  const double d_c = params.d_c();
  const double temporal =
    std::pow(params.epsilon / (params.epsilon + d_c * s), GaussParams::kAlpha);
  const double spatial = std::exp(-d * d / (2.0 * d_c * s));
  return temporal * spatial;
}

GaussRisk risk_gauss(const DistanceProfile & profile, const GaussParams & params)
{
  if (profile.distances.empty() || !(profile.step > 0.0)) {
    throw std::invalid_argument("risk_gauss: empty profile");
  }
  GaussRisk best{event_prob_gauss(profile.distances[0], 0.0, params), 0.0};
  for (std::size_t i = 1; i < profile.distances.size(); ++i) {
    const double s = profile.s_at(i);
    const double p = event_prob_gauss(profile.distances[i], s, params);
    if (p > best.risk) {
      best.risk = p;
      best.s_e = s;
    }
  }
  return best;
}

}  // namespace riskhorizon
