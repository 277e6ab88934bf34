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

#ifndef RISKHORIZON__RISK_MEASURES_HPP_
#define RISKHORIZON__RISK_MEASURES_HPP_

#include "riskhorizon/kinematics.hpp"

namespace riskhorizon
{

/// Constants of the closest-encounter risk measure.
///
/// The steepness constant enters the measure twice with incompatible units: as
/// a 1/s scale against the epsilon of the temporal factor and as a m^2/s
/// diffusion in the spatial factor. The two roles are therefore configurable
/// independently; they default to the same numeric value.
struct TtceParams
{
  double epsilon{1.0};        // s
  double alpha{1.0};          // dimensionless exponent
  double d_c_temporal{1.0};   // 1/s scale of the temporal decay
  double d_c_spatial{1.0};    // m^2/s growth of the positional variance

  static TtceParams uniform(double epsilon, double alpha, double d_c)
  {
    return {epsilon, alpha, d_c, d_c};
  }

  /// Throws std::invalid_argument unless epsilon, alpha and both constants are > 0.
  void validate() const;
};

/// Constants of the Gaussian occupancy measure. The temporal exponent is fixed
/// to 1/2 by the diffusion derivation.
struct GaussParams
{
  static constexpr double kAlpha = 0.5;

  double epsilon{1.0};  // s
  double d1{0.5};       // m^2/s, diffusion of participant 1
  double d2{0.5};       // m^2/s, diffusion of participant 2

  double d_c() const { return d1 + d2; }

  static GaussParams with_joint_diffusion(double epsilon, double d_c)
  {
    return {epsilon, 0.5 * d_c, 0.5 * d_c};
  }

  /// Throws std::invalid_argument unless epsilon > 0, d1 >= 0, d2 >= 0, d1 + d2 > 0.
  void validate() const;
};

/// Non-normalized Gaussian resulting from the product of two Gaussian densities.
struct GaussianProduct
{
  double mu_c{0.0};        // m
  double sigma_c_sq{0.0};  // m^2
  double s_c{0.0};         // 1/m, scale factor of the product
};

/// Temporal collision risk [eps / (eps + D_c s_e)]^alpha. Equals 1 at s_e = 0
/// and decays to 0 for distant encounters.
double risk_ttc(double s_e, const TtceParams & params);

/// Closest-encounter risk: temporal factor times the spatial proximity factor
/// exp(-d_e^2 / (2 D_c s_e)). Reduces exactly to risk_ttc when d_e = 0; a
/// receding pair at positive distance (s_e = 0, d_e > 0) scores 0.
double risk_ttce(const Encounter & encounter, const TtceParams & params);

/// Product of two 1D Gaussians. Throws std::invalid_argument on non-positive
/// variances.
GaussianProduct gaussian_product(double mu1, double var1, double mu2, double var2);

/// Spatial-overlap event probability at predicted distance d and look-ahead s
/// under the diffusion model sigma^2 = D_c s. The s = 0 limit is 1 for d = 0
/// and 0 otherwise.
double event_prob_gauss(double d, double s, const GaussParams & params);

struct GaussRisk
{
  double risk{0.0};
  double s_e{0.0};  // grid argmax of the event probability
};

/// Maximal event probability over the sampled profile grid; ties break toward
/// the smaller look-ahead. Throws std::invalid_argument on an empty profile.
GaussRisk risk_gauss(const DistanceProfile & profile, const GaussParams & params);

}  // namespace riskhorizon

#endif  // RISKHORIZON__RISK_MEASURES_HPP_
