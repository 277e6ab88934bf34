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

#include "riskhorizon/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace riskhorizon
{

std::uint64_t splitmix64_at(std::uint64_t seed, std::uint64_t counter)
{
  std::uint64_t z = seed + (counter + 1) * 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double uniform01_at(std::uint64_t seed, std::uint64_t counter)
{
  return static_cast<double>(splitmix64_at(seed, counter) >> 11) * 0x1.0p-53;
}

double normal_at(std::uint64_t seed, std::uint64_t counter)
{
  // Box-Muller on two counter-based uniforms; u1 is kept away from zero.
  const double u1 = (static_cast<double>(splitmix64_at(seed, 2 * counter) >> 11) + 0.5) * 0x1.0p-53;
  const double u2 = uniform01_at(seed, 2 * counter + 1);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

void OracleConfig::validate() const
{
  if (!(grid_step > 0.0) || !(grid_max > 0.0)) {
    throw std::invalid_argument("OracleConfig: grid must have positive step and extent");
  }
  if (mc_samples < 10000) {
    throw std::invalid_argument("OracleConfig: mc_samples must be at least 1e4");
  }
}

Encounter brute_force_encounter(const RelativeState & rel, const OracleConfig & config)
{
  config.validate();
  const auto distance = [&rel](double s) { return relative_distance_at(rel, s); };

  double best_s = 0.0;
  double best_d = distance(0.0);
  const auto scan = [&](double lo, double hi, double step) {
    for (double s = lo; s <= hi + 0.5 * step; s += step) {
      const double clamped = std::clamp(s, 0.0, config.grid_max);
      const double d = distance(clamped);
      if (d < best_d) {
        best_d = d;
        best_s = clamped;
      }
    }
  };

  scan(0.0, config.grid_max, config.grid_step);
  // Local rescans sharpen the coarse minimum well below the criterion
  // tolerances without assuming anything about the profile shape.
  double step = config.grid_step;
  for (int round = 0; round < 4; ++round) {
    const double fine = step / 100.0;
    scan(std::max(0.0, best_s - step), std::min(config.grid_max, best_s + step), fine);
    step = fine;
  }
  return {best_s, best_d};
}

McEstimate mc_gaussian_overlap(
  double mu1, double var1, double mu2, double var2, const OracleConfig & config)
{
  config.validate();
  if (!(var1 > 0.0) || !(var2 > 0.0)) {
    throw std::invalid_argument("mc_gaussian_overlap: variances must be > 0");
  }
  const double sigma1 = std::sqrt(var1);
  const double inv_norm2 = 1.0 / std::sqrt(2.0 * std::numbers::pi * var2);

  double sum = 0.0;
  double sum_sq = 0.0;
  const std::uint64_t n = config.mc_samples;
  for (std::uint64_t i = 0; i < n; ++i) {
    const double x = mu1 + sigma1 * normal_at(config.rng_seed, i);
    const double diff = x - mu2;
    const double f2 = inv_norm2 * std::exp(-diff * diff / (2.0 * var2));
    sum += f2;
    sum_sq += f2 * f2;
  }
  const double mean = sum / static_cast<double>(n);
  const double variance =
    std::max(0.0, sum_sq / static_cast<double>(n) - mean * mean);
  return {mean, std::sqrt(variance / static_cast<double>(n))};
}

McEstimate mc_survival(const RateProfile & rates, const OracleConfig & config)
{
  config.validate();
  const std::size_t n = rates.critical_rate.size();
  if (n < 2 || !(rates.step > 0.0)) {
    throw std::invalid_argument("mc_survival: rate profile needs at least two grid points");
  }
  for (double rate : rates.critical_rate) {
    if ((rate + rates.escape_rate) * rates.step > 0.1) {
      throw std::invalid_argument(
        "mc_survival: step too coarse for the rates (needs total_rate * step <= 0.1)");
    }
  }

  std::uint64_t critical = 0;
  const std::uint64_t runs = config.mc_samples;
  std::uint64_t counter = 0;
  for (std::uint64_t run = 0; run < runs; ++run) {
    for (std::size_t i = 0; i < n; ++i) {
      const double crit_rate = rates.critical_rate[i];
      const double total = crit_rate + rates.escape_rate;
      const double u = uniform01_at(config.rng_seed, counter++);
      if (u < total * rates.step) {
        // an event fired; classify it
        const double v = uniform01_at(config.rng_seed, counter++);
        if (v < crit_rate / total) ++critical;
        break;
      }
      // runs that survive to the horizon count as escapes
    }
  }
  const double p = static_cast<double>(critical) / static_cast<double>(runs);
  return {p, std::sqrt(p * (1.0 - p) / static_cast<double>(runs))};
}

}  // namespace riskhorizon
