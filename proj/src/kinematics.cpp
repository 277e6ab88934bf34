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

#include "riskhorizon/kinematics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace riskhorizon
{

namespace
{

void check_uniform_times(const std::vector<double> & times)
{
  if (times.size() < 2) {
    throw std::invalid_argument("trajectory: too few samples (need at least 2)");
  }
  const double dt = times[1] - times[0];
  if (!(dt > 0.0)) {
    throw std::invalid_argument("trajectory: sample times must be strictly increasing");
  }
  const double tol = 1e-6 * std::max(1.0, std::abs(dt));
  for (std::size_t i = 1; i < times.size(); ++i) {
    const double step = times[i] - times[i - 1];
    if (!(step > 0.0) || std::abs(step - dt) > tol) {
      throw std::invalid_argument("trajectory: non-uniform sampling");
    }
  }
}

}  // namespace

std::size_t grid_size(double horizon, double step)
{
  return static_cast<std::size_t>(std::floor(horizon / step + 1e-9)) + 1;
}

Trajectory::Trajectory(std::string participant_id, std::vector<KinematicState> samples)
: participant_id_(std::move(participant_id)), samples_(std::move(samples))
{
  std::vector<double> times;
  times.reserve(samples_.size());
  for (const auto & s : samples_) {
    if (!std::isfinite(s.position.x) || !std::isfinite(s.position.y) ||
        !std::isfinite(s.velocity.x) || !std::isfinite(s.velocity.y)) {
      throw std::invalid_argument("trajectory: non-finite state");
    }
    times.push_back(s.time);
  }
  check_uniform_times(times);
  dt_ = times[1] - times[0];
}

DistanceProfile distance_profile(
  const KinematicState & a, const KinematicState & b, double horizon, double dt)
{
  if (!(dt > 0.0) || !(horizon > 0.0)) {
    throw std::invalid_argument("distance_profile: invalid step (need horizon > 0, dt > 0)");
  }
  if (dt > horizon) {
    throw std::invalid_argument("distance_profile: invalid step (dt exceeds horizon)");
  }
  const RelativeState rel = relative_state(a, b);
  DistanceProfile profile;
  profile.step = dt;
  const std::size_t n = grid_size(horizon, dt);
  profile.distances.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    profile.distances.push_back(relative_distance_at(rel, profile.s_at(i)));
  }
  return profile;
}

Encounter closest_encounter(const RelativeState & rel)
{
  Encounter enc;
  const double vv = norm_sq(rel.delta_v);
  if (vv < kVelocityEpsSq) {
    enc.s_e = 0.0;
    enc.d_e = norm(rel.delta_x);
    return enc;
  }
  enc.s_e = std::max(0.0, -dot(rel.delta_x, rel.delta_v) / vv);
  enc.d_e = relative_distance_at(rel, enc.s_e);
  return enc;
}

Trajectory estimate_velocities(
  const std::string & participant_id, const std::vector<std::pair<double, Vec2>> & positions)
{
  if (positions.size() < 2) {
    throw std::invalid_argument("estimate_velocities: too few samples (need at least 2)");
  }
  std::vector<double> times;
  times.reserve(positions.size());
  for (const auto & [t, p] : positions) times.push_back(t);
  check_uniform_times(times);
  const double dt = times[1] - times[0];

  const std::size_t n = positions.size();
  std::vector<KinematicState> samples(n);
  for (std::size_t i = 0; i < n; ++i) {
    Vec2 v;
    if (i == 0) {
      v = (positions[1].second - positions[0].second) * (1.0 / dt);
    } else if (i + 1 == n) {
      v = (positions[n - 1].second - positions[n - 2].second) * (1.0 / dt);
    } else {
      v = (positions[i + 1].second - positions[i - 1].second) * (1.0 / (2.0 * dt));
    }
    samples[i] = {positions[i].first, positions[i].second, v};
  }
  return Trajectory(participant_id, std::move(samples));
}

}  // namespace riskhorizon
