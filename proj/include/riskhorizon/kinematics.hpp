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

#ifndef RISKHORIZON__KINEMATICS_HPP_
#define RISKHORIZON__KINEMATICS_HPP_

#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace riskhorizon
{

struct Vec2
{
  double x{0.0};
  double y{0.0};

  friend constexpr Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend constexpr Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend constexpr Vec2 operator*(Vec2 a, double k) { return {a.x * k, a.y * k}; }
  friend constexpr Vec2 operator*(double k, Vec2 a) { return a * k; }
  friend constexpr bool operator==(Vec2 a, Vec2 b) { return a.x == b.x && a.y == b.y; }
};

constexpr double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }
constexpr double norm_sq(Vec2 a) { return dot(a, a); }

/// Squared relative speed below which the closest encounter degenerates to "now".
inline constexpr double kVelocityEpsSq = 1e-9;  // (m/s)^2

/// One participant state at a fixed time: position and velocity in the plane.
struct KinematicState
{
  double time{0.0};  // s
  Vec2 position;     // m
  Vec2 velocity;     // m/s
};

/// Uniformly sampled state sequence of one traffic participant.
class Trajectory
{
public:
  Trajectory() = default;

  /// Throws std::invalid_argument unless times are strictly increasing with
  /// constant spacing dt > 0 and there are at least two samples.
  Trajectory(std::string participant_id, std::vector<KinematicState> samples);

  const std::string & participant_id() const noexcept { return participant_id_; }
  const std::vector<KinematicState> & samples() const noexcept { return samples_; }
  double dt() const noexcept { return dt_; }
  std::size_t size() const noexcept { return samples_.size(); }
  const KinematicState & operator[](std::size_t i) const { return samples_[i]; }
  const KinematicState & front() const { return samples_.front(); }
  const KinematicState & back() const { return samples_.back(); }

private:
  std::string participant_id_;
  std::vector<KinematicState> samples_;
  double dt_{0.0};
};

/// Relative position and velocity of a participant pair.
struct RelativeState
{
  Vec2 delta_x;  // m
  Vec2 delta_v;  // m/s
};

inline RelativeState relative_state(const KinematicState & a, const KinematicState & b)
{
  return {b.position - a.position, b.velocity - a.velocity};
}

/// Time until and distance at the predicted closest encounter.
struct Encounter
{
  double s_e{0.0};  // s, >= 0
  double d_e{0.0};  // m, >= 0
};

/// Euclidean inter-participant distance sampled on a uniform look-ahead grid.
struct DistanceProfile
{
  double step{0.0};               // s
  std::vector<double> distances;  // distances[i] = d at s = i * step

  double s_at(std::size_t i) const { return static_cast<double>(i) * step; }
  double horizon() const
  {
    return distances.empty() ? 0.0 : static_cast<double>(distances.size() - 1) * step;
  }
};

/// Constant-velocity position prediction s seconds ahead.
inline Vec2 predict_cv(const KinematicState & state, double s)
{
  return state.position + state.velocity * s;
}

/// Distance between the constant-velocity predictions of two states, sampled at
/// s = 0, dt, ..., floor(horizon/dt)*dt. Throws std::invalid_argument on a
/// non-positive step or horizon, or dt > horizon.
DistanceProfile distance_profile(
  const KinematicState & a, const KinematicState & b, double horizon, double dt);

/// Evaluation of the profile at one look-ahead s for a given relative state.
inline double relative_distance_at(const RelativeState & rel, double s)
{
  return norm(rel.delta_x + rel.delta_v * s);
}

/// Closed-form closest encounter under constant-velocity prediction.
///
/// s_e = max(0, -(dx.dv)/|dv|^2), d_e = |dx + dv s_e|. A relative speed below
/// kVelocityEpsSq degenerates to the current separation (s_e = 0).
Encounter closest_encounter(const RelativeState & rel);

/// Builds a trajectory from timed positions, estimating velocities by central
/// finite differences (one-sided at the ends). Throws std::invalid_argument on
/// fewer than two samples or non-uniform sampling.
Trajectory estimate_velocities(
  const std::string & participant_id, const std::vector<std::pair<double, Vec2>> & positions);

/// Number of samples of a closed uniform grid over [0, horizon].
std::size_t grid_size(double horizon, double step);

}  // namespace riskhorizon

#endif  // RISKHORIZON__KINEMATICS_HPP_
