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

#ifndef RISKHORIZON__CSV_IO_HPP_
#define RISKHORIZON__CSV_IO_HPP_

#include <filesystem>
#include <string>
#include <vector>

#include "riskhorizon/evaluation.hpp"
#include "riskhorizon/scenarios.hpp"

namespace riskhorizon
{

/// Locale-independent shortest round-trip formatting ('.' decimal separator).
std::string format_double(double value);

/// Locale-independent parse; throws std::invalid_argument on malformed input.
double parse_double(const std::string & text);

/// Writes content to a temporary sibling and renames it into place, so a
/// partial run never leaves a truncated file.
void write_file_atomic(const std::filesystem::path & path, const std::string & content);

/// Trajectory CSV: header `t,x,y[,vx,vy]`, one row per sample, SI units.
/// Velocity columns win over finite-difference estimates when present.
Trajectory read_trajectory_csv(const std::filesystem::path & path, const std::string & id);
void write_trajectory_csv(const std::filesystem::path & path, const Trajectory & trajectory);

/// Risk trace CSV: header `t,measure,R`.
void write_trace_csv(const std::filesystem::path & path, const RiskTrace & trace);
RiskTrace read_trace_csv(const std::filesystem::path & path);

/// Statistics CSV mirroring the results table:
/// `measure,kind,case,t_d,sigma_t,R_max,sigma_R,FP,N` with empty cells where a
/// column does not apply to the case. Emits one row per measure/kind/case
/// combination; combinations without traces stay all-empty with N=0.
void write_stats_csv(
  const std::filesystem::path & path, const std::vector<DetectionStats> & stats);

/// Scenario config: a JSON array of scenario spec objects.
std::vector<ScenarioSpec> read_scenario_config(const std::filesystem::path & path);
void write_scenario_config(
  const std::filesystem::path & path, const std::vector<ScenarioSpec> & specs);

}  // namespace riskhorizon

#endif  // RISKHORIZON__CSV_IO_HPP_
