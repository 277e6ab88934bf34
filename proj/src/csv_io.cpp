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

#include "riskhorizon/csv_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <system_error>

#include "json.hpp"

namespace riskhorizon
{

namespace fs = std::filesystem;
using nlohmann::json;

std::string format_double(double value)
{
  char buffer[64];
  const auto result = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, result.ptr);
}

double parse_double(const std::string & text)
{
  double value = 0.0;
  const char * begin = text.data();
  const char * end = begin + text.size();
  while (begin != end && (*begin == ' ' || *begin == '\t')) ++begin;
  const auto result = std::from_chars(begin, end, value);
  if (result.ec != std::errc{}) {
    throw std::invalid_argument("not a number: '" + text + "'");
  }
  return value;
}

void write_file_atomic(const fs::path & path, const std::string & content)
{
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open for writing: " + tmp.string());
    out << content;
    if (!out) throw std::runtime_error("write failed: " + tmp.string());
  }
  fs::rename(tmp, path);
}

namespace
{

std::vector<std::string> split_csv_line(const std::string & line)
{
  std::vector<std::string> fields;
  std::string field;
  std::stringstream stream(line);
  while (std::getline(stream, field, ',')) {
    while (!field.empty() && (field.back() == '\r' || field.back() == ' ')) field.pop_back();
    std::size_t start = 0;
    while (start < field.size() && field[start] == ' ') ++start;
    fields.push_back(field.substr(start));
  }
  return fields;
}

std::vector<std::string> read_lines(const fs::path & path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open file: " + path.string());
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) lines.push_back(line);
  }
  return lines;
}

}  // namespace

Trajectory read_trajectory_csv(const fs::path & path, const std::string & id)
{
  const auto lines = read_lines(path);
  if (lines.empty()) throw std::runtime_error("empty trajectory file: " + path.string());
  const auto header = split_csv_line(lines[0]);
  const bool with_velocity = header.size() >= 5;
  if (header.size() < 3 || header[0] != "t" || header[1] != "x" || header[2] != "y" ||
      (with_velocity && (header[3] != "vx" || header[4] != "vy"))) {
    throw std::runtime_error("bad trajectory header in " + path.string() +
                             " (expected t,x,y[,vx,vy])");
  }

  std::vector<KinematicState> states;
  std::vector<std::pair<double, Vec2>> positions;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto fields = split_csv_line(lines[i]);
    if (fields.size() != header.size()) {
      throw std::runtime_error(path.string() + ":" + std::to_string(i + 1) +
                               ": expected " + std::to_string(header.size()) + " fields");
    }
    const double t = parse_double(fields[0]);
    const Vec2 p{parse_double(fields[1]), parse_double(fields[2])};
    if (with_velocity) {
      states.push_back({t, p, {parse_double(fields[3]), parse_double(fields[4])}});
    } else {
      positions.emplace_back(t, p);
    }
  }
  // velocity columns win over finite-difference estimates
  if (with_velocity) return Trajectory(id, std::move(states));
  return estimate_velocities(id, positions);
}

void write_trajectory_csv(const fs::path & path, const Trajectory & trajectory)
{
  std::string out = "t,x,y,vx,vy\n";
  for (const auto & s : trajectory.samples()) {
    out += format_double(s.time) + ',' + format_double(s.position.x) + ',' +
           format_double(s.position.y) + ',' + format_double(s.velocity.x) + ',' +
           format_double(s.velocity.y) + '\n';
  }
  write_file_atomic(path, out);
}

void write_trace_csv(const fs::path & path, const RiskTrace & trace)
{
  std::string out = "t,measure,R\n";
  const std::string name = to_string(trace.measure);
  for (std::size_t i = 0; i < trace.times.size(); ++i) {
    out += format_double(trace.times[i]) + ',' + name + ',' + format_double(trace.values[i]) +
           '\n';
  }
  write_file_atomic(path, out);
}

RiskTrace read_trace_csv(const fs::path & path)
{
  const auto lines = read_lines(path);
  if (lines.empty() || lines[0] != "t,measure,R") {
    throw std::runtime_error("bad trace header in " + path.string());
  }
  RiskTrace trace;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto fields = split_csv_line(lines[i]);
    if (fields.size() != 3) {
      throw std::runtime_error(path.string() + ":" + std::to_string(i + 1) + ": expected 3 fields");
    }
    trace.measure = measure_from_string(fields[1]);
    trace.times.push_back(parse_double(fields[0]));
    trace.values.push_back(parse_double(fields[2]));
  }
  return trace;
}

void write_stats_csv(const fs::path & path, const std::vector<DetectionStats> & stats)
{
  std::string out = "measure,kind,case,t_d,sigma_t,R_max,sigma_R,FP,N\n";
  const ScenarioKind kinds[] = {ScenarioKind::kLongitudinal, ScenarioKind::kIntersection};
  const ScenarioCase cases[] = {
    ScenarioCase::kCrash, ScenarioCase::kNearCrash, ScenarioCase::kNonCrash};
  for (const Measure measure : kAllMeasures) {
    for (const ScenarioKind kind : kinds) {
      for (const ScenarioCase c : cases) {
        const DetectionStats * row = nullptr;
        for (const auto & s : stats) {
          if (s.measure == measure && s.kind == kind && s.case_ == c) {
            row = &s;
            break;
          }
        }
        out += std::string(to_string(measure)) + ',' + to_string(kind) + ',' + to_string(c) + ',';
        out += row && row->t_d_mean ? format_double(*row->t_d_mean) : "";
        out += ',';
        out += row && row->sigma_t ? format_double(*row->sigma_t) : "";
        out += ',';
        out += row && row->r_max_mean ? format_double(*row->r_max_mean) : "";
        out += ',';
        out += row && row->sigma_r ? format_double(*row->sigma_r) : "";
        out += ',';
        out += row && row->fp ? std::to_string(*row->fp) : "";
        out += ',';
        out += std::to_string(row ? row->n : 0);
        out += '\n';
      }
    }
  }
  write_file_atomic(path, out);
}

namespace
{

json spec_to_json(const ScenarioSpec & spec)
{
  json j;
  j["name"] = spec.name;
  j["kind"] = to_string(spec.kind);
  j["case"] = to_string(spec.case_);
  j["start_offset"] = spec.start_offset;
  j["speed_a"] = spec.speed_a;
  j["speed_b"] = spec.speed_b;
  j["lateral_offset"] = spec.lateral_offset;
  j["pass_gap"] = spec.pass_gap;
  j["yield_trigger"] = spec.yield_trigger;
  j["yield_decel"] = spec.yield_decel;
  j["dt"] = spec.dt;
  j["seed"] = spec.seed;
  for (const auto * segs : {&spec.accel_a, &spec.accel_b}) {
    json list = json::array();
    for (const auto & seg : *segs) {
      list.push_back({{"t_from", seg.t_from}, {"t_to", seg.t_to}, {"accel", seg.accel}});
    }
    j[segs == &spec.accel_a ? "accel_a" : "accel_b"] = list;
  }
  return j;
}

ScenarioSpec spec_from_json(const json & j)
{
  ScenarioSpec spec;
  spec.name = j.at("name").get<std::string>();
  spec.kind = scenario_kind_from_string(j.at("kind").get<std::string>());
  spec.case_ = scenario_case_from_string(j.at("case").get<std::string>());
  spec.start_offset = j.value("start_offset", spec.start_offset);
  spec.speed_a = j.at("speed_a").get<double>();
  spec.speed_b = j.at("speed_b").get<double>();
  spec.lateral_offset =
    j.value("lateral_offset", spec.case_ == ScenarioCase::kNonCrash ? 12.0 : 7.0);
  spec.pass_gap = j.value("pass_gap", spec.pass_gap);
  spec.yield_trigger = j.value("yield_trigger", spec.yield_trigger);
  spec.yield_decel = j.value("yield_decel", spec.yield_decel);
  spec.dt = j.value("dt", spec.dt);
  spec.seed = j.value("seed", spec.seed);
  for (const char * key : {"accel_a", "accel_b"}) {
    if (!j.contains(key)) continue;
    auto & target = std::string(key) == "accel_a" ? spec.accel_a : spec.accel_b;
    for (const auto & seg : j.at(key)) {
      target.push_back({seg.at("t_from").get<double>(), seg.at("t_to").get<double>(),
                        seg.at("accel").get<double>()});
    }
  }
  return spec;
}

}  // namespace

std::vector<ScenarioSpec> read_scenario_config(const fs::path & path)
{
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config: " + path.string());
  json doc;
  try {
    in >> doc;
  } catch (const json::exception & e) {
    throw std::runtime_error("bad scenario config " + path.string() + ": " + e.what());
  }
  if (!doc.is_array()) {
    throw std::runtime_error("bad scenario config " + path.string() + ": expected a JSON array");
  }
  std::vector<ScenarioSpec> specs;
  for (std::size_t i = 0; i < doc.size(); ++i) {
    try {
      specs.push_back(spec_from_json(doc[i]));
      specs.back().validate();
    } catch (const std::exception & e) {
      throw std::runtime_error(
        path.string() + ": entry " + std::to_string(i) + ": " + e.what());
    }
  }
  return specs;
}

void write_scenario_config(const fs::path & path, const std::vector<ScenarioSpec> & specs)
{
  json doc = json::array();
  for (const auto & spec : specs) doc.push_back(spec_to_json(spec));
  write_file_atomic(path, doc.dump(2) + "\n");
}

}  // namespace riskhorizon
