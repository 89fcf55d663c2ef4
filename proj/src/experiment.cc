/******************************************************************************
 * Copyright 2026 The uplinksim Authors                                       *
 *                                                                            *
 * Licensed under the Apache License, Version 2.0 (the "License");            *
 * you may not use this file except in compliance with the License.           *
 *                                                                            *
 * You may obtain a copy of the License at                                    *
 *                                                                            *
 *     http://www.apache.org/licenses/LICENSE-2.0                             *
 *                                                                            *
 * Unless required by applicable law or agreed to in writing, software        *
 * distributed under the License is distributed on an "AS IS" BASIS,          *
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.   *
 * See the License for the specific language governing permissions and        *
 * limitations under the License.                                             *
 ******************************************************************************/

#include "uplinksim/experiment.h"

#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <system_error>

namespace uplinksim {

namespace {

std::string Trim(const std::string& s) {
  const std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) {
    return "";
  }
  const std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> SplitComma(const std::string& s) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const std::string t = Trim(item);
    if (!t.empty()) {
      parts.push_back(t);
    }
  }
  return parts;
}

std::string FormatDouble(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

double ParseDoubleExact(const std::string& s, const char* what) {
  double v = 0.0;
  const char* begin = s.data();
  const char* end = s.data() + s.size();
  const auto res = std::from_chars(begin, end, v);
  if (res.ec != std::errc() || res.ptr != end) {
    throw std::runtime_error(std::string("cannot parse number for ") + what +
                             ": " + s);
  }
  return v;
}

std::int64_t ParseInt(const std::string& s, const char* what) {
  std::int64_t v = 0;
  const char* begin = s.data();
  const char* end = s.data() + s.size();
  const auto res = std::from_chars(begin, end, v);
  if (res.ec != std::errc() || res.ptr != end) {
    throw std::runtime_error(std::string("cannot parse integer for ") + what +
                             ": " + s);
  }
  return v;
}

}  // namespace

ControllerSpec ParseControllerName(const std::string& name) {
  ControllerSpec spec;
  spec.name = name;
  if (name == "min-size") {
    spec.strategy = Strategy::kMinSize;
    return spec;
  }
  if (name == "am" || name.rfind("am-", 0) == 0) {
    spec.strategy = Strategy::kAm;
    if (name != "am") {
      spec.K = static_cast<int>(ParseInt(name.substr(3), "am window"));
      if (spec.K < 1) {
        throw std::runtime_error("am window must be >= 1: " + name);
      }
    }
    return spec;
  }
  if (name == "marginal-quantile") {
    spec.strategy = Strategy::kMarginalQuantile;
    return spec;
  }
  if (name == "conditional-quantile") {
    spec.strategy = Strategy::kConditionalQuantile;
    return spec;
  }
  throw std::runtime_error("unknown controller name: " + name);
}

std::vector<ControllerSpec> DefaultControllers() {
  std::vector<ControllerSpec> roster;
  for (const char* name : {"min-size", "am-5", "am-16", "am-128",
                           "marginal-quantile", "conditional-quantile"}) {
    roster.push_back(ParseControllerName(name));
  }
  return roster;
}

std::vector<double> DefaultAxisValues(const std::string& axis, double fps) {
  if (axis == "t_B") {
    std::vector<double> values;
    for (int i = 1; i <= 6; ++i) {
      values.push_back(static_cast<double>(i) / fps);
    }
    return values;
  }
  if (axis == "s_min") {
    return {0.02, 0.05, 0.1, 0.2, 0.3, 0.4};
  }
  throw std::runtime_error("unknown sweep axis: " + axis);
}

NetworkTrace MakeTrace(const ExperimentSpec& spec) {
  if (!spec.trace_file.empty()) {
    return LoadTraceFile(spec.trace_file);
  }
  return GenerateTrace(
      PresetSpec(spec.preset, spec.trace_seed, spec.trace_duration));
}

std::vector<SweepRow> RunSweep(const ExperimentSpec& spec) {
  if (spec.axis != "t_B" && spec.axis != "s_min") {
    throw std::runtime_error("unknown sweep axis: " + spec.axis);
  }
  const std::vector<ControllerSpec> roster =
      spec.controllers.empty() ? DefaultControllers() : spec.controllers;
  const std::vector<double> values = spec.axis_values.empty()
                                         ? DefaultAxisValues(spec.axis, spec.fps)
                                         : spec.axis_values;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0 && !(values[i] > values[i - 1])) {
      throw std::runtime_error("axis values must be strictly increasing");
    }
    const bool valid = spec.axis == "t_B" ? values[i] >= 0.0 : values[i] > 0.0;
    if (!valid) {
      throw std::runtime_error("axis value out of range: " +
                               FormatDouble(values[i]));
    }
  }

  const NetworkTrace trace = MakeTrace(spec);
  std::vector<SweepRow> rows;
  rows.reserve(roster.size() * values.size());
  for (const ControllerSpec& controller : roster) {
    for (const double value : values) {
      ControllerConfig cfg;
      cfg.strategy = controller.strategy;
      cfg.K = controller.K;
      cfg.epsilon = spec.epsilon;
      cfg.J = spec.J;
      cfg.alpha = spec.alpha;
      cfg.cond_tolerance = spec.cond_tolerance;
      cfg.s_min_mb = spec.axis == "s_min" ? value : spec.s_min_mb;

      SimulationConfig sim;
      sim.t_B = spec.axis == "t_B" ? value : spec.t_B;
      sim.fps = spec.fps;
      sim.training_seconds = spec.training_seconds;
      sim.measured_seconds = spec.measured_seconds;

      const SimulationReport report = Run(trace, cfg, sim);
      SweepRow row;
      row.controller = controller.name;
      row.axis = spec.axis;
      row.value = value;
      row.loss_rate = report.loss_rate;
      row.avg_bitrate = report.avg_bitrate_mbps;
      row.late_count = report.sent_late_count;
      row.skipped_count = report.skipped_count;
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

void WriteSweepCsv(const std::vector<SweepRow>& rows, std::ostream& sink) {
  sink << "controller,axis,value,loss_rate,avg_bitrate,late_count,"
          "skipped_count\n";
  for (const SweepRow& row : rows) {
    sink << row.controller << ',' << row.axis << ',' << FormatDouble(row.value)
         << ',' << FormatDouble(row.loss_rate) << ','
         << FormatDouble(row.avg_bitrate) << ',' << row.late_count << ','
         << row.skipped_count << '\n';
  }
}

std::vector<SweepRow> ReadSweepCsv(std::istream& source) {
  std::string line;
  if (!std::getline(source, line)) {
    throw std::runtime_error("empty sweep table");
  }
  std::vector<SweepRow> rows;
  while (std::getline(source, line)) {
    const std::string trimmed = Trim(line);
    if (trimmed.empty()) {
      continue;
    }
    std::vector<std::string> fields;
    std::stringstream ss(trimmed);
    std::string item;
    while (std::getline(ss, item, ',')) {
      fields.push_back(item);
    }
    if (fields.size() != 7) {
      throw std::runtime_error("malformed sweep row: " + trimmed);
    }
    SweepRow row;
    row.controller = fields[0];
    row.axis = fields[1];
    row.value = ParseDoubleExact(fields[2], "value");
    row.loss_rate = ParseDoubleExact(fields[3], "loss_rate");
    row.avg_bitrate = ParseDoubleExact(fields[4], "avg_bitrate");
    row.late_count = ParseInt(fields[5], "late_count");
    row.skipped_count = ParseInt(fields[6], "skipped_count");
    rows.push_back(std::move(row));
  }
  return rows;
}

ExperimentSpec LoadExperimentConfig(std::istream& source) {
  ExperimentSpec spec;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(source, line)) {
    ++line_no;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) {
      line = line.substr(0, hash);
    }
    const std::string content = Trim(line);
    if (content.empty()) {
      continue;
    }
    const std::size_t eq = content.find('=');
    if (eq == std::string::npos) {
      throw std::runtime_error("config line " + std::to_string(line_no) +
                               " is not key = value");
    }
    const std::string key = Trim(content.substr(0, eq));
    const std::string value = Trim(content.substr(eq + 1));
    if (key == "trace_file") {
      spec.trace_file = value;
    } else if (key == "preset") {
      spec.preset = value;
    } else if (key == "seed") {
      spec.trace_seed = static_cast<std::uint64_t>(ParseInt(value, key.c_str()));
    } else if (key == "duration") {
      spec.trace_duration = ParseDoubleExact(value, key.c_str());
    } else if (key == "controllers") {
      spec.controllers.clear();
      for (const std::string& name : SplitComma(value)) {
        spec.controllers.push_back(ParseControllerName(name));
      }
    } else if (key == "axis") {
      spec.axis = value;
    } else if (key == "values") {
      spec.axis_values.clear();
      for (const std::string& v : SplitComma(value)) {
        spec.axis_values.push_back(ParseDoubleExact(v, key.c_str()));
      }
    } else if (key == "fps") {
      spec.fps = ParseDoubleExact(value, key.c_str());
    } else if (key == "epsilon") {
      spec.epsilon = ParseDoubleExact(value, key.c_str());
    } else if (key == "training") {
      spec.training_seconds = ParseDoubleExact(value, key.c_str());
    } else if (key == "measured") {
      spec.measured_seconds = ParseDoubleExact(value, key.c_str());
    } else if (key == "t_B") {
      spec.t_B = ParseDoubleExact(value, key.c_str());
    } else if (key == "s_min") {
      spec.s_min_mb = ParseDoubleExact(value, key.c_str());
    } else if (key == "J") {
      spec.J = static_cast<int>(ParseInt(value, key.c_str()));
    } else if (key == "alpha") {
      spec.alpha = ParseDoubleExact(value, key.c_str());
    } else if (key == "cond_tolerance") {
      spec.cond_tolerance = ParseDoubleExact(value, key.c_str());
    } else {
      throw std::runtime_error("unknown config key at line " +
                               std::to_string(line_no) + ": " + key);
    }
  }
  return spec;
}

}  // namespace uplinksim
