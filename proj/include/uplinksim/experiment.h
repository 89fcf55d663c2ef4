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

/**
 * @file
 * Batch experiment runner: sweep a controller roster over an axis (initial
 * buffer time or minimal frame size) on one trace, and serialize the result
 * table as CSV that round-trips exactly (doubles are written in shortest
 * round-trip form).
 */

#ifndef UPLINKSIM_EXPERIMENT_H_
#define UPLINKSIM_EXPERIMENT_H_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "uplinksim/controllers.h"
#include "uplinksim/streamer.h"
#include "uplinksim/trace.h"

namespace uplinksim {

// A roster entry: canonical name ("min-size", "am-<K>", "marginal-quantile",
// "conditional-quantile") plus the strategy it maps to.
struct ControllerSpec {
  std::string name;
  Strategy strategy = Strategy::kConditionalQuantile;
  int K = 16;  // only meaningful for the moving-average strategy
};

// Parses roster spellings; "am" alone takes K = 16. Throws
// std::runtime_error for unknown names.
ControllerSpec ParseControllerName(const std::string& name);

struct ExperimentSpec {
  // Trace source: an explicit CSV path wins over a generator preset.
  std::string trace_file;
  std::string preset = "network2";
  std::uint64_t trace_seed = 1;
  double trace_duration = 450.0;  // generated traces only

  std::vector<ControllerSpec> controllers;  // empty = default roster
  std::string axis = "t_B";                 // "t_B" or "s_min"
  std::vector<double> axis_values;          // empty = default per axis

  double fps = 60.0;
  double epsilon = 0.05;
  double training_seconds = 120.0;
  double measured_seconds = 300.0;
  double t_B = 0.05;       // fixed value when sweeping s_min
  double s_min_mb = 0.05;  // fixed value when sweeping t_B
  int J = 768;
  double alpha = 0.7;
  double cond_tolerance = 0.05;
};

// min-size, am-5, am-16, am-128, marginal-quantile, conditional-quantile.
std::vector<ControllerSpec> DefaultControllers();

// t_B: the first six frame periods; s_min: 0.02..0.4 Mb.
std::vector<double> DefaultAxisValues(const std::string& axis, double fps);

struct SweepRow {
  std::string controller;
  std::string axis;
  double value = 0.0;
  double loss_rate = 0.0;
  double avg_bitrate = 0.0;
  std::int64_t late_count = 0;
  std::int64_t skipped_count = 0;
};

// The trace a spec describes (loaded or generated).
NetworkTrace MakeTrace(const ExperimentSpec& spec);

// One row per (controller, axis value), controller-major, on a single
// shared trace. Throws on unknown controller names, unknown axis, or axis
// values that are not strictly increasing/valid.
std::vector<SweepRow> RunSweep(const ExperimentSpec& spec);

// Header: controller,axis,value,loss_rate,avg_bitrate,late_count,
// skipped_count. Parsing the emitted table reproduces the rows exactly
// (bit-equal doubles); identical specs yield byte-identical bytes.
void WriteSweepCsv(const std::vector<SweepRow>& rows, std::ostream& sink);
std::vector<SweepRow> ReadSweepCsv(std::istream& source);

// Flat `key = value` config (lists comma-separated, # comments). Unknown
// keys are rejected.
ExperimentSpec LoadExperimentConfig(std::istream& source);

}  // namespace uplinksim

#endif  // UPLINKSIM_EXPERIMENT_H_
