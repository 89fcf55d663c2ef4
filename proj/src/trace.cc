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

#include "uplinksim/trace.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>

namespace uplinksim {

namespace {

constexpr double kBytesToMegabits = 8.0 / 1e6;
// Backward timestamp jitter tolerated in input files (clamped, not fatal).
constexpr double kSortJitterTolerance = 1e-6;

void KahanAdd(double& sum, double& comp, double value) {
  const double y = value - comp;
  const double t = sum + y;
  comp = (t - sum) - y;
  sum = t;
}

}  // namespace

NetworkTrace::NetworkTrace(std::vector<PacketEvent> events, double duration)
    : events_(std::move(events)), duration_(duration) {
  if (events_.empty()) {
    throw std::runtime_error("empty trace");
  }
  double prev_ts = 0.0;
  for (const PacketEvent& ev : events_) {
    if (!(ev.payload_mb > 0.0)) {
      throw std::invalid_argument("trace event payload must be positive");
    }
    if (ev.timestamp < 0.0) {
      throw std::invalid_argument("trace event timestamp must be >= 0");
    }
    if (ev.timestamp < prev_ts) {
      throw std::invalid_argument("trace events not sorted by timestamp");
    }
    prev_ts = ev.timestamp;
  }
  if (duration_ < events_.back().timestamp) {
    throw std::invalid_argument("trace duration shorter than last event");
  }

  knot_time_.push_back(0.0);
  knot_cum_.push_back(0.0);
  double sum = 0.0;
  double comp = 0.0;
  for (const PacketEvent& ev : events_) {
    KahanAdd(sum, comp, ev.payload_mb);
    if (ev.timestamp == 0.0) {
      continue;  // folded into the first ramp; cumulative(0) stays 0
    }
    if (ev.timestamp == knot_time_.back()) {
      knot_cum_.back() = sum;  // coalesce same-timestamp events
    } else {
      knot_time_.push_back(ev.timestamp);
      knot_cum_.push_back(sum);
    }
  }
  total_ = sum;
  if (knot_time_.size() < 2) {
    throw std::invalid_argument("trace has no events after time 0");
  }
}

double NetworkTrace::CumulativeAt(double t) const {
  if (t < 0.0 || t > duration_) {
    throw std::out_of_range("cumulative time outside [0, duration]");
  }
  return CumulativeClamped(t);
}

double NetworkTrace::CumulativeClamped(double t) const {
  if (t <= 0.0) {
    return 0.0;
  }
  if (t >= knot_time_.back()) {
    return total_;
  }
  const auto it =
      std::upper_bound(knot_time_.begin(), knot_time_.end(), t);
  const std::size_t i = static_cast<std::size_t>(it - knot_time_.begin());
  const double t0 = knot_time_[i - 1];
  const double t1 = knot_time_[i];
  const double c0 = knot_cum_[i - 1];
  const double c1 = knot_cum_[i];
  if (t == t0) {
    return c0;
  }
  return c0 + (t - t0) / (t1 - t0) * (c1 - c0);
}

std::optional<double> NetworkTrace::InverseCumulative(double start,
                                                      double size_mb) const {
  if (!(size_mb > 0.0)) {
    throw std::invalid_argument("transmit size must be positive");
  }
  if (start < 0.0) {
    throw std::invalid_argument("transmit start must be >= 0");
  }
  const double base = CumulativeClamped(start);
  const double target = base + size_mb;
  if (target > total_) {
    return std::nullopt;  // trace exhausted: end-of-simulation signal
  }
  const auto it =
      std::lower_bound(knot_cum_.begin(), knot_cum_.end(), target);
  const std::size_t i = static_cast<std::size_t>(it - knot_cum_.begin());
  if (i == 0) {
    return knot_time_.front();
  }
  const double t0 = knot_time_[i - 1];
  const double t1 = knot_time_[i];
  const double c0 = knot_cum_[i - 1];
  const double c1 = knot_cum_[i];
  double finish = t0 + (target - c0) / (c1 - c0) * (t1 - t0);
  // Segments have strictly positive slope, so finish > start mathematically;
  // guard against rounding collapsing a tiny transfer to zero time.
  if (finish <= start) {
    finish = std::nextafter(start, duration_ + 1.0);
  }
  return finish;
}

namespace {

bool LooksLikeHeader(const std::string& line) {
  for (const char c : line) {
    if (std::isalpha(static_cast<unsigned char>(c))) {
      return true;
    }
  }
  return false;
}

}  // namespace

NetworkTrace LoadTrace(std::istream& source) {
  std::vector<PacketEvent> events;
  std::string line;
  std::size_t line_no = 0;
  bool first_content_line = true;
  while (std::getline(source, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') {
      line.pop_back();
    }
    if (line.find_first_not_of(" \t") == std::string::npos) {
      continue;
    }
    if (first_content_line && LooksLikeHeader(line)) {
      first_content_line = false;
      continue;
    }
    first_content_line = false;
    const std::size_t comma = line.find(',');
    if (comma == std::string::npos) {
      throw std::runtime_error("malformed trace line " +
                               std::to_string(line_no));
    }
    double ts = 0.0;
    double bytes = 0.0;
    try {
      std::size_t used = 0;
      ts = std::stod(line.substr(0, comma), &used);
      bytes = std::stod(line.substr(comma + 1), &used);
    } catch (const std::exception&) {
      throw std::runtime_error("malformed trace line " +
                               std::to_string(line_no));
    }
    if (!std::isfinite(ts) || !std::isfinite(bytes)) {
      throw std::runtime_error("malformed trace line " +
                               std::to_string(line_no));
    }
    if (bytes <= 0.0) {
      throw std::runtime_error("non-positive payload at line " +
                               std::to_string(line_no));
    }
    if (ts < 0.0) {
      throw std::runtime_error("negative timestamp at line " +
                               std::to_string(line_no));
    }
    if (!events.empty() && ts < events.back().timestamp) {
      if (events.back().timestamp - ts > kSortJitterTolerance) {
        throw std::runtime_error("timestamps not sorted at line " +
                                 std::to_string(line_no));
      }
      ts = events.back().timestamp;  // clamp sub-microsecond jitter
    }
    events.push_back(PacketEvent{ts, bytes * kBytesToMegabits});
  }
  if (events.empty()) {
    throw std::runtime_error("empty trace");
  }
  const double duration = events.back().timestamp;
  return NetworkTrace(std::move(events), duration);
}

NetworkTrace LoadTraceFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open trace file: " + path);
  }
  return LoadTrace(in);
}

void SaveTrace(const NetworkTrace& trace, std::ostream& sink) {
  sink << "timestamp_seconds,payload_bytes\n";
  char buf[96];
  for (const PacketEvent& ev : trace.events()) {
    std::snprintf(buf, sizeof(buf), "%.9g,%.9g", ev.timestamp,
                  ev.payload_mb / kBytesToMegabits);
    sink << buf << '\n';
  }
}

void SaveTraceFile(const NetworkTrace& trace, const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot open output file: " + path);
  }
  SaveTrace(trace, out);
}

namespace {

// Portable deterministic randomness: mt19937_64 with hand-rolled
// transformations (std::*_distribution output is not pinned by the
// standard, which would break bitwise reproducibility across toolchains).
class TraceRng {
 public:
  explicit TraceRng(std::uint64_t seed) : eng_(seed) {}

  double Uniform() {  // [0, 1)
    return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
  }

  double Exponential(double mean) { return -mean * std::log1p(-Uniform()); }

  bool Coin() { return Uniform() < 0.5; }

 private:
  std::mt19937_64 eng_;
};

// Lazy reflecting random walk: doubly stochastic, so the stationary
// distribution over states is uniform and a symmetric rate fan keeps the
// long-run mean on target.
int StepState(int state, int num_states, TraceRng& rng) {
  if (num_states == 1) {
    return 0;
  }
  if (state == 0) {
    return rng.Coin() ? 1 : 0;
  }
  if (state == num_states - 1) {
    return rng.Coin() ? state - 1 : state;
  }
  return rng.Coin() ? state + 1 : state - 1;
}

}  // namespace

NetworkTrace GenerateTrace(const TraceGenSpec& spec) {
  if (spec.state_rates_mbps.empty()) {
    throw std::invalid_argument("generator needs at least one state rate");
  }
  for (const double r : spec.state_rates_mbps) {
    if (!(r > 0.0)) {
      throw std::invalid_argument("state rates must be positive");
    }
  }
  if (!(spec.transition_dwell_mean_s > 0.0) || !(spec.packet_size_mb > 0.0) ||
      !(spec.duration_s > 0.0)) {
    throw std::invalid_argument("generator dwell, packet size and duration "
                                "must be positive");
  }

  TraceRng rng(spec.seed);
  const int num_states = static_cast<int>(spec.state_rates_mbps.size());
  int state = num_states / 2;
  const double packet = spec.packet_size_mb;
  // Emission tolerance: a crossing within rounding error of the horizon
  // still produces its packet (timestamp clamped to the horizon).
  const double packet_slack = packet * 1e-9;

  std::vector<PacketEvent> events;
  events.reserve(static_cast<std::size_t>(
      spec.duration_s * spec.mean_rate_mbps / packet * 1.25) + 16);

  double t = 0.0;
  double acc = 0.0;  // megabits accumulated toward the next packet
  while (t < spec.duration_s) {
    const double dwell = rng.Exponential(spec.transition_dwell_mean_s);
    const double seg_end = std::min(t + dwell, spec.duration_s);
    const double rate = spec.state_rates_mbps[static_cast<std::size_t>(state)];
    double available = acc + rate * (seg_end - t);
    while (available >= packet - packet_slack) {
      t += (packet - acc) / rate;
      acc = 0.0;
      available -= packet;
      events.push_back(PacketEvent{std::min(t, spec.duration_s), packet});
    }
    acc = std::max(available, 0.0);
    t = seg_end;
    state = StepState(state, num_states, rng);
  }
  return NetworkTrace(std::move(events), spec.duration_s);
}

TraceGenSpec PresetSpec(const std::string& name, std::uint64_t seed,
                        double duration_s) {
  TraceGenSpec spec;
  spec.seed = seed;
  spec.duration_s = duration_s;
  // Three-rate fan spanning +/-50% of the mean. The walk moves one tier
  // per step, so capacity falls in graded thirds rather than cliff drops,
  // yet the deep tier (a third of the top rate) still arrives within a few
  // frame periods: edge tiers dwell ~2x the mean dwell, the middle tier
  // ~1x. Genuine short-horizon downside is what lets a quantile controller
  // trade buffer time for bitrate; a near-constant channel would make the
  // buffer irrelevant and all controllers alike.
  if (name == "network1") {
    spec.mean_rate_mbps = 12.0;
    spec.state_rates_mbps = {6.0, 12.0, 18.0};
  } else if (name == "network2") {
    spec.mean_rate_mbps = 8.0;
    spec.state_rates_mbps = {4.0, 8.0, 12.0};
  } else {
    throw std::runtime_error("unknown trace preset: " + name);
  }
  spec.transition_dwell_mean_s = 0.05;
  return spec;
}

}  // namespace uplinksim
