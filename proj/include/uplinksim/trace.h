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
 * Packet-level throughput traces and their fluid (piecewise-linear
 * cumulative megabits) view, plus CSV ingestion and a Markov-modulated
 * synthetic generator.
 *
 * Units are megabits and seconds throughout; byte conversion happens only
 * at CSV ingestion/emission.
 */

#ifndef UPLINKSIM_TRACE_H_
#define UPLINKSIM_TRACE_H_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace uplinksim {

// One capacity event: payload_mb megabits become deliverable by `timestamp`.
struct PacketEvent {
  double timestamp = 0.0;   // seconds since trace start, >= 0
  double payload_mb = 0.0;  // megabits, > 0
};

// Immutable packet-level record of achievable uplink throughput.
//
// The fluid view interpolates cumulative megabits linearly between packet
// timestamps: cumulative(0) = 0 exactly, cumulative(last timestamp) = total
// payload exactly, flat after the last event. Payload carried by events at
// timestamp 0 is spread over the first ramp (a trace whose events all sit at
// time 0 is rejected: it cannot satisfy both endpoint identities).
class NetworkTrace {
 public:
  NetworkTrace(std::vector<PacketEvent> events, double duration);

  const std::vector<PacketEvent>& events() const { return events_; }
  double duration() const { return duration_; }
  double total_megabits() const { return total_; }

  // Megabits deliverable in [0, t]. Throws std::out_of_range unless
  // 0 <= t <= duration().
  double CumulativeAt(double t) const;

  // Earliest u >= start with cumulative(u) - cumulative(start) >= size_mb.
  // nullopt when the capacity remaining after `start` falls short (trace
  // exhausted). `start` past the last event is treated as zero remaining
  // capacity.
  std::optional<double> InverseCumulative(double start, double size_mb) const;

 private:
  double CumulativeClamped(double t) const;

  std::vector<PacketEvent> events_;
  double duration_ = 0.0;
  double total_ = 0.0;
  // Interpolation knots: knot_time_ strictly increasing starting at 0,
  // knot_cum_ strictly increasing starting at 0 (same-timestamp events are
  // coalesced, so segments always have positive slope).
  std::vector<double> knot_time_;
  std::vector<double> knot_cum_;
};

// Parameters of the Markov-modulated constant-packet generator. The rate
// process is a lazy reflecting random walk over state_rates (uniform
// stationary distribution), dwelling in each state for an exponential time.
struct TraceGenSpec {
  double mean_rate_mbps = 0.0;         // documented target mean
  std::vector<double> state_rates_mbps;
  double transition_dwell_mean_s = 0.4;
  double packet_size_mb = 0.01;
  std::uint64_t seed = 1;
  double duration_s = 0.0;
};

// Reads `timestamp_seconds,payload_bytes` CSV (header optional). Payloads
// convert bytes -> megabits (x8 / 10^6). Backward timestamp jitter up to
// 1 us is clamped; anything larger is rejected with the offending line
// number. Throws std::runtime_error on malformed input, "empty trace" when
// no data rows are present.
NetworkTrace LoadTrace(std::istream& source);
NetworkTrace LoadTraceFile(const std::string& path);

// Writes the same CSV format with 9 significant digits (round-trips all
// events to 1e-9 relative).
void SaveTrace(const NetworkTrace& trace, std::ostream& sink);
void SaveTraceFile(const NetworkTrace& trace, const std::string& path);

// Deterministic function of `spec`: equal specs give bitwise-identical
// event lists. Packets of size packet_size_mb are emitted at the instants
// the fluid integral of the current state's rate crosses packet multiples.
NetworkTrace GenerateTrace(const TraceGenSpec& spec);

// Named presets: "network1" (mean 12 Mbps) and "network2" (mean 8 Mbps),
// both three-rate fans spanning +/-50% of the mean. Throws
// std::runtime_error for unknown names.
TraceGenSpec PresetSpec(const std::string& name, std::uint64_t seed,
                        double duration_s);

}  // namespace uplinksim

#endif  // UPLINKSIM_TRACE_H_
