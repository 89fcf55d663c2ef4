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
 * Discrete-event uploader loop: frames are generated on a fixed cadence,
 * sized by a controller, transmitted one at a time over the trace channel,
 * and scored against per-frame deadlines. A frame is lost when it is never
 * sent (a newer frame was picked first) or when its transmission finishes
 * past deadline.
 */

#ifndef UPLINKSIM_STREAMER_H_
#define UPLINKSIM_STREAMER_H_

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "uplinksim/channel.h"
#include "uplinksim/controllers.h"
#include "uplinksim/history.h"
#include "uplinksim/trace.h"

namespace uplinksim {

// Scheduling tie tolerance (1 ns). Exact-rate channels park transmission
// finishes exactly on generation instants and deadlines, where bare
// floating-point comparisons would resolve ties by rounding noise. A frame
// becomes a regular candidate once the clock has passed its generation
// instant by this much; a frame finishing within this of its deadline is on
// time. Far below any meaningful timescale of the model.
inline constexpr double kTimeTieTolerance = 1e-9;

enum class FrameStatus { kSentOnTime, kSentLate, kSkipped };

// CSV spelling: "sent-on-time", "sent-late", "skipped".
std::string StatusName(FrameStatus status);

struct SimulationConfig {
  double t_B = 0.05;               // initial/max buffer time, seconds
  double fps = 60.0;               // frame generation rate
  double training_seconds = 120.0;  // history warm-up, unscored
  double measured_seconds = 300.0;  // scored period
};

struct FrameOutcome {
  std::int64_t index = 0;
  double gen_time = 0.0;
  FrameStatus status = FrameStatus::kSkipped;
  double size_mb = 0.0;  // 0 when skipped
  double start = 0.0;    // start/finish/deadline are 0 when skipped
  double finish = 0.0;
  double deadline = 0.0;
};

struct SimulationReport {
  std::vector<FrameOutcome> outcomes;  // scored period only, by frame index
  double loss_rate = 0.0;              // (skipped + late) / generated
  double avg_bitrate_mbps = 0.0;       // sent megabits / measured_seconds
  double measured_period = 0.0;
  double training_period = 0.0;
  std::int64_t generated_count = 0;  // frames generated in the scored period
  std::int64_t sent_on_time_count = 0;
  std::int64_t sent_late_count = 0;
  std::int64_t skipped_count = 0;
  bool truncated = false;  // trace capacity ran out before the horizon
};

// Late iff start + size/achieved_c > gen_next + t_b (strict; equality and
// sub-tolerance overshoot are on time).
FrameStatus DeadlineCheck(double start, double size_mb, double achieved_c,
                          double gen_next, double t_b);

// Event loop. Frame i is generated at i/fps. When the channel is free, the
// newest generated-but-unsent frame is selected and every older unsent
// frame is counted as skipped; with no candidate the clock idles to the
// next generation instant. The selected frame is sized by the controller
// with budget context (t_b, T = time to next generation), transmitted
// without abort, appended to history, and deadline-checked. Buffer update:
// t_b <- clamp(t_b + (1/fps - duration), 0, t_B) after each send; skips
// apply no extra adjustment (the overrun that caused them is already
// charged by the same update, and restoring t_b on skips destabilizes
// large-t_B runs into self-sustaining skip bursts).
//
// Frames generated during the first training_seconds feed history but are
// not scored; the report covers the following measured_seconds. Trace
// exhaustion mid-run truncates the report (flagged, not an error).
SimulationReport Run(const NetworkTrace& trace, const ControllerConfig& cfg,
                     const SimulationConfig& sim);

// Per-frame ledger as `index,gen_time,status,size_mb,start,finish,deadline`.
void WriteLedgerCsv(const SimulationReport& report, std::ostream& sink);

}  // namespace uplinksim

#endif  // UPLINKSIM_STREAMER_H_
