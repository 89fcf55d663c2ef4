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
 * The channel model answers one question: a frame of a given size starts
 * transmitting at a given instant over a trace; when does it finish?
 * Transmissions never abort mid-flight; deadline accounting lives in the
 * streamer.
 */

#ifndef UPLINKSIM_CHANNEL_H_
#define UPLINKSIM_CHANNEL_H_

#include <optional>

#include "uplinksim/trace.h"

namespace uplinksim {

struct TransmissionResult {
  double finish_time = 0.0;          // seconds
  double duration = 0.0;             // seconds, > 0
  double achieved_throughput = 0.0;  // Mbps, = size / duration
};

// Fluid transmission: finish is the earliest instant by which the trace has
// delivered `size_mb` beyond what it had delivered by `start`. Capacity gaps
// stall the finish time; they never error. nullopt when the remaining trace
// capacity is below `size_mb` (end of simulation, not a defect). Throws
// std::invalid_argument for size_mb <= 0 or start < 0.
std::optional<TransmissionResult> Transmit(const NetworkTrace& trace,
                                           double start, double size_mb);

}  // namespace uplinksim

#endif  // UPLINKSIM_CHANNEL_H_
