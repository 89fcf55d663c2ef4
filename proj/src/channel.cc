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

#include "uplinksim/channel.h"

namespace uplinksim {

std::optional<TransmissionResult> Transmit(const NetworkTrace& trace,
                                           double start, double size_mb) {
  const std::optional<double> finish = trace.InverseCumulative(start, size_mb);
  if (!finish.has_value()) {
    return std::nullopt;
  }
  TransmissionResult result;
  result.finish_time = *finish;
  result.duration = *finish - start;
  result.achieved_throughput = size_mb / result.duration;
  return result;
}

}  // namespace uplinksim
