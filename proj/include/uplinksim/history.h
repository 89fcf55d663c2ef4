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
 * Uploader-side frame history (sent sizes and transmission durations) and
 * the backward fixed-length interval aggregates computed from it.
 *
 * Semantic contract: each frame's megabits are assumed to transfer at the
 * constant rate size/duration across its own transmission span, and frames
 * are laid end to end on a virtual time axis (total length = sum of
 * durations). The aggregate over a backward interval is the megabits that
 * axis carries inside the interval; boundary frames contribute pro-rata.
 */

#ifndef UPLINKSIM_HISTORY_H_
#define UPLINKSIM_HISTORY_H_

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <vector>

namespace uplinksim {

// Append-only record of (size, duration) per sent frame, with compensated
// prefix sums so interval aggregation is O(log n) per query.
class HistoryLog {
 public:
  // Throws std::invalid_argument unless both arguments are positive.
  void Append(double size_mb, double duration_s);

  std::size_t frame_count() const { return sizes_.size(); }
  bool empty() const { return sizes_.empty(); }
  const std::vector<double>& sizes() const { return sizes_; }
  const std::vector<double>& durations() const { return durations_; }

  // Prefix sums: duration_prefix(m) = sum of durations of frames [0, m),
  // so frame m occupies [duration_prefix(m), duration_prefix(m+1)) on the
  // virtual axis. Compensated summation keeps them accurate to ~1 ulp.
  double duration_prefix(std::size_t m) const { return dur_prefix_[m]; }
  double size_prefix(std::size_t m) const { return size_prefix_[m]; }
  double total_duration() const { return dur_prefix_.back(); }

 private:
  std::vector<double> sizes_;
  std::vector<double> durations_;
  std::vector<double> dur_prefix_{0.0};
  std::vector<double> size_prefix_{0.0};
  double dur_comp_ = 0.0;
  double size_comp_ = 0.0;
};

// Backward interval values, values[0] covering the most recent tau seconds
// of the virtual axis, values[j] the j-th interval before it.
struct BackwardWindow {
  double tau = 0.0;            // interval length, seconds
  std::vector<double> values;  // megabits per interval, length <= requested
  int requested = 0;           // J
};

// Number of whole tau-intervals the log can fill (floor of total/tau, with
// a 1e-9 interval slack absorbing prefix-sum rounding at exact multiples).
std::size_t IntervalCapacity(const HistoryLog& log, double tau);

// Megabits carried by the backward interval (total - (j+1)tau, total - jtau]
// of the virtual axis. Decomposition: U is the newest frame starting at or
// before the interval's upper edge (residual t_res_U of it lies inside), L
// the oldest frame reaching the lower edge (residual t_res_L), frames
// strictly between contribute whole sizes:
//   value = (t_res_U/t_U)*s_U + (t_res_L/t_L)*s_L + sum(s_m, L < m < U).
// When the interval sits inside a single frame the L term carries a
// negative residual and the expression reduces to (tau/t_U)*s_U; a boundary
// exactly on a frame edge makes the corresponding residual vanish. Throws
// std::runtime_error("insufficient history") when total duration <
// (j+1)*tau; std::invalid_argument for tau <= 0.
double AggregateBackwardInterval(const HistoryLog& log, std::size_t j,
                                 double tau);

// values[j] = AggregateBackwardInterval(log, j, tau) for
// j = 0..min(J, capacity)-1, computed in one backward sweep (same prefix
// sums, same residual arithmetic). nullopt when fewer than 2 intervals are
// computable: callers must fall back. Throws std::invalid_argument for
// tau <= 0 or J < 2.
std::optional<BackwardWindow> BuildWindow(const HistoryLog& log, double tau,
                                          int J);

// Debug dump of (j, value) pairs as CSV.
void DumpWindowCsv(const BackwardWindow& window, std::ostream& sink);

}  // namespace uplinksim

#endif  // UPLINKSIM_HISTORY_H_
