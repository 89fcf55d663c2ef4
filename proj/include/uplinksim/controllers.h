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
 * Frame-size controllers. All of them answer: given the current buffer
 * slack t_b, the time T until the next frame generation, and the frame
 * history, how many megabits should the next frame carry?
 *
 * The quantile controllers reconstruct the megabits deliverable in past
 * intervals of length tau = alpha*t_b + T and pick the epsilon-quantile of
 * that distribution, either marginally or conditioned on the most recent
 * interval (nearby past behaving like the present). The moving-average
 * controller scales the duration-weighted mean throughput by the same
 * budget. Every controller floors its answer at s_min.
 */

#ifndef UPLINKSIM_CONTROLLERS_H_
#define UPLINKSIM_CONTROLLERS_H_

#include <string>
#include <vector>

#include "uplinksim/history.h"

namespace uplinksim {

enum class Strategy {
  kMinSize,
  kAm,
  kMarginalQuantile,
  kConditionalQuantile,
};

// Round-trip between strategy enum and the CLI spelling
// ("min-size", "am", "marginal-quantile", "conditional-quantile").
Strategy ParseStrategy(const std::string& name);
std::string StrategyName(Strategy strategy);

struct ControllerConfig {
  Strategy strategy = Strategy::kConditionalQuantile;
  double epsilon = 0.05;   // target loss probability, in (0,1)
  int J = 768;             // lookback interval count, >= 2
  int K = 16;              // moving-average window, >= 1
  // Conservatism on the buffer share, in (0,1]. Sizing integrates over
  // alpha*t_b + T while the deadline allows the full t_b + T, so (1-alpha)
  // of the buffer is slack that absorbs throughput dips. At alpha = 1 a
  // frame in the quantile's miss tail overruns the whole budget and drags
  // skipped frames with it, inflating realized loss to a multiple of
  // epsilon; the shipped default keeps realized loss tracking epsilon.
  double alpha = 0.7;
  double s_min_mb = 0.05;  // minimal frame size, > 0
  double cond_tolerance = 0.05;        // conditioning-set tolerance
  bool cond_tolerance_absolute = false;  // relative (default) or megabits
};

// Throws std::invalid_argument when a field is out of range.
void ValidateConfig(const ControllerConfig& cfg);

struct SizingContext {
  double t_b = 0.0;  // current buffer slack, seconds, >= 0
  double T = 0.0;    // time to the next generation instant, seconds, >= 0
  const HistoryLog* history = nullptr;
  double fps = 60.0;
};

struct SizeDecision {
  double size_mb = 0.0;
  bool fallback_used = false;       // insufficient history or empty cond. set
  int window_length = 0;            // intervals actually available
  int conditioning_set_size = 0;    // 0 for non-conditional strategies
};

// Hyndman-Fan type-7 empirical quantile (linear interpolation at position
// (n-1)*gamma over the order statistics). Throws std::invalid_argument on
// empty input or gamma outside [0, 1].
double Quantile(std::vector<double> values, double gamma);

// Duration-weighted mean throughput over the last min(K, available) frames
// (sum of sizes / sum of durations; equals the plain mean of per-frame
// throughputs when durations are equal), scaled by the deadline budget:
// max(s_min, C_hat * (alpha*t_b + T)). Empty history yields s_min.
double AmSize(const SizingContext& ctx, const ControllerConfig& cfg);

// Epsilon-quantile of the backward window; s_min fallback when fewer than
// 2 intervals are reconstructible.
SizeDecision MarginalQuantileSize(const SizingContext& ctx,
                                  const ControllerConfig& cfg);

// Epsilon-quantile of the conditioning set: predecessors (in index, i.e.
// successors in time) of past intervals whose value matches the most recent
// interval within the tolerance. Falls back to the marginal quantile over
// the remaining window when no interval matches, and to s_min when history
// is insufficient.
SizeDecision ConditionalQuantileSize(const SizingContext& ctx,
                                     const ControllerConfig& cfg);

// Strategy dispatch; kMinSize always returns s_min.
SizeDecision Decide(const ControllerConfig& cfg, const SizingContext& ctx);

}  // namespace uplinksim

#endif  // UPLINKSIM_CONTROLLERS_H_
