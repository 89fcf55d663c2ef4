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

#include "uplinksim/history.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace uplinksim {

namespace {

// Slack (in interval counts) absorbing prefix-sum rounding when the total
// duration is an exact multiple of tau.
constexpr double kCapacitySlack = 1e-9;

void KahanExtend(std::vector<double>& prefix, double& comp, double value) {
  const double sum = prefix.back();
  const double y = value - comp;
  const double t = sum + y;
  comp = (t - sum) - y;
  prefix.push_back(t);
}

// Largest p in [0, frame_count] with duration_prefix(p) <= edge; 0 when the
// edge is negative (possible only within capacity slack).
std::size_t LastStartAtOrBelow(const HistoryLog& log, double edge) {
  if (log.duration_prefix(0) > edge) {
    return 0;
  }
  std::size_t lo = 0;
  std::size_t hi = log.frame_count();
  while (lo < hi) {
    const std::size_t mid = (lo + hi + 1) / 2;
    if (log.duration_prefix(mid) <= edge) {
      lo = mid;
    } else {
      hi = mid - 1;
    }
  }
  return lo;
}

// Residual decomposition given the boundary frames u (newest touching the
// interval) and l (oldest). The single-frame case l == u nets out through a
// negative lower residual to (tau/t_u)*s_u.
double IntervalValue(const HistoryLog& log, std::size_t j, double tau,
                     std::size_t u, std::size_t l) {
  const double t_res_u = (log.total_duration() - log.duration_prefix(u)) -
                         static_cast<double>(j) * tau;
  double middle_t = 0.0;
  double middle_s = 0.0;
  if (u > l + 1) {
    middle_t = log.duration_prefix(u) - log.duration_prefix(l + 1);
    middle_s = log.size_prefix(u) - log.size_prefix(l + 1);
  }
  const double t_res_l = tau - t_res_u - middle_t;
  return t_res_u / log.durations()[u] * log.sizes()[u] +
         t_res_l / log.durations()[l] * log.sizes()[l] + middle_s;
}

}  // namespace

void HistoryLog::Append(double size_mb, double duration_s) {
  if (!(size_mb > 0.0) || !(duration_s > 0.0)) {
    throw std::invalid_argument("history entries must be positive");
  }
  sizes_.push_back(size_mb);
  durations_.push_back(duration_s);
  KahanExtend(dur_prefix_, dur_comp_, duration_s);
  KahanExtend(size_prefix_, size_comp_, size_mb);
}

std::size_t IntervalCapacity(const HistoryLog& log, double tau) {
  if (!(tau > 0.0)) {
    throw std::invalid_argument("tau must be positive");
  }
  const double capacity =
      std::floor(log.total_duration() / tau + kCapacitySlack);
  return capacity <= 0.0 ? 0 : static_cast<std::size_t>(capacity);
}

double AggregateBackwardInterval(const HistoryLog& log, std::size_t j,
                                 double tau) {
  if (j + 1 > IntervalCapacity(log, tau)) {
    throw std::runtime_error("insufficient history");
  }
  const std::size_t k = log.frame_count() - 1;
  const double total = log.total_duration();

  // U = max{u : sum of durations from u through k >= j*tau}, capped at the
  // newest frame.
  const double upper_edge = total - static_cast<double>(j) * tau;
  const std::size_t u = std::min(LastStartAtOrBelow(log, upper_edge), k);

  // L = max{l : sum of durations from l through U-1 >= tau - t_res_U},
  // capped at U. The search threshold is the interval's lower edge written
  // the way the residual definition spells it.
  const double t_res_u =
      (total - log.duration_prefix(u)) - static_cast<double>(j) * tau;
  const double lower_edge = log.duration_prefix(u) - (tau - t_res_u);
  const std::size_t l = std::min(LastStartAtOrBelow(log, lower_edge), u);

  return IntervalValue(log, j, tau, u, l);
}

std::optional<BackwardWindow> BuildWindow(const HistoryLog& log, double tau,
                                          int J) {
  if (J < 2) {
    throw std::invalid_argument("window length J must be >= 2");
  }
  const std::size_t capacity = IntervalCapacity(log, tau);
  if (capacity < 2) {
    return std::nullopt;
  }
  const std::size_t count =
      std::min<std::size_t>(capacity, static_cast<std::size_t>(J));
  BackwardWindow window;
  window.tau = tau;
  window.requested = J;
  window.values.resize(count);

  const std::size_t k = log.frame_count() - 1;
  const double total = log.total_duration();
  // One backward sweep over frames and intervals together: the edge pointer
  // p_j (last frame starting at or below total - j*tau) serves as both this
  // interval's L and the next older interval's U, so the whole window costs
  // O(J + frames spanned) instead of J binary searches.
  std::size_t p = log.frame_count();
  std::size_t u = std::min(p, k);
  for (std::size_t j = 0; j < count; ++j) {
    const double next_edge = total - static_cast<double>(j + 1) * tau;
    while (p > 0 && log.duration_prefix(p) > next_edge) {
      --p;
    }
    window.values[j] = IntervalValue(log, j, tau, u, std::min(p, u));
    u = std::min(p, k);
  }
  return window;
}

void DumpWindowCsv(const BackwardWindow& window, std::ostream& sink) {
  sink << "j,value_mb\n";
  char buf[48];
  for (std::size_t j = 0; j < window.values.size(); ++j) {
    std::snprintf(buf, sizeof(buf), "%zu,%.17g", j, window.values[j]);
    sink << buf << '\n';
  }
}

}  // namespace uplinksim
