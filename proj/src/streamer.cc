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

#include "uplinksim/streamer.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <string>

namespace uplinksim {

namespace {

// Always-on invariant checks (criteria-level guarantees, not debug asserts).
void SimCheck(bool ok, const char* what) {
  if (!ok) {
    throw std::logic_error(std::string("simulator invariant violated: ") +
                           what);
  }
}

double Clamp(double x, double lo, double hi) {
  return std::min(std::max(x, lo), hi);
}

}  // namespace

std::string StatusName(FrameStatus status) {
  switch (status) {
    case FrameStatus::kSentOnTime:
      return "sent-on-time";
    case FrameStatus::kSentLate:
      return "sent-late";
    case FrameStatus::kSkipped:
      return "skipped";
  }
  throw std::logic_error("unreachable status");
}

FrameStatus DeadlineCheck(double start, double size_mb, double achieved_c,
                          double gen_next, double t_b) {
  return start + size_mb / achieved_c > gen_next + t_b + kTimeTieTolerance
             ? FrameStatus::kSentLate
             : FrameStatus::kSentOnTime;
}

SimulationReport Run(const NetworkTrace& trace, const ControllerConfig& cfg,
                     const SimulationConfig& sim) {
  ValidateConfig(cfg);
  if (!(sim.fps > 0.0)) {
    throw std::invalid_argument("fps must be positive");
  }
  if (sim.t_B < 0.0 || sim.training_seconds < 0.0 ||
      !(sim.measured_seconds > 0.0)) {
    throw std::invalid_argument("simulation periods must be non-negative and "
                                "measured period positive");
  }

  const double period = 1.0 / sim.fps;
  const double horizon = sim.training_seconds + sim.measured_seconds;
  const std::int64_t total_frames = static_cast<std::int64_t>(
      std::floor(horizon * sim.fps + kTimeTieTolerance));
  const auto gen_time = [&sim](std::int64_t i) {
    return static_cast<double>(i) / sim.fps;
  };
  // Largest i < total_frames with gen_time(i) <= t, or -1. The floor seeds
  // the answer within one frame; direct comparisons settle ties exactly.
  const auto last_generated_at = [&](double t) -> std::int64_t {
    if (t < 0.0) {
      return -1;
    }
    std::int64_t i = std::min(total_frames - 1,
                              static_cast<std::int64_t>(std::floor(t * sim.fps)));
    while (i + 1 < total_frames && gen_time(i + 1) <= t) {
      ++i;
    }
    while (i >= 0 && gen_time(i) > t) {
      --i;
    }
    return i;
  };

  SimulationReport report;
  report.measured_period = sim.measured_seconds;
  report.training_period = sim.training_seconds;

  double sent_megabits = 0.0;
  const auto record = [&](const FrameOutcome& outcome) {
    if (outcome.gen_time < sim.training_seconds) {
      return;  // warm-up frame: feeds history, never the ledger
    }
    report.outcomes.push_back(outcome);
    ++report.generated_count;
    switch (outcome.status) {
      case FrameStatus::kSentOnTime:
        ++report.sent_on_time_count;
        sent_megabits += outcome.size_mb;
        break;
      case FrameStatus::kSentLate:
        ++report.sent_late_count;
        sent_megabits += outcome.size_mb;
        break;
      case FrameStatus::kSkipped:
        ++report.skipped_count;
        break;
    }
  };

  HistoryLog history;
  double clock = 0.0;
  double t_b = sim.t_B;
  double prev_start = -1.0;
  double prev_finish = 0.0;
  std::int64_t next_unsent = 0;

  while (next_unsent < total_frames) {
    // (1) newest frame generated strictly before the clock (1 ns cut);
    // (2) otherwise the frame at the current/next generation instant.
    std::int64_t sel = last_generated_at(clock - kTimeTieTolerance);
    if (sel < next_unsent) {
      if (clock < gen_time(next_unsent)) {
        clock = gen_time(next_unsent);  // idle, channel free
      }
      sel = next_unsent;
    }

    for (std::int64_t m = next_unsent; m < sel; ++m) {
      FrameOutcome skipped;
      skipped.index = m;
      skipped.gen_time = gen_time(m);
      skipped.status = FrameStatus::kSkipped;
      record(skipped);
    }
    // Skips get no extra buffer adjustment: the per-send update below
    // already charged the overrun that caused them. Restoring t_b toward
    // t_B here is self-igniting at large t_B (restored budget -> oversized
    // next frame -> more skips -> restore again), so it is deliberately
    // absent. Any alternative skip-time rule belongs in this spot.
    SimCheck(t_b >= 0.0 && t_b <= sim.t_B, "buffer outside [0, t_B]");

    const double next_gen = gen_time(sel + 1);
    const double T = std::max(0.0, next_gen - clock);

    SizingContext ctx;
    ctx.t_b = t_b;
    ctx.T = T;
    ctx.history = &history;
    ctx.fps = sim.fps;
    if (!(ctx.t_b + ctx.T > 0.0)) {
      ctx.T = kTimeTieTolerance;  // degenerate zero budget: forces s_min
    }
    const SizeDecision decision = Decide(cfg, ctx);

    const std::optional<TransmissionResult> res =
        Transmit(trace, clock, decision.size_mb);
    if (!res.has_value()) {
      report.truncated = true;  // trace exhausted: completed portion stands
      break;
    }
    SimCheck(res->duration > 0.0, "non-positive transmission duration");
    SimCheck(clock > prev_start, "starts not strictly increasing");
    SimCheck(clock >= prev_finish - kTimeTieTolerance,
             "transmissions overlap");

    history.Append(decision.size_mb, res->duration);

    FrameOutcome outcome;
    outcome.index = sel;
    outcome.gen_time = gen_time(sel);
    outcome.status = DeadlineCheck(clock, decision.size_mb,
                                   res->achieved_throughput, next_gen, t_b);
    outcome.size_mb = decision.size_mb;
    outcome.start = clock;
    outcome.finish = res->finish_time;
    outcome.deadline = next_gen + t_b;
    record(outcome);

    t_b = Clamp(t_b + (period - res->duration), 0.0, sim.t_B);
    prev_start = clock;
    prev_finish = res->finish_time;
    clock = res->finish_time;
    next_unsent = sel + 1;
  }

  if (report.generated_count > 0) {
    report.loss_rate =
        static_cast<double>(report.skipped_count + report.sent_late_count) /
        static_cast<double>(report.generated_count);
  }
  report.avg_bitrate_mbps = sent_megabits / sim.measured_seconds;
  SimCheck(report.generated_count == report.sent_on_time_count +
                                         report.sent_late_count +
                                         report.skipped_count,
           "frame conservation");
  return report;
}

void WriteLedgerCsv(const SimulationReport& report, std::ostream& sink) {
  sink << "index,gen_time,status,size_mb,start,finish,deadline\n";
  char buf[192];
  for (const FrameOutcome& o : report.outcomes) {
    std::snprintf(buf, sizeof(buf), "%lld,%.9g,%s,%.9g,%.9g,%.9g,%.9g",
                  static_cast<long long>(o.index), o.gen_time,
                  StatusName(o.status).c_str(), o.size_mb, o.start, o.finish,
                  o.deadline);
    sink << buf << '\n';
  }
}

}  // namespace uplinksim
