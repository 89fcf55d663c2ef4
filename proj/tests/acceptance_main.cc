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

// End-to-end acceptance harness. Each criterion prints exactly one
// PASS/FAIL verdict line (indented lines above it are diagnostics); the
// process exits nonzero if any criterion fails. All tolerances and
// budgets are pinned here, next to the check they gate.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <sstream>
#include <string>
#include <vector>

#include "uplinksim/channel.h"
#include "uplinksim/controllers.h"
#include "uplinksim/experiment.h"
#include "uplinksim/history.h"
#include "uplinksim/streamer.h"
#include "uplinksim/trace.h"

#include "oracles.h"
#include "report_checks.h"

namespace {

using uplinksim::AggregateBackwardInterval;
using uplinksim::ControllerConfig;
using uplinksim::GenerateTrace;
using uplinksim::HistoryLog;
using uplinksim::IntervalCapacity;
using uplinksim::NetworkTrace;
using uplinksim::PacketEvent;
using uplinksim::PresetSpec;
using uplinksim::Quantile;
using uplinksim::Run;
using uplinksim::RunSweep;
using uplinksim::SimulationConfig;
using uplinksim::SimulationReport;
using uplinksim::SizingContext;
using uplinksim::Strategy;
using uplinksim::WriteSweepCsv;
using uplinksim_test::ReferenceQuantile;
using uplinksim_test::SliceOracleInterval;
using uplinksim_test::TestRng;
using uplinksim_test::VerifyReportInvariants;

double Seconds(std::chrono::steady_clock::time_point since) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                       since)
      .count();
}

void Verdict(int criterion, bool pass, const std::string& detail) {
  std::printf("%s criterion %d: %s\n", pass ? "PASS" : "FAIL", criterion,
              detail.c_str());
  std::fflush(stdout);
}

std::string Fmt(const char* format, ...) {
  char buf[512];
  va_list args;
  va_start(args, format);
  std::vsnprintf(buf, sizeof(buf), format, args);
  va_end(args);
  return std::string(buf);
}

// A completed simulation kept around so the invariant suite (criterion 8)
// re-audits every run made by the statistical criteria.
struct StoredRun {
  std::string label;
  SimulationConfig sim;
  double s_min_mb = 0.0;
  SimulationReport report;
};

std::vector<StoredRun> g_runs;

// --- criterion 1: backward-interval aggregation vs slice oracle ---------

bool Criterion1() {
  constexpr double kRelTol = 1e-6;
  constexpr double kBudgetSeconds = 10.0;
  const auto t0 = std::chrono::steady_clock::now();

  TestRng rng(101);
  int checked = 0;
  int failures = 0;
  double worst = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = 2 + static_cast<int>(rng.Integer(49));  // 2..50 frames
    std::vector<double> sizes;
    std::vector<double> durations;
    HistoryLog log;
    for (int i = 0; i < n; ++i) {
      const double size = rng.Uniform(0.01, 2.0);
      const double dur = rng.Uniform(0.002, 0.5);
      sizes.push_back(size);
      durations.push_back(dur);
      log.Append(size, dur);
    }
    const double total = log.total_duration();
    // tau <= total/2 guarantees at least one reconstructible interval.
    const double tau = rng.Uniform(total / 40.0, total / 2.0);
    const std::size_t cap = IntervalCapacity(log, tau);
    if (cap == 0) {
      continue;
    }
    const std::size_t j = rng.Integer(cap);
    const double got = AggregateBackwardInterval(log, j, tau);
    const double want = SliceOracleInterval(sizes, durations, j, tau);
    const double rel =
        std::abs(got - want) / std::max(std::abs(want), 1e-9);
    worst = std::max(worst, rel);
    ++checked;
    if (rel > kRelTol) {
      ++failures;
      if (failures <= 3) {
        std::printf("  trial %d: j=%zu tau=%.6g got=%.12g want=%.12g "
                    "rel=%.3g\n",
                    trial, j, tau, got, want, rel);
      }
    }
  }
  const double elapsed = Seconds(t0);
  const bool pass =
      failures == 0 && checked == 1000 && elapsed < kBudgetSeconds;
  Verdict(1, pass,
          Fmt("interval aggregation matches %d-slice oracle on %d/1000 "
              "histories (worst rel err %.2e, tol 1e-6) in %.1f s "
              "(budget 10 s)",
              10000, checked, worst, elapsed));
  return pass;
}

// --- criterion 2: quantile conformance -----------------------------------

bool Criterion2() {
  constexpr double kTol = 1e-12;
  TestRng rng(202);
  int failures = 0;
  double worst = 0.0;
  for (int trial = 0; trial < 500; ++trial) {
    const int n = 1 + static_cast<int>(rng.Integer(400));
    std::vector<double> values;
    values.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      values.push_back(rng.Uniform(-50.0, 50.0));
    }
    double gamma = rng.Uniform();
    if (trial == 0) gamma = 0.0;
    if (trial == 1) gamma = 1.0;
    if (trial % 7 == 0) gamma = 0.05;  // the headline target usage
    const double got = Quantile(values, gamma);
    const double want = ReferenceQuantile(values, gamma);
    const double err = std::abs(got - want) / std::max(1.0, std::abs(want));
    worst = std::max(worst, err);
    if (err > kTol) {
      ++failures;
    }
  }

  // Frozen anchors for the epsilon = 0.05 usage.
  std::vector<double> ramp;
  for (int i = 1; i <= 100; ++i) {
    ramp.push_back(static_cast<double>(i));
  }
  const double a1 = Quantile(ramp, 0.05);
  const double a2 = Quantile({3.0, 9.0}, 0.05);
  const bool anchors_ok =
      std::abs(a1 - 5.95) <= 1e-12 && std::abs(a2 - 3.3) <= 1e-12;

  const bool pass = failures == 0 && anchors_ok;
  Verdict(2, pass,
          Fmt("type-7 quantile matches reference on 500 arrays (worst err "
              "%.2e, tol 1e-12); anchors at gamma=0.05: [1..100] -> %.10g, "
              "{3,9} -> %.10g",
              worst, a1, a2));
  return pass;
}

// --- criteria 3 and 4: loss-rate band and buffer/bitrate trend -----------

struct TrendCell {
  std::string preset;
  std::uint64_t seed = 0;
  int tb_numerator = 0;  // t_B = tb_numerator / 60
  double loss = 0.0;
  double bitrate = 0.0;
};

bool Criterion3(std::vector<TrendCell>& cells) {
  constexpr double kLossLo = 0.02;
  constexpr double kLossHi = 0.08;
  constexpr double kBudgetSeconds = 60.0;
  const auto t0 = std::chrono::steady_clock::now();

  ControllerConfig cfg;
  cfg.strategy = Strategy::kConditionalQuantile;
  cfg.epsilon = 0.05;
  cfg.s_min_mb = 0.05;

  int out_of_band = 0;
  for (const char* preset : {"network1", "network2"}) {
    for (const std::uint64_t seed : {11ull, 12ull, 13ull}) {
      const NetworkTrace trace =
          GenerateTrace(PresetSpec(preset, seed, 432.0));
      for (int k = 1; k <= 6; ++k) {
        SimulationConfig sim;
        sim.fps = 60.0;
        sim.t_B = static_cast<double>(k) / 60.0;
        sim.training_seconds = 120.0;
        sim.measured_seconds = 300.0;
        const SimulationReport report = Run(trace, cfg, sim);
        const bool in_band =
            report.loss_rate >= kLossLo && report.loss_rate <= kLossHi;
        if (!in_band) {
          ++out_of_band;
        }
        std::printf("  %s seed %llu t_B %d/60: loss %.4f bitrate %.3f%s\n",
                    preset, static_cast<unsigned long long>(seed), k,
                    report.loss_rate, report.avg_bitrate_mbps,
                    in_band ? "" : "  <- outside [0.02, 0.08]");
        cells.push_back(TrendCell{preset, seed, k, report.loss_rate,
                                  report.avg_bitrate_mbps});
        g_runs.push_back(StoredRun{Fmt("%s seed %llu t_B %d/60", preset,
                                       static_cast<unsigned long long>(seed),
                                       k),
                                   sim, cfg.s_min_mb, report});
      }
    }
  }
  const double elapsed = Seconds(t0);
  const bool pass = out_of_band == 0 && elapsed < kBudgetSeconds;
  Verdict(3, pass,
          Fmt("conditional-quantile loss in [0.02, 0.08] on %d/36 runs "
              "(2 presets x 3 seeds x t_B {1..6}/60, eps 0.05) in %.1f s "
              "(budget 60 s)",
              36 - out_of_band, elapsed));
  return pass;
}

bool Criterion4(const std::vector<TrendCell>& cells) {
  int comparisons = 0;
  int violations = 0;
  double min_gain = 1e300;
  for (const char* preset : {"network1", "network2"}) {
    for (const std::uint64_t seed : {11ull, 12ull, 13ull}) {
      double at1 = -1.0;
      double at6 = -1.0;
      for (const TrendCell& c : cells) {
        if (c.preset == preset && c.seed == seed) {
          if (c.tb_numerator == 1) at1 = c.bitrate;
          if (c.tb_numerator == 6) at6 = c.bitrate;
        }
      }
      if (at1 < 0.0 || at6 < 0.0) {
        ++violations;
        continue;
      }
      ++comparisons;
      min_gain = std::min(min_gain, at6 - at1);
      if (!(at6 > at1)) {
        ++violations;
        std::printf("  %s seed %llu: bitrate %.4f at 6/60 vs %.4f at 1/60\n",
                    preset, static_cast<unsigned long long>(seed), at6, at1);
      }
    }
  }
  const bool pass = violations == 0 && comparisons == 6;
  Verdict(4, pass,
          Fmt("avg bitrate at t_B=6/60 exceeds t_B=1/60 on %d/6 "
              "preset-seed pairs (smallest margin %+.3f Mbps)",
              comparisons - violations, pass ? min_gain : 0.0));
  return pass;
}

// --- criterion 5: s_min takeover ------------------------------------------

bool Criterion5() {
  constexpr double kIdentityTol = 0.02;  // vs s_min * fps * (1 - skips)
  constexpr double kAgreeTol = 0.01;     // controllers pairwise
  const double s_min = 2.0;  // far above every reachable window value

  struct Roster {
    const char* label;
    Strategy strategy;
    int K;
  };
  const Roster roster[] = {
      {"min-size", Strategy::kMinSize, 16},
      {"am-5", Strategy::kAm, 5},
      {"am-16", Strategy::kAm, 16},
      {"am-128", Strategy::kAm, 128},
      {"marginal-quantile", Strategy::kMarginalQuantile, 16},
      {"conditional-quantile", Strategy::kConditionalQuantile, 16},
  };

  const NetworkTrace trace = GenerateTrace(PresetSpec("network2", 11, 432.0));
  SimulationConfig sim;
  sim.fps = 60.0;
  sim.t_B = 3.0 / 60.0;
  sim.training_seconds = 120.0;
  sim.measured_seconds = 300.0;

  bool identity_ok = true;
  double lo_rate = 1e300;
  double hi_rate = -1e300;
  for (const Roster& r : roster) {
    ControllerConfig cfg;
    cfg.strategy = r.strategy;
    cfg.K = r.K;
    cfg.s_min_mb = s_min;
    const SimulationReport report = Run(trace, cfg, sim);
    const double skipped_frac =
        static_cast<double>(report.skipped_count) /
        static_cast<double>(report.generated_count);
    const double identity = s_min * sim.fps * (1.0 - skipped_frac);
    const double rel_err =
        std::abs(report.avg_bitrate_mbps - identity) / identity;
    lo_rate = std::min(lo_rate, report.avg_bitrate_mbps);
    hi_rate = std::max(hi_rate, report.avg_bitrate_mbps);
    std::printf("  %s: bitrate %.4f vs s_min*fps*(1-skips) %.4f "
                "(rel err %.2e), loss %.4f\n",
                r.label, report.avg_bitrate_mbps, identity, rel_err,
                report.loss_rate);
    if (report.truncated || rel_err > kIdentityTol) {
      identity_ok = false;
    }
    g_runs.push_back(
        StoredRun{Fmt("s_min takeover %s", r.label), sim, s_min, report});
  }
  const double spread = hi_rate / lo_rate - 1.0;
  const bool pass = identity_ok && spread <= kAgreeTol;
  Verdict(5, pass,
          Fmt("with s_min=2.0 Mb dominant, bitrate matches s_min*fps*"
              "(1 - skipped fraction) within 2%% for all 6 controllers and "
              "controllers agree within 1%% (spread %.3g%%)",
              spread * 100.0));
  return pass;
}

// --- criterion 6: deterministic-channel optimality ------------------------

bool Criterion6() {
  // Fluid 10 Mbps for 430 s as a single cumulative ramp.
  const NetworkTrace trace(
      std::vector<PacketEvent>{PacketEvent{430.0, 4300.0}}, 430.0);

  ControllerConfig cfg;
  cfg.strategy = Strategy::kConditionalQuantile;
  cfg.epsilon = 0.05;
  cfg.s_min_mb = 0.05;
  SimulationConfig sim;
  sim.fps = 60.0;
  sim.t_B = 1.0 / 60.0;
  sim.training_seconds = 120.0;
  sim.measured_seconds = 300.0;

  const SimulationReport report = Run(trace, cfg, sim);
  g_runs.push_back(StoredRun{"constant 10 Mbps", sim, cfg.s_min_mb, report});
  const bool pass = report.loss_rate == 0.0 &&
                    report.avg_bitrate_mbps >= 9.5 && !report.truncated;
  Verdict(6, pass,
          Fmt("constant 10 Mbps channel, t_B=1/60: loss %.6f (must be "
              "exactly 0), bitrate %.3f Mbps (must be >= 9.5)",
              report.loss_rate, report.avg_bitrate_mbps));
  return pass;
}

// --- criterion 7: weighted moving average reduces to the plain mean -------

bool Criterion7() {
  constexpr double kTol = 1e-12;
  TestRng rng(707);
  int failures = 0;
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + static_cast<int>(rng.Integer(60));
    const double t = rng.Uniform(0.01, 0.3);  // one shared duration
    HistoryLog log;
    double mean_throughput = 0.0;
    for (int i = 0; i < n; ++i) {
      const double size = rng.Uniform(0.05, 2.0);
      log.Append(size, t);
      mean_throughput += size / t;
    }
    mean_throughput /= n;

    ControllerConfig cfg;
    cfg.strategy = Strategy::kAm;
    cfg.K = n;
    SizingContext ctx;
    ctx.t_b = 0.0;  // tau = T = 1 s regardless of alpha, so size equals
    ctx.T = 1.0;    // the mean-rate estimate directly
    ctx.fps = 60.0;
    ctx.history = &log;
    const double got = uplinksim::AmSize(ctx, cfg);
    const double err =
        std::abs(got - mean_throughput) / std::max(1.0, mean_throughput);
    worst = std::max(worst, err);
    if (err > kTol) {
      ++failures;
    }
  }
  const bool pass = failures == 0;
  Verdict(7, pass,
          Fmt("duration-weighted moving average equals the unweighted "
              "throughput mean on %d/100 equal-duration histories (worst "
              "err %.2e, tol 1e-12)",
              100 - failures, worst));
  return pass;
}

// --- criterion 8: simulator invariants over every stored run --------------

bool Criterion8() {
  int audited = 0;
  int failures = 0;
  for (const StoredRun& run : g_runs) {
    ++audited;
    try {
      VerifyReportInvariants(run.report, run.sim, run.s_min_mb);
    } catch (const std::exception& e) {
      ++failures;
      if (failures <= 3) {
        std::printf("  %s: %s\n", run.label.c_str(), e.what());
      }
    }
  }
  const bool pass = failures == 0 && audited >= 43;
  Verdict(8, pass,
          Fmt("frame conservation, transmission ordering, deadline "
              "classification and metric identities re-derived from the "
              "ledger on %d/%d stored runs",
              audited - failures, audited));
  return pass;
}

// --- criterion 9: sweep determinism ---------------------------------------

bool Criterion9() {
  uplinksim::ExperimentSpec spec;
  spec.preset = "network2";
  spec.trace_seed = 7;
  spec.trace_duration = 250.0;
  spec.axis = "t_B";
  spec.axis_values = {1.0 / 60.0, 4.0 / 60.0};
  spec.training_seconds = 120.0;
  spec.measured_seconds = 120.0;

  std::ostringstream first;
  WriteSweepCsv(RunSweep(spec), first);
  std::ostringstream second;
  WriteSweepCsv(RunSweep(spec), second);

  const bool pass =
      !first.str().empty() && first.str() == second.str();
  Verdict(9, pass,
          Fmt("repeated 6-controller sweep produced byte-identical CSV "
              "(%zu bytes)",
              first.str().size()));
  return pass;
}

}  // namespace

int main() {
  bool all = true;
  const auto guard = [&all](int criterion, bool (*fn)()) {
    bool ok = false;
    try {
      ok = fn();
    } catch (const std::exception& e) {
      Verdict(criterion, false, Fmt("exception: %s", e.what()));
    }
    all = all && ok;
  };

  guard(1, &Criterion1);
  guard(2, &Criterion2);

  std::vector<TrendCell> cells;
  try {
    all = Criterion3(cells) && all;
  } catch (const std::exception& e) {
    Verdict(3, false, Fmt("exception: %s", e.what()));
    all = false;
  }
  try {
    all = Criterion4(cells) && all;
  } catch (const std::exception& e) {
    Verdict(4, false, Fmt("exception: %s", e.what()));
    all = false;
  }

  guard(5, &Criterion5);
  guard(6, &Criterion6);
  guard(7, &Criterion7);
  guard(8, &Criterion8);
  guard(9, &Criterion9);

  std::printf("%s\n", all ? "ALL CRITERIA PASSED" : "CRITERIA FAILED");
  return all ? 0 : 1;
}
