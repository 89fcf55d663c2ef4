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
 * Batch front-end: generate traces, run single simulations, sweep
 * controllers over t_B or s_min, and render the resulting tables as SVG.
 */

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "uplinksim/experiment.h"
#include "uplinksim/plot.h"
#include "uplinksim/streamer.h"
#include "uplinksim/trace.h"

namespace {

using uplinksim::ControllerConfig;
using uplinksim::ExperimentSpec;
using uplinksim::NetworkTrace;
using uplinksim::SimulationConfig;
using uplinksim::SimulationReport;
using uplinksim::SweepRow;

struct TraceSourceFlags {
  std::string trace_file;
  std::string preset = "network2";
  std::uint64_t seed = 1;
  double duration = 450.0;
};

void AddTraceSourceFlags(CLI::App* cmd, TraceSourceFlags* flags) {
  cmd->add_option("--trace", flags->trace_file,
                  "trace CSV file (timestamp_seconds,payload_bytes)");
  cmd->add_option("--preset", flags->preset,
                  "generator preset: network1 (12 Mbps) or network2 (8 Mbps)");
  cmd->add_option("--seed", flags->seed, "generator seed");
  cmd->add_option("--duration", flags->duration,
                  "generated trace length, seconds");
}

NetworkTrace MakeTraceFromFlags(const TraceSourceFlags& flags) {
  ExperimentSpec spec;
  spec.trace_file = flags.trace_file;
  spec.preset = flags.preset;
  spec.trace_seed = flags.seed;
  spec.trace_duration = flags.duration;
  return MakeTrace(spec);
}

int RunGenTrace(const TraceSourceFlags& source, const std::string& out_path) {
  const NetworkTrace trace = MakeTraceFromFlags(source);
  uplinksim::SaveTraceFile(trace, out_path);
  std::printf("wrote %zu events, %.6g s, mean %.6g Mbps -> %s\n",
              trace.events().size(), trace.duration(),
              trace.total_megabits() / trace.duration(), out_path.c_str());
  return 0;
}

int RunSimulate(const TraceSourceFlags& source, const std::string& controller,
                const SimulationConfig& sim, ControllerConfig cfg,
                const std::string& ledger_path) {
  const uplinksim::ControllerSpec parsed =
      uplinksim::ParseControllerName(controller);
  cfg.strategy = parsed.strategy;
  if (parsed.strategy == uplinksim::Strategy::kAm && controller != "am") {
    cfg.K = parsed.K;
  }
  const NetworkTrace trace = MakeTraceFromFlags(source);
  const SimulationReport report = uplinksim::Run(trace, cfg, sim);
  std::printf("controller      %s\n", controller.c_str());
  std::printf("loss_rate       %.6g\n", report.loss_rate);
  std::printf("avg_bitrate     %.6g Mbps\n", report.avg_bitrate_mbps);
  std::printf("generated       %lld\n",
              static_cast<long long>(report.generated_count));
  std::printf("sent_on_time    %lld\n",
              static_cast<long long>(report.sent_on_time_count));
  std::printf("sent_late       %lld\n",
              static_cast<long long>(report.sent_late_count));
  std::printf("skipped         %lld\n",
              static_cast<long long>(report.skipped_count));
  if (report.truncated) {
    std::printf("note            trace exhausted before the horizon; "
                "metrics cover the completed portion\n");
  }
  if (!ledger_path.empty()) {
    std::ofstream out(ledger_path);
    if (!out) {
      throw std::runtime_error("cannot write ledger file: " + ledger_path);
    }
    uplinksim::WriteLedgerCsv(report, out);
  }
  return 0;
}

int RunSweepCmd(ExperimentSpec spec, const std::string& config_path,
                const std::string& controllers_csv, const std::string& out_path,
                const std::string& plots_dir, std::string network_label) {
  if (!config_path.empty()) {
    std::ifstream in(config_path);
    if (!in) {
      throw std::runtime_error("cannot open config file: " + config_path);
    }
    spec = uplinksim::LoadExperimentConfig(in);
  }
  if (!controllers_csv.empty()) {
    spec.controllers.clear();
    std::stringstream ss(controllers_csv);
    std::string name;
    while (std::getline(ss, name, ',')) {
      if (!name.empty()) {
        spec.controllers.push_back(uplinksim::ParseControllerName(name));
      }
    }
  }
  const std::vector<SweepRow> rows = uplinksim::RunSweep(spec);
  if (out_path.empty() || out_path == "-") {
    uplinksim::WriteSweepCsv(rows, std::cout);
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
      throw std::runtime_error("cannot write table file: " + out_path);
    }
    uplinksim::WriteSweepCsv(rows, out);
    std::printf("wrote %zu rows -> %s\n", rows.size(), out_path.c_str());
  }
  if (!plots_dir.empty()) {
    if (network_label.empty()) {
      network_label = spec.trace_file.empty() ? spec.preset : "trace";
    }
    for (const std::string& path : uplinksim::WriteSweepPlots(
             rows, network_label, plots_dir, spec.epsilon)) {
      std::printf("wrote %s\n", path.c_str());
    }
  }
  return 0;
}

int RunPlot(const std::string& table_path, const std::string& network,
            const std::string& out_dir, double epsilon) {
  std::ifstream in(table_path);
  if (!in) {
    throw std::runtime_error("cannot open table file: " + table_path);
  }
  const std::vector<SweepRow> rows = uplinksim::ReadSweepCsv(in);
  for (const std::string& path :
       uplinksim::WriteSweepPlots(rows, network, out_dir, epsilon)) {
    std::printf("wrote %s\n", path.c_str());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Trace-driven live-uplink frame simulator"};
  app.require_subcommand(1);

  // gen-trace
  TraceSourceFlags gen_source;
  std::string gen_out = "trace.csv";
  CLI::App* gen = app.add_subcommand("gen-trace", "synthesize a packet trace");
  AddTraceSourceFlags(gen, &gen_source);
  gen->add_option("--out", gen_out, "output CSV path");

  // simulate
  TraceSourceFlags sim_source;
  std::string sim_controller = "conditional-quantile";
  std::string sim_ledger;
  SimulationConfig sim_cfg;
  ControllerConfig ctl_cfg;
  CLI::App* sim = app.add_subcommand("simulate", "run one simulation");
  AddTraceSourceFlags(sim, &sim_source);
  sim->add_option("--controller", sim_controller,
                  "min-size | am | am-<K> | marginal-quantile | "
                  "conditional-quantile");
  sim->add_option("--t_B", sim_cfg.t_B, "initial/max buffer time, seconds");
  sim->add_option("--fps", sim_cfg.fps, "frame rate");
  sim->add_option("--training", sim_cfg.training_seconds,
                  "unscored warm-up, seconds");
  sim->add_option("--measured", sim_cfg.measured_seconds,
                  "scored period, seconds");
  sim->add_option("--epsilon", ctl_cfg.epsilon, "target loss rate");
  sim->add_option("--s_min", ctl_cfg.s_min_mb, "minimal frame size, Mb");
  sim->add_option("--J", ctl_cfg.J, "lookback interval count");
  sim->add_option("--K", ctl_cfg.K, "moving-average window");
  sim->add_option("--alpha", ctl_cfg.alpha, "buffer conservatism in (0,1]");
  sim->add_option("--cond-tolerance", ctl_cfg.cond_tolerance,
                  "conditioning tolerance (relative)");
  sim->add_option("--ledger", sim_ledger, "write per-frame ledger CSV here");

  // sweep
  ExperimentSpec sweep_spec;
  std::string sweep_config;
  std::string sweep_controllers;
  std::string sweep_out;
  std::string sweep_plots;
  std::string sweep_network;
  CLI::App* sweep = app.add_subcommand(
      "sweep", "run a controller roster over an axis and emit a CSV table");
  sweep->add_option("--config", sweep_config,
                    "key = value config file (overrides other flags)");
  sweep->add_option("--trace", sweep_spec.trace_file, "trace CSV file");
  sweep->add_option("--preset", sweep_spec.preset, "generator preset");
  sweep->add_option("--seed", sweep_spec.trace_seed, "generator seed");
  sweep->add_option("--duration", sweep_spec.trace_duration,
                    "generated trace length, seconds");
  sweep->add_option("--axis", sweep_spec.axis, "t_B or s_min");
  sweep->add_option("--values", sweep_spec.axis_values,
                    "axis values (strictly increasing)")
      ->delimiter(',');
  sweep->add_option("--controllers", sweep_controllers,
                    "comma-separated roster (default: min-size, am-5, am-16, "
                    "am-128, marginal-quantile, conditional-quantile)");
  sweep->add_option("--fps", sweep_spec.fps, "frame rate");
  sweep->add_option("--epsilon", sweep_spec.epsilon, "target loss rate");
  sweep->add_option("--training", sweep_spec.training_seconds,
                    "unscored warm-up, seconds");
  sweep->add_option("--measured", sweep_spec.measured_seconds,
                    "scored period, seconds");
  sweep->add_option("--t_B", sweep_spec.t_B, "fixed t_B when sweeping s_min");
  sweep->add_option("--s_min", sweep_spec.s_min_mb,
                    "fixed s_min when sweeping t_B");
  sweep->add_option("--J", sweep_spec.J, "lookback interval count");
  sweep->add_option("--alpha", sweep_spec.alpha, "buffer conservatism");
  sweep->add_option("--cond-tolerance", sweep_spec.cond_tolerance,
                    "conditioning tolerance");
  sweep->add_option("--out", sweep_out, "table CSV path (default stdout)");
  sweep->add_option("--plots", sweep_plots, "also render SVGs into this dir");
  sweep->add_option("--network", sweep_network, "label used in plot names");

  // plot
  std::string plot_table;
  std::string plot_network = "network";
  std::string plot_out = ".";
  double plot_epsilon = 0.05;
  CLI::App* plot = app.add_subcommand("plot", "render a sweep table as SVG");
  plot->add_option("--table", plot_table, "sweep CSV table")->required();
  plot->add_option("--network", plot_network, "label used in plot names");
  plot->add_option("--out", plot_out, "output directory");
  plot->add_option("--epsilon", plot_epsilon, "loss-rate reference line");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) {
      return RunGenTrace(gen_source, gen_out);
    }
    if (sim->parsed()) {
      return RunSimulate(sim_source, sim_controller, sim_cfg, ctl_cfg,
                         sim_ledger);
    }
    if (sweep->parsed()) {
      return RunSweepCmd(sweep_spec, sweep_config, sweep_controllers,
                         sweep_out, sweep_plots, sweep_network);
    }
    if (plot->parsed()) {
      return RunPlot(plot_table, plot_network, plot_out, plot_epsilon);
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "uplinksim: %s\n", e.what());
    return 1;
  }
  return 0;
}
