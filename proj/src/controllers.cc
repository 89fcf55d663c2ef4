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

#include "uplinksim/controllers.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace uplinksim {

Strategy ParseStrategy(const std::string& name) {
  if (name == "min-size") {
    return Strategy::kMinSize;
  }
  if (name == "am") {
    return Strategy::kAm;
  }
  if (name == "marginal-quantile") {
    return Strategy::kMarginalQuantile;
  }
  if (name == "conditional-quantile") {
    return Strategy::kConditionalQuantile;
  }
  throw std::runtime_error("unknown controller strategy: " + name);
}

std::string StrategyName(Strategy strategy) {
  switch (strategy) {
    case Strategy::kMinSize:
      return "min-size";
    case Strategy::kAm:
      return "am";
    case Strategy::kMarginalQuantile:
      return "marginal-quantile";
    case Strategy::kConditionalQuantile:
      return "conditional-quantile";
  }
  throw std::logic_error("unreachable strategy");
}

void ValidateConfig(const ControllerConfig& cfg) {
  if (!(cfg.epsilon > 0.0) || !(cfg.epsilon < 1.0)) {
    throw std::invalid_argument("epsilon must lie in (0, 1)");
  }
  if (cfg.J < 2) {
    throw std::invalid_argument("J must be >= 2");
  }
  if (cfg.K < 1) {
    throw std::invalid_argument("K must be >= 1");
  }
  if (!(cfg.alpha > 0.0) || cfg.alpha > 1.0) {
    throw std::invalid_argument("alpha must lie in (0, 1]");
  }
  if (!(cfg.s_min_mb > 0.0)) {
    throw std::invalid_argument("s_min must be positive");
  }
  if (!(cfg.cond_tolerance > 0.0)) {
    throw std::invalid_argument("conditioning tolerance must be positive");
  }
}

double Quantile(std::vector<double> values, double gamma) {
  if (values.empty()) {
    throw std::invalid_argument("quantile of empty sequence");
  }
  if (!(gamma >= 0.0) || !(gamma <= 1.0)) {
    throw std::invalid_argument("quantile gamma outside [0, 1]");
  }
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  const double h = static_cast<double>(n - 1) * gamma;
  const std::size_t lo = static_cast<std::size_t>(h);
  const double frac = h - static_cast<double>(lo);
  if (lo + 1 >= n || frac == 0.0) {
    return values[lo];
  }
  return values[lo] + frac * (values[lo + 1] - values[lo]);
}

namespace {

double Budget(const SizingContext& ctx, const ControllerConfig& cfg) {
  return cfg.alpha * ctx.t_b + ctx.T;
}

SizeDecision QuantileDecision(const SizingContext& ctx,
                              const ControllerConfig& cfg, bool conditional) {
  SizeDecision decision;
  decision.size_mb = cfg.s_min_mb;
  decision.fallback_used = true;
  const double tau = Budget(ctx, cfg);
  if (ctx.history == nullptr || !(tau > 0.0)) {
    return decision;
  }
  const std::optional<BackwardWindow> window =
      BuildWindow(*ctx.history, tau, cfg.J);
  if (!window.has_value()) {
    return decision;  // insufficient history: floor at s_min
  }
  const std::vector<double>& values = window->values;
  decision.window_length = static_cast<int>(values.size());

  if (!conditional) {
    decision.fallback_used = false;
    decision.size_mb = std::max(cfg.s_min_mb, Quantile(values, cfg.epsilon));
    return decision;
  }

  // Conditioning set: for every older interval n whose value matches the
  // most recent interval within the tolerance, take the interval that
  // followed it in time (index n-1).
  const double anchor = values[0];
  const double tol = (cfg.cond_tolerance_absolute || anchor == 0.0)
                         ? cfg.cond_tolerance
                         : cfg.cond_tolerance * anchor;
  std::vector<double> conditioned;
  for (std::size_t n = 1; n < values.size(); ++n) {
    if (std::fabs(values[n] - anchor) <= tol) {
      conditioned.push_back(values[n - 1]);
    }
  }
  decision.conditioning_set_size = static_cast<int>(conditioned.size());
  if (conditioned.empty()) {
    // No interval resembles the present: marginal quantile over the rest.
    std::vector<double> rest(values.begin() + 1, values.end());
    decision.fallback_used = true;
    decision.size_mb = std::max(cfg.s_min_mb, Quantile(rest, cfg.epsilon));
    return decision;
  }
  decision.fallback_used = false;
  decision.size_mb =
      std::max(cfg.s_min_mb, Quantile(std::move(conditioned), cfg.epsilon));
  return decision;
}

}  // namespace

double AmSize(const SizingContext& ctx, const ControllerConfig& cfg) {
  const HistoryLog* log = ctx.history;
  if (log == nullptr || log->empty()) {
    return cfg.s_min_mb;
  }
  const std::size_t n = log->frame_count();
  const std::size_t window = std::min<std::size_t>(
      n, static_cast<std::size_t>(cfg.K));
  const std::size_t first = n - window;
  const double sum_s = log->size_prefix(n) - log->size_prefix(first);
  const double sum_t = log->duration_prefix(n) - log->duration_prefix(first);
  const double c_hat = sum_s / sum_t;
  return std::max(cfg.s_min_mb, c_hat * Budget(ctx, cfg));
}

SizeDecision MarginalQuantileSize(const SizingContext& ctx,
                                  const ControllerConfig& cfg) {
  return QuantileDecision(ctx, cfg, /*conditional=*/false);
}

SizeDecision ConditionalQuantileSize(const SizingContext& ctx,
                                     const ControllerConfig& cfg) {
  return QuantileDecision(ctx, cfg, /*conditional=*/true);
}

SizeDecision Decide(const ControllerConfig& cfg, const SizingContext& ctx) {
  switch (cfg.strategy) {
    case Strategy::kMinSize: {
      SizeDecision decision;
      decision.size_mb = cfg.s_min_mb;
      return decision;
    }
    case Strategy::kAm: {
      SizeDecision decision;
      decision.size_mb = AmSize(ctx, cfg);
      return decision;
    }
    case Strategy::kMarginalQuantile:
      return MarginalQuantileSize(ctx, cfg);
    case Strategy::kConditionalQuantile:
      return ConditionalQuantileSize(ctx, cfg);
  }
  throw std::logic_error("unreachable strategy");
}

}  // namespace uplinksim
