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

#include "uplinksim/plot.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <stdexcept>

namespace uplinksim {

namespace {

constexpr int kWidth = 720;
constexpr int kHeight = 440;
constexpr int kMarginLeft = 80;
constexpr int kMarginRight = 190;
constexpr int kMarginTop = 48;
constexpr int kMarginBottom = 64;

const char* const kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                                "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};

std::string Num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

struct Series {
  std::string name;
  std::vector<double> x;
  std::vector<double> y;
};

std::string RenderFigure(const std::vector<Series>& series,
                         const std::string& title, const std::string& xlabel,
                         const std::string& ylabel, double ref_line) {
  double x_min = series[0].x.front();
  double x_max = x_min;
  double y_max = 0.0;
  for (const Series& s : series) {
    for (const double v : s.x) {
      x_min = std::min(x_min, v);
      x_max = std::max(x_max, v);
    }
    for (const double v : s.y) {
      y_max = std::max(y_max, v);
    }
  }
  if (!std::isnan(ref_line)) {
    y_max = std::max(y_max, ref_line);
  }
  if (x_max <= x_min) {
    x_max = x_min + 1.0;
  }
  if (y_max <= 0.0) {
    y_max = 1.0;
  }
  y_max *= 1.12;  // headroom so the top polyline stays inside the frame

  const double plot_w = kWidth - kMarginLeft - kMarginRight;
  const double plot_h = kHeight - kMarginTop - kMarginBottom;
  const auto sx = [&](double v) {
    return kMarginLeft + (v - x_min) / (x_max - x_min) * plot_w;
  };
  const auto sy = [&](double v) {
    return kMarginTop + plot_h - v / y_max * plot_h;
  };

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
         std::to_string(kWidth) + "\" height=\"" + std::to_string(kHeight) +
         "\" viewBox=\"0 0 " + std::to_string(kWidth) + " " +
         std::to_string(kHeight) + "\">\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg += "<text x=\"" + Num(kMarginLeft + plot_w / 2) + "\" y=\"24\" "
         "text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"15\">" +
         title + "</text>\n";

  // Frame and ticks.
  svg += "<rect x=\"" + Num(kMarginLeft) + "\" y=\"" + Num(kMarginTop) +
         "\" width=\"" + Num(plot_w) + "\" height=\"" + Num(plot_h) +
         "\" fill=\"none\" stroke=\"#333\"/>\n";
  constexpr int kTicks = 5;
  for (int i = 0; i <= kTicks; ++i) {
    const double fx = x_min + (x_max - x_min) * i / kTicks;
    const double px = sx(fx);
    svg += "<line x1=\"" + Num(px) + "\" y1=\"" + Num(kMarginTop + plot_h) +
           "\" x2=\"" + Num(px) + "\" y2=\"" +
           Num(kMarginTop + plot_h + 5) + "\" stroke=\"#333\"/>\n";
    svg += "<text x=\"" + Num(px) + "\" y=\"" + Num(kMarginTop + plot_h + 20) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"11\">" + Num(fx) + "</text>\n";
    const double fy = y_max * i / kTicks;
    const double py = sy(fy);
    svg += "<line x1=\"" + Num(kMarginLeft - 5) + "\" y1=\"" + Num(py) +
           "\" x2=\"" + Num(kMarginLeft) + "\" y2=\"" + Num(py) +
           "\" stroke=\"#333\"/>\n";
    svg += "<text x=\"" + Num(kMarginLeft - 9) + "\" y=\"" + Num(py + 4) +
           "\" text-anchor=\"end\" font-family=\"sans-serif\" "
           "font-size=\"11\">" + Num(fy) + "</text>\n";
  }
  svg += "<text x=\"" + Num(kMarginLeft + plot_w / 2) + "\" y=\"" +
         Num(kHeight - 18) + "\" text-anchor=\"middle\" "
         "font-family=\"sans-serif\" font-size=\"13\">" + xlabel +
         "</text>\n";
  svg += "<text x=\"20\" y=\"" + Num(kMarginTop + plot_h / 2) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"13\" transform=\"rotate(-90 20 " +
         Num(kMarginTop + plot_h / 2) + ")\">" + ylabel + "</text>\n";

  if (!std::isnan(ref_line)) {
    svg += "<line x1=\"" + Num(sx(x_min)) + "\" y1=\"" + Num(sy(ref_line)) +
           "\" x2=\"" + Num(sx(x_max)) + "\" y2=\"" + Num(sy(ref_line)) +
           "\" stroke=\"#555\" stroke-dasharray=\"6 4\"/>\n";
    svg += "<text x=\"" + Num(sx(x_max) - 4) + "\" y=\"" +
           Num(sy(ref_line) - 5) + "\" text-anchor=\"end\" "
           "font-family=\"sans-serif\" font-size=\"11\" fill=\"#555\">"
           "target " + Num(ref_line) + "</text>\n";
  }

  for (std::size_t si = 0; si < series.size(); ++si) {
    const char* color = kPalette[si % (sizeof(kPalette) / sizeof(*kPalette))];
    std::string points;
    for (std::size_t i = 0; i < series[si].x.size(); ++i) {
      points += Num(sx(series[si].x[i])) + "," + Num(sy(series[si].y[i])) + " ";
    }
    svg += "<polyline fill=\"none\" stroke=\"" + std::string(color) +
           "\" stroke-width=\"1.8\" points=\"" + points + "\"/>\n";
    for (std::size_t i = 0; i < series[si].x.size(); ++i) {
      svg += "<circle cx=\"" + Num(sx(series[si].x[i])) + "\" cy=\"" +
             Num(sy(series[si].y[i])) + "\" r=\"2.6\" fill=\"" + color +
             "\"/>\n";
    }
    const double ly = kMarginTop + 14 + 18.0 * static_cast<double>(si);
    const double lx = kWidth - kMarginRight + 12;
    svg += "<line x1=\"" + Num(lx) + "\" y1=\"" + Num(ly - 4) + "\" x2=\"" +
           Num(lx + 22) + "\" y2=\"" + Num(ly - 4) + "\" stroke=\"" + color +
           "\" stroke-width=\"1.8\"/>\n";
    svg += "<text x=\"" + Num(lx + 28) + "\" y=\"" + Num(ly) +
           "\" font-family=\"sans-serif\" font-size=\"11\">" +
           series[si].name + "</text>\n";
  }
  svg += "</svg>\n";
  return svg;
}

}  // namespace

std::vector<std::string> WriteSweepPlots(const std::vector<SweepRow>& rows,
                                         const std::string& network,
                                         const std::string& out_dir,
                                         double epsilon) {
  if (rows.empty()) {
    throw std::runtime_error("empty sweep table");
  }
  const std::string axis = rows[0].axis;
  // Preserve first-appearance controller order.
  std::vector<std::string> order;
  std::map<std::string, std::size_t> index;
  for (const SweepRow& row : rows) {
    if (row.axis != axis) {
      throw std::runtime_error("sweep table mixes axes");
    }
    if (index.find(row.controller) == index.end()) {
      index[row.controller] = order.size();
      order.push_back(row.controller);
    }
  }
  std::vector<Series> bitrate(order.size());
  std::vector<Series> loss(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    bitrate[i].name = order[i];
    loss[i].name = order[i];
  }
  for (const SweepRow& row : rows) {
    const std::size_t i = index[row.controller];
    bitrate[i].x.push_back(row.value);
    bitrate[i].y.push_back(row.avg_bitrate);
    loss[i].x.push_back(row.value);
    loss[i].y.push_back(row.loss_rate);
  }

  const std::string xlabel =
      axis == "t_B" ? "t_B (s)" : (axis == "s_min" ? "s_min (Mb)" : axis);
  const std::string base =
      (out_dir.empty() ? std::string() : out_dir + "/") + network + "_" + axis;
  const std::vector<std::pair<std::string, std::string>> figures = {
      {base + "_bitrate.svg",
       RenderFigure(bitrate, network + ": average bitrate vs " + axis, xlabel,
                    "average bitrate (Mbps)",
                    std::nan(""))},
      {base + "_loss.svg",
       RenderFigure(loss, network + ": loss rate vs " + axis, xlabel,
                    "loss rate", epsilon)},
  };
  std::vector<std::string> written;
  for (const auto& [path, svg] : figures) {
    std::ofstream out(path);
    if (!out) {
      throw std::runtime_error("cannot write plot file: " + path);
    }
    out << svg;
    written.push_back(path);
  }
  return written;
}

}  // namespace uplinksim
