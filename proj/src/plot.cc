// Copyright 2026 The Pasta Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "pasta/plot.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <span>
#include <vector>

namespace pasta::plot {
namespace {

constexpr double kPanelW = 200.0;
constexpr double kPanelH = 140.0;
constexpr double kPad = 10.0;

std::string Num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  std::string s(buf);
  if (s == "-0.00") s = "0.00";
  return s;
}

std::string Escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string Header(double w, double h) {
  return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + Num(w) + "\" height=\"" +
         Num(h) + "\" viewBox=\"0 0 " + Num(w) + " " + Num(h) + "\">\n" +
         "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
}

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();

  void Add(double v) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  void Finish() {
    if (!(hi > lo)) {
      const double mid = std::isfinite(lo) ? lo : 0.0;
      lo = mid - 1.0;
      hi = mid + 1.0;
    }
  }
  double Map(double v, double px) const { return (v - lo) / (hi - lo) * px; }
};

// Polyline of equally spaced values inside a w x h box, y pointing up.
std::string Polyline(std::span<const double> values, const Range& y, double w, double h,
                     const std::string& attrs) {
  std::string pts;
  const double n = static_cast<double>(std::max<std::size_t>(values.size() - 1, 1));
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!pts.empty()) pts += ' ';
    pts += Num(static_cast<double>(i) / n * w) + "," + Num(h - y.Map(values[i], h));
  }
  return "<polyline fill=\"none\" " + attrs + " points=\"" + pts + "\"/>\n";
}

}  // namespace

std::string PlotModel(const cluster::ClusterModel& model, const patterns::PatternMatrix* members) {
  const std::size_t k = model.k();
  const auto cols = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(k))));
  const std::size_t rows = (k + cols - 1) / cols;

  std::vector<std::vector<const std::vector<double>*>> by_cluster(k);
  Range y;
  for (const auto& b : model.barycenters) {
    for (double v : b) y.Add(v);
  }
  if (members && members->n_f0() == model.n_f0) {
    for (const auto& row : members->rows()) {
      by_cluster[cluster::NearestPattern(model, row.values)].push_back(&row.values);
      for (double v : row.values) y.Add(v);
    }
  }
  y.Finish();

  const double w = static_cast<double>(cols) * (kPanelW + kPad) + kPad;
  const double h = static_cast<double>(rows) * (kPanelH + kPad) + kPad;
  std::string svg = Header(w, h);
  for (std::size_t c = 0; c < k; ++c) {
    const double x0 = kPad + static_cast<double>(c % cols) * (kPanelW + kPad);
    const double y0 = kPad + static_cast<double>(c / cols) * (kPanelH + kPad);
    svg += "<g class=\"panel\" id=\"cluster-" + std::to_string(c) + "\" transform=\"translate(" +
           Num(x0) + "," + Num(y0) + ")\">\n";
    svg += "<rect width=\"" + Num(kPanelW) + "\" height=\"" + Num(kPanelH) +
           "\" fill=\"none\" stroke=\"#888\"/>\n";
    svg += "<line x1=\"0\" x2=\"" + Num(kPanelW) + "\" y1=\"" + Num(kPanelH - y.Map(0.0, kPanelH)) +
           "\" y2=\"" + Num(kPanelH - y.Map(0.0, kPanelH)) + "\" stroke=\"#ccc\"/>\n";
    for (const auto* m : by_cluster[c]) {
      svg += Polyline(*m, y, kPanelW, kPanelH,
                      "class=\"member\" stroke=\"black\" stroke-opacity=\"0.3\"");
    }
    svg += Polyline(model.barycenters[c], y, kPanelW, kPanelH,
                    "class=\"barycenter\" stroke=\"red\" stroke-width=\"2\"");
    svg += "<text x=\"4\" y=\"14\" font-size=\"12\">" + std::to_string(c) + " (n=" +
           std::to_string(by_cluster[c].size()) + ")</text>\n";
    svg += "</g>\n";
  }
  svg += "</svg>\n";
  return svg;
}

std::string PlotSpline(const momel::MomelSpline& spline, const pitch::F0Contour* contour) {
  constexpr double kW = 800.0;
  constexpr double kH = 300.0;
  constexpr std::size_t kSamples = 400;
  double t0 = spline.domain_start();
  double t1 = spline.domain_end();
  if (contour) {
    t0 = std::min(t0, contour->start_time());
    t1 = std::max(t1, contour->end_time());
  }
  if (!(t1 > t0)) t1 = t0 + 1.0;

  std::vector<double> curve(kSamples);
  Range y;
  for (std::size_t i = 0; i < kSamples; ++i) {
    const double t = t0 + (t1 - t0) * static_cast<double>(i) / static_cast<double>(kSamples - 1);
    curve[i] = spline.Eval(t);
    y.Add(curve[i]);
  }
  if (contour) {
    for (const auto& f : contour->frames()) {
      if (f.voiced) y.Add(f.f0);
    }
  }
  y.Finish();
  auto px = [&](double t) { return kPad + (t - t0) / (t1 - t0) * kW; };
  auto py = [&](double v) { return kPad + kH - y.Map(v, kH); };

  std::string svg = Header(kW + 2 * kPad, kH + 2 * kPad);
  if (contour) {
    svg += "<g class=\"f0\" fill=\"#999\">\n";
    for (const auto& f : contour->frames()) {
      if (!f.voiced) continue;
      svg += "<circle cx=\"" + Num(px(f.time)) + "\" cy=\"" + Num(py(f.f0)) + "\" r=\"1.5\"/>\n";
    }
    svg += "</g>\n";
  }
  svg += "<g transform=\"translate(" + Num(kPad) + "," + Num(kPad) + ")\">\n";
  svg += Polyline(curve, y, kW, kH, "class=\"spline\" stroke=\"black\" stroke-width=\"1.5\"");
  svg += "</g>\n";
  for (const auto& a : spline.anchors()) {
    svg += "<circle class=\"anchor\" cx=\"" + Num(px(a.time)) + "\" cy=\"" + Num(py(a.value)) +
           "\" r=\"4\" fill=\"red\"/>\n";
  }
  svg += "</svg>\n";
  return svg;
}

std::string PlotMarkup(const pipeline::MarkupRecord& record) {
  constexpr double kW = 800.0;
  constexpr double kH = 80.0;
  double t0 = 0.0;
  double t1 = 1.0;
  if (!record.words.empty()) {
    t0 = record.words.front().start;
    t1 = std::max(record.words.back().end, t0 + 1e-3);
  }
  auto px = [&](double t) { return kPad + (t - t0) / (t1 - t0) * kW; };
  std::string svg = Header(kW + 2 * kPad, kH + 2 * kPad);
  svg += "<text x=\"" + Num(kPad) + "\" y=\"14\" font-size=\"12\">" +
         Escape(record.utterance_id) + "</text>\n";
  for (const auto& w : record.words) {
    const double x = px(w.start);
    const double width = px(w.end) - x;
    svg += "<g class=\"word\">\n";
    svg += "<rect x=\"" + Num(x) + "\" y=\"24\" width=\"" + Num(width) +
           "\" height=\"50\" fill=\"#eef\" stroke=\"black\"/>\n";
    svg += "<text x=\"" + Num(x + 3) + "\" y=\"44\" font-size=\"12\">" + Escape(w.text) +
           "</text>\n";
    svg += "<text x=\"" + Num(x + 3) + "\" y=\"64\" font-size=\"11\" fill=\"red\">p" +
           std::to_string(w.pattern_id) + " s" + std::to_string(w.state_id) + "</text>\n";
    svg += "</g>\n";
  }
  svg += "</svg>\n";
  return svg;
}

}  // namespace pasta::plot
