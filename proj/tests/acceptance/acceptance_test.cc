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

// Acceptance gate: one PASS/FAIL line per criterion, non-zero exit on any
// failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "pasta/clustering.h"
#include "pasta/intsint.h"
#include "pasta/momel.h"
#include "pasta/patterns.h"
#include "pasta/pipeline.h"
#include "pasta/pitch.h"
#include "pasta/timeline.h"
#include "shapes.h"

namespace {

namespace fs = std::filesystem;
using namespace pasta;
using momel::MomelAnchor;
using momel::MomelSpline;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::string detail;
};

double Seconds(Clock::time_point since) {
  return std::chrono::duration<double>(Clock::now() - since).count();
}

std::string Fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), f, v);
  return buf;
}

// Two-parabola evaluation written out independently of the library.
double Oracle(const std::vector<MomelAnchor>& a, double t) {
  if (t <= a.front().time) return a.front().value;
  if (t >= a.back().time) return a.back().value;
  std::size_t i = 0;
  while (!(t >= a[i].time && t <= a[i + 1].time)) ++i;
  const double d = a[i + 1].time - a[i].time;
  const double df = a[i + 1].value - a[i].value;
  if (t <= 0.5 * (a[i].time + a[i + 1].time)) {
    const double r = (t - a[i].time) / d;
    return a[i].value + 2.0 * df * r * r;
  }
  const double r = (a[i + 1].time - t) / d;
  return a[i + 1].value - 2.0 * df * r * r;
}

pitch::F0Contour Sample(const std::vector<MomelAnchor>& a, double t0, double t1) {
  std::vector<pitch::F0Frame> frames;
  const auto n = static_cast<std::size_t>(std::llround((t1 - t0) / 0.01)) + 1;
  for (std::size_t i = 0; i < n; ++i) {
    const double t = t0 + 0.01 * static_cast<double>(i);
    frames.push_back({t, Oracle(a, t), true});
  }
  return pitch::F0Contour(frames, 0.01);
}

// Anchor gaps in [0.2, 0.6] s, values in [70, 300] Hz.
std::vector<MomelAnchor> RandomAnchors(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> gap(0.2, 0.6);
  std::uniform_real_distribution<double> val(70.0, 300.0);
  std::vector<MomelAnchor> a;
  double t = gap(rng);
  for (std::size_t i = 0; i < n; ++i) {
    a.push_back({t, val(rng)});
    t += gap(rng);
  }
  return a;
}

std::string Slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path DataDir() { return PASTA_TEST_DATA; }

std::vector<pipeline::UtteranceRecord> Fixture() {
  return pipeline::LoadManifest(DataDir() / "corpus" / "manifest.csv");
}

pipeline::TrainConfig GoldenConfig() {
  pipeline::TrainConfig cfg;
  cfg.k = 4;
  cfg.s = 3;
  cfg.seed = 7;
  return cfg;
}

Outcome MomelRoundTrip() {
  const std::vector<MomelAnchor> gen = {{0.1, 120.0}, {0.7, 180.0}, {1.3, 110.0}};
  const auto contour = Sample(gen, 0.1, 1.3);
  const auto start = Clock::now();
  const auto spline = momel::FitMomel(contour);
  const double secs = Seconds(start);
  const auto got = spline.anchors();
  Outcome o;
  o.pass = got.size() == 3 && secs < 1.0;
  double dt = 0.0;
  double dv = 0.0;
  if (got.size() == 3) {
    for (std::size_t i = 0; i < 3; ++i) {
      dt = std::max(dt, std::abs(got[i].time - gen[i].time));
      dv = std::max(dv, std::abs(got[i].value - gen[i].value));
    }
  }
  o.pass = o.pass && dt <= 0.020 && dv <= 5.0;
  o.detail = std::to_string(got.size()) + " anchors, max |dt| " + Fmt("%.4f s", dt) +
             ", max |dv| " + Fmt("%.3f Hz", dv) + ", " + Fmt("%.4f s", secs);
  return o;
}

Outcome SplineAnalytics() {
  std::mt19937_64 rng(2024);
  const double h = 1e-5;
  double worst_slope = 0.0;
  double worst_c1 = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const auto a = RandomAnchors(rng, 3 + trial % 6);
    const MomelSpline s(a);
    for (std::size_t i = 0; i < a.size(); ++i) {
      double local = 0.0;
      if (i > 0) local = std::max(local, std::abs(a[i].value - a[i - 1].value));
      if (i + 1 < a.size()) local = std::max(local, std::abs(a[i + 1].value - a[i].value));
      const double slope = (s.Eval(a[i].time + h) - s.Eval(a[i].time - h)) / (2.0 * h);
      worst_slope = std::max(worst_slope, std::abs(slope) / local);
    }
    for (std::size_t i = 0; i + 1 < a.size(); ++i) {
      const double tm = 0.5 * (a[i].time + a[i + 1].time);
      const double left = (s.Eval(tm) - s.Eval(tm - h)) / h;
      const double right = (s.Eval(tm + h) - s.Eval(tm)) / h;
      const double scale = std::max({std::abs(left), std::abs(right), 1e-300});
      worst_c1 = std::max(worst_c1, std::abs(left - right) / scale);
    }
  }
  return {worst_slope < 1e-3 && worst_c1 <= 1e-6,
          "max anchor slope/local range " + Fmt("%.2e", worst_slope) +
              ", max midpoint mismatch " + Fmt("%.2e", worst_c1)};
}

Outcome SliceEquality() {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::size_t probes = 0;
  std::size_t mismatches = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const auto a = RandomAnchors(rng, 2 + trial % 7);
    const MomelSpline s(a);
    const double lo = a.front().time - 0.2;
    const double span = a.back().time - a.front().time + 0.4;
    double t0 = lo + u(rng) * span;
    double t1 = lo + u(rng) * span;
    if (t0 > t1) std::swap(t0, t1);
    if (t1 - t0 < 1e-6) continue;
    const auto slice = momel::SliceSpline(s, t0, t1);
    for (int k = 0; k < 100; ++k) {
      const double t = t0 + (t1 - t0) * k / 99.0;
      ++probes;
      if (slice.Eval(t) != momel::EvalSpline(s, t)) ++mismatches;
    }
  }
  return {mismatches == 0 && probes > 0,
          std::to_string(probes) + " probes, " + std::to_string(mismatches) + " mismatches"};
}

Outcome Normalization() {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> f0(70.0, 400.0);
  double worst_mean = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<pitch::F0Frame> frames;
    for (int i = 0; i < 200; ++i) {
      const bool voiced = (i * 7 + trial) % 11 != 0;
      frames.push_back({0.01 * i, voiced ? f0(rng) : 0.0, voiced});
    }
    const pitch::F0Contour c(frames, 0.01);
    const double m = pitch::ComputeMeanF0(std::vector<pitch::F0Contour>{c});
    const auto n = pitch::NormalizeF0(c, {pitch::NormMode::kPhrase, m});
    worst_mean = std::max(
        worst_mean, std::abs(pitch::ComputeMeanF0(std::vector<pitch::F0Contour>{n}) - 1.0));
  }

  // Whole front end on every fixture utterance: scaling the F0 track, its
  // voicing bounds and the mean by c leaves the word patterns unchanged.
  double worst_pattern = 0.0;
  for (const auto& rec : Fixture()) {
    const auto base = pitch::LoadF0(rec.f0_path, pitch::GuessFormat(rec.f0_path));
    const auto alignment =
        align::LoadAlignment(rec.alignment_path, align::GuessAlignmentFormat(rec.alignment_path));
    const double mean = pitch::ComputeMeanF0(std::vector<pitch::F0Contour>{base});
    const auto ref = patterns::ExtractPatterns(momel::FitMomel(base), alignment,
                                               {pitch::NormMode::kPhrase, mean}, 32);
    for (double c : {0.5, 1.7, 3.0}) {
      std::vector<pitch::F0Frame> frames(base.frames().begin(), base.frames().end());
      for (auto& f : frames) f.f0 *= c;
      const pitch::F0Contour scaled(frames, base.frame_step(), base.f0_min() * c,
                                    base.f0_max() * c);
      const auto got = patterns::ExtractPatterns(momel::FitMomel(scaled), alignment,
                                                 {pitch::NormMode::kPhrase, mean * c}, 32);
      if (got.size() != ref.size()) return {false, "word count changed under scaling"};
      for (std::size_t w = 0; w < ref.size(); ++w) {
        worst_pattern = std::max(worst_pattern, std::abs(got[w].level - ref[w].level));
        for (std::size_t j = 0; j < 32; ++j) {
          worst_pattern =
              std::max(worst_pattern, std::abs(got[w].values[j] - ref[w].values[j]));
        }
      }
    }
  }
  return {worst_mean <= 1e-9 && worst_pattern <= 1e-9,
          "max |mean-1| " + Fmt("%.2e", worst_mean) + ", max pattern deviation " +
              Fmt("%.2e", worst_pattern)};
}

Outcome Intsint() {
  using namespace intsint;
  const IntsintParams p;
  const auto tmb = DecodeIntsint({{Symbol::kT, 0.0}, {Symbol::kM, 1.0}, {Symbol::kB, 2.0}}, p);
  const double two_thirds = 2.0 / 3.0;
  const double ulp = std::nextafter(two_thirds, 1.0) - two_thirds;
  bool ok = tmb[0].value == 4.0 / 3.0 && tmb[1].value == 1.0 &&
            std::abs(tmb[2].value - two_thirds) <= ulp;
  const std::string values = Fmt("T=%.17g", tmb[0].value) + Fmt(" M=%.17g", tmb[1].value) +
                             Fmt(" B=%.17g", tmb[2].value);

  std::mt19937_64 rng(51);
  std::uniform_int_distribution<std::size_t> abs(0, 2);
  std::uniform_int_distribution<std::size_t> any(0, 7);
  std::size_t fixed_point_failures = 0;
  std::size_t out_of_range = 0;
  for (int trial = 0; trial < 2000; ++trial) {
    std::vector<IntsintMark> m;
    for (int i = 0; i < 1 + trial % 16; ++i) {
      m.push_back({kAllSymbols[i == 0 ? abs(rng) : any(rng)], 0.1 * i});
    }
    const auto y = DecodeIntsint(m, p);
    if (DecodeIntsint(EncodeIntsint(y, p), p) != y) ++fixed_point_failures;
    for (const auto& a : y) {
      if (a.value < p.bottom() || a.value > p.top()) ++out_of_range;
    }
  }
  ok = ok && fixed_point_failures == 0 && out_of_range == 0;
  return {ok, values + ", fixed-point failures " + std::to_string(fixed_point_failures) +
                  ", out of range " + std::to_string(out_of_range)};
}

Outcome ShiftRobustness() {
  const auto start = Clock::now();
  const std::size_t n = 32;
  const auto shapes = testing::ShiftedPeaksAndLevels(20, 10, n);
  double max_dtw = 0.0;
  for (const auto& a : shapes.peaks) {
    for (const auto& b : shapes.peaks) max_dtw = std::max(max_dtw, cluster::DtwDistance(a, b));
  }
  double min_euclid = INFINITY;
  for (const auto& a : shapes.peaks) {
    for (const auto& b : shapes.levels) {
      min_euclid = std::min(min_euclid, cluster::EuclideanDistance(a, b));
    }
  }
  cluster::TrainOptions opt;
  opt.k = 2;
  opt.s = 1;
  opt.seed = 7;
  const auto r = cluster::Train(testing::ToMatrix(shapes, n), opt);
  const std::set<std::size_t> ids(r.pattern_labels.begin(),
                                  r.pattern_labels.begin() + shapes.peaks.size());
  const double secs = Seconds(start);
  return {max_dtw < min_euclid && ids.size() == 1 && secs < 10.0,
          "max intra-peak DTW " + Fmt("%.4f", max_dtw) + " < min Euclidean to level " +
              Fmt("%.4f", min_euclid) + ", peak clusters " + std::to_string(ids.size()) +
              ", " + Fmt("%.3f s", secs)};
}

Outcome DeterminismAndInertia() {
  const auto a = pipeline::RunTrain(Fixture(), GoldenConfig());
  const auto b = pipeline::RunTrain(Fixture(), GoldenConfig());
  const bool same = cluster::ModelToJson(a.model) == cluster::ModelToJson(b.model);
  std::size_t increases = 0;
  std::size_t runs = 0;
  for (cluster::Metric metric : {cluster::Metric::kDtw, cluster::Metric::kEuclidean}) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      cluster::TrainOptions opt;
      opt.k = 4;
      opt.s = 3;
      opt.metric = metric;
      opt.seed = seed;
      const auto r = cluster::Train(a.matrix, opt);
      ++runs;
      for (const auto* inertia : {&r.pattern_inertia, &r.state_inertia}) {
        for (std::size_t i = 1; i < inertia->size(); ++i) {
          if ((*inertia)[i] > (*inertia)[i - 1]) ++increases;
        }
      }
    }
  }
  return {same && increases == 0, std::string(same ? "identical" : "different") +
                                      " models, " + std::to_string(increases) +
                                      " inertia increases over " + std::to_string(runs) +
                                      " runs"};
}

Outcome GoldenRun() {
  const fs::path golden = DataDir() / "golden_markup.jsonl";
  if (!fs::exists(golden)) return {false, "missing " + golden.string()};
  const auto start = Clock::now();
  const auto train = pipeline::RunTrain(Fixture(), GoldenConfig());
  const auto markup = pipeline::RunMarkup(Fixture(), train.model);
  const std::string got = pipeline::MarkupToJsonl(markup.records);
  const double secs = Seconds(start);
  const bool same = got == Slurp(golden);
  return {same && secs < 30.0,
          std::string(same ? "byte-identical" : "differs from golden") + ", " +
              std::to_string(markup.records.size()) + " utterances, " + Fmt("%.3f s", secs)};
}

Outcome SynthesisDirection() {
  const auto model = pipeline::RunTrain(Fixture(), GoldenConfig()).model;
  const auto plan = pipeline::ParseSynthPlan(
      R"({"words":["м+ама","м+ыла","р+аму"],"type":"statement"})");
  const auto out = pipeline::RunSynth(plan, model);
  const auto& bary = model.barycenters[out.words.back().pattern_id];
  const std::size_t q = bary.size() / 4;
  double first = 0.0;
  double last = 0.0;
  for (std::size_t j = 0; j < q; ++j) {
    first += bary[j];
    last += bary[bary.size() - q + j];
  }
  const double movement = (last - first) / static_cast<double>(q);
  return {movement < 0.0, "final word pattern " + std::to_string(out.words.back().pattern_id) +
                              ", net movement " + Fmt("%.5f", movement)};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"momel-round-trip", MomelRoundTrip},
      {"spline-analytics", SplineAnalytics},
      {"slice-equality", SliceEquality},
      {"normalization", Normalization},
      {"intsint-targets", Intsint},
      {"dtw-shift-robustness", ShiftRobustness},
      {"clustering-determinism-inertia", DeterminismAndInertia},
      {"end-to-end-golden", GoldenRun},
      {"synthesis-direction", SynthesisDirection},
  };
  int failures = 0;
  for (const auto& [name, run] : criteria) {
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("%s %s: %s\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
    if (!o.pass) ++failures;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}
