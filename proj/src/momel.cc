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

#include "pasta/momel.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <utility>

#include <json.hpp>

#include "pasta/error.h"

namespace pasta::momel {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Last piece whose lower bound is <= t; the first piece for earlier t.
// Both the spline and its slices use this lookup, which is what makes slice
// evaluation identical to the parent.
const QuadraticPiece& FindPiece(std::span<const QuadraticPiece> pieces, double t) {
  auto it = std::upper_bound(pieces.begin(), pieces.end(), t,
                             [](double x, const QuadraticPiece& p) { return x < p.lo; });
  if (it == pieces.begin()) return pieces.front();
  return *(it - 1);
}

std::size_t FindPieceIndex(std::span<const QuadraticPiece> pieces, double t) {
  return static_cast<std::size_t>(&FindPiece(pieces, t) - pieces.data());
}

QuadraticPiece ConstantPiece(double lo, double hi, double value) {
  return QuadraticPiece{lo, hi, 0.0, value, 0.0, 1.0};
}

std::vector<QuadraticPiece> BuildPieces(std::span<const MomelAnchor> anchors) {
  std::vector<QuadraticPiece> pieces;
  pieces.reserve(2 * anchors.size());
  if (anchors.size() == 1) {
    pieces.push_back(ConstantPiece(-kInf, kInf, anchors.front().value));
    return pieces;
  }
  pieces.push_back(ConstantPiece(-kInf, anchors.front().time, anchors.front().value));
  for (std::size_t i = 0; i + 1 < anchors.size(); ++i) {
    const MomelAnchor& a = anchors[i];
    const MomelAnchor& b = anchors[i + 1];
    const double span = b.time - a.time;
    const double mid = 0.5 * (a.time + b.time);
    const double amp = 2.0 * (b.value - a.value);
    pieces.push_back(QuadraticPiece{a.time, mid, a.time, a.value, amp, span});
    pieces.push_back(QuadraticPiece{mid, b.time, b.time, b.value, -amp, span});
  }
  pieces.push_back(ConstantPiece(anchors.back().time, kInf, anchors.back().value));
  return pieces;
}

}  // namespace

SplineSlice::SplineSlice(std::vector<QuadraticPiece> pieces, double t_start,
                         double t_end)
    : pieces_(std::move(pieces)), t_start_(t_start), t_end_(t_end) {
  if (!(t_start_ < t_end_)) {
    throw Error(ErrorCode::kEmptyInterval, "slice start must precede its end");
  }
  if (pieces_.empty()) throw Error(ErrorCode::kInvalidArgument, "slice without pieces");
}

double SplineSlice::Eval(double t) const { return FindPiece(pieces_, t).Eval(t); }

std::vector<double> SplineSlice::SampleUniform(std::size_t n) const {
  if (n < 2) throw Error(ErrorCode::kInvalidArgument, "need at least 2 samples");
  std::vector<double> out(n);
  const double step = (t_end_ - t_start_) / static_cast<double>(n - 1);
  for (std::size_t j = 0; j + 1 < n; ++j) {
    out[j] = Eval(t_start_ + step * static_cast<double>(j));
  }
  out[n - 1] = Eval(t_end_);
  return out;
}

MomelSpline::MomelSpline(std::vector<MomelAnchor> anchors, double domain_start,
                         double domain_end)
    : anchors_(std::move(anchors)),
      domain_start_(domain_start),
      domain_end_(domain_end) {
  if (anchors_.empty()) throw Error(ErrorCode::kInvalidArgument, "spline needs an anchor");
  if (!(domain_start_ <= domain_end_)) {
    throw Error(ErrorCode::kInvalidArgument, "spline domain is reversed");
  }
  for (std::size_t i = 0; i < anchors_.size(); ++i) {
    const MomelAnchor& a = anchors_[i];
    if (!std::isfinite(a.time) || !std::isfinite(a.value) || !(a.value > 0.0)) {
      throw Error(ErrorCode::kInvalidArgument, "anchor values must be positive and finite");
    }
    if (i > 0 && !(a.time > anchors_[i - 1].time)) {
      throw Error(ErrorCode::kInvalidArgument, "anchor times must strictly increase");
    }
    if (a.time < domain_start_ || a.time > domain_end_) {
      throw Error(ErrorCode::kInvalidArgument, "anchor outside the spline domain");
    }
  }
  pieces_ = BuildPieces(anchors_);
}

MomelSpline::MomelSpline(std::vector<MomelAnchor> anchors)
    : MomelSpline(anchors, anchors.empty() ? 0.0 : anchors.front().time,
                  anchors.empty() ? 0.0 : anchors.back().time) {}

double MomelSpline::Eval(double t) const { return FindPiece(pieces_, t).Eval(t); }

SplineSlice MomelSpline::Slice(double t_start, double t_end) const {
  if (!(t_start < t_end)) {
    throw Error(ErrorCode::kEmptyInterval, "slice start must precede its end");
  }
  const std::size_t first = FindPieceIndex(pieces_, t_start);
  const std::size_t last = FindPieceIndex(pieces_, t_end);
  std::vector<QuadraticPiece> pieces(pieces_.begin() + static_cast<std::ptrdiff_t>(first),
                                     pieces_.begin() + static_cast<std::ptrdiff_t>(last) + 1);
  pieces.front().lo = t_start;
  pieces.back().hi = t_end;
  return SplineSlice(std::move(pieces), t_start, t_end);
}

double EvalSpline(const MomelSpline& spline, double t) { return spline.Eval(t); }

SplineSlice SliceSpline(const MomelSpline& spline, double t_start, double t_end) {
  return spline.Slice(t_start, t_end);
}

// ---------------------------------------------------------------------------
// Anchor detection.

namespace {

struct Point {
  double t;
  double v;
};

// Least-squares v ~ a + b x + c x^2. Returns false when the system is
// singular.
bool FitQuadratic(std::span<const Point> pts, std::span<const char> keep,
                  double center, double half_width, std::array<double, 3>& coef) {
  double s[5] = {0, 0, 0, 0, 0};
  double r[3] = {0, 0, 0};
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (!keep[i]) continue;
    const double x = (pts[i].t - center) / half_width;
    double p = 1.0;
    for (int k = 0; k < 5; ++k) {
      s[k] += p;
      if (k < 3) r[k] += p * pts[i].v;
      p *= x;
    }
  }
  double m[3][4] = {{s[0], s[1], s[2], r[0]},
                    {s[1], s[2], s[3], r[1]},
                    {s[2], s[3], s[4], r[2]}};
  for (int col = 0; col < 3; ++col) {
    int pivot = col;
    for (int row = col + 1; row < 3; ++row) {
      if (std::abs(m[row][col]) > std::abs(m[pivot][col])) pivot = row;
    }
    if (std::abs(m[pivot][col]) < 1e-12 * std::max(1.0, s[0])) return false;
    if (pivot != col) {
      for (int k = 0; k < 4; ++k) std::swap(m[col][k], m[pivot][k]);
    }
    for (int row = 0; row < 3; ++row) {
      if (row == col) continue;
      const double f = m[row][col] / m[col][col];
      for (int k = col; k < 4; ++k) m[row][k] -= f * m[col][k];
    }
  }
  for (int k = 0; k < 3; ++k) coef[static_cast<std::size_t>(k)] = m[k][3] / m[k][k];
  return true;
}

constexpr double kTimeSlack = 1e-9;

// a exceeds b beyond relative rounding noise.
bool Above(double a, double b) { return a > b + 1e-9 * std::max(std::abs(a), std::abs(b)); }

double Mean(std::span<const double> xs) {
  double s = 0.0;
  for (double x : xs) s += x;
  return s / static_cast<double>(xs.size());
}

}  // namespace

std::vector<MomelAnchor> FindCandidates(const pitch::F0Contour& contour,
                                        const FitParams& params) {
  std::vector<Point> voiced;
  for (const auto& f : contour.frames()) {
    if (f.voiced) voiced.push_back({f.time, f.f0});
  }
  const double half = 0.5 * params.window_a;
  const double t_lo = contour.start_time();
  const double t_hi = contour.end_time();

  std::vector<MomelAnchor> out;
  std::size_t lo = 0;
  for (const auto& frame : contour.frames()) {
    if (!frame.voiced) continue;
    const double center = frame.time;
    while (lo < voiced.size() && voiced[lo].t < center - half - 1e-9) ++lo;
    std::size_t hi = lo;
    while (hi < voiced.size() && voiced[hi].t <= center + half + 1e-9) ++hi;
    if (hi - lo < 3) continue;

    std::span<const Point> window(voiced.data() + lo, hi - lo);
    std::vector<char> keep(window.size(), 1);
    std::size_t kept = window.size();
    std::array<double, 3> coef{};
    bool ok = false;
    while (kept >= 3) {
      ok = FitQuadratic(window, keep, center, half, coef);
      if (!ok) break;
      std::size_t dropped = 0;
      for (std::size_t i = 0; i < window.size(); ++i) {
        if (!keep[i]) continue;
        const double x = (window[i].t - center) / half;
        const double fit = coef[0] + coef[1] * x + coef[2] * x * x;
        if (std::abs(window[i].v - fit) > params.max_residual * std::abs(fit)) {
          keep[i] = 0;
          ++dropped;
        }
      }
      if (dropped == 0) break;
      kept -= dropped;
      ok = false;
    }
    if (!ok) continue;

    const auto [a, b, c] = coef;
    double x_target = 0.0;
    double v_target = a;
    if (std::abs(c) < params.flat_tolerance * std::abs(a)) {
      // A straight line has no turning point; only a level window yields a
      // target.
      if (std::abs(b) >= params.flat_tolerance * std::abs(a)) continue;
    } else {
      x_target = -b / (2.0 * c);
      v_target = a - b * b / (4.0 * c);
    }
    if (std::abs(x_target) > 1.0) continue;
    const double t_target = center + x_target * half;
    if (t_target < t_lo || t_target > t_hi) continue;
    if (v_target < contour.f0_min() || v_target > contour.f0_max()) continue;
    out.push_back({t_target, v_target});
  }
  return out;
}

std::vector<MomelAnchor> ReduceCandidates(std::vector<MomelAnchor> cands,
                                          const FitParams& params) {
  if (cands.empty()) return {};
  std::stable_sort(cands.begin(), cands.end(),
                   [](const MomelAnchor& x, const MomelAnchor& y) { return x.time < y.time; });
  const std::size_t n = cands.size();
  const double half = 0.5 * params.window_b;

  double v_all = 0.0;
  for (const auto& c : cands) v_all += c.value;
  v_all /= static_cast<double>(n);

  // Jump profile: distance between the candidate means in the left and right
  // half-windows. A candidate with no left neighbour starts a new group.
  std::vector<double> jump(n, 0.0);
  std::vector<char> gap(n, 0);
  std::size_t l0 = 0;
  std::size_t r1 = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const double t = cands[k].time;
    while (l0 < n && cands[l0].time < t - half - kTimeSlack) ++l0;
    std::size_t l1 = k;
    // Equal times sit on the right.
    while (l1 > 0 && cands[l1 - 1].time >= t - kTimeSlack) --l1;
    r1 = std::max(r1, k);
    while (r1 < n && cands[r1].time <= t + half + kTimeSlack) ++r1;
    if (l0 >= l1) {
      gap[k] = 1;
      continue;
    }
    double lt = 0, lv = 0, rt = 0, rv = 0;
    for (std::size_t i = l0; i < l1; ++i) {
      lt += cands[i].time;
      lv += cands[i].value;
    }
    for (std::size_t i = l1; i < r1; ++i) {
      rt += cands[i].time;
      rv += cands[i].value;
    }
    const double nl = static_cast<double>(l1 - l0);
    const double nr = static_cast<double>(r1 - l1);
    jump[k] = std::abs(rt / nr - lt / nl) / half + std::abs(rv / nr - lv / nl) / v_all;
  }

  double mean = 0.0;
  double sq = 0.0;
  std::size_t m = 0;
  for (std::size_t k = 0; k < n; ++k) {
    if (gap[k]) continue;
    mean += jump[k];
    sq += jump[k] * jump[k];
    ++m;
  }
  double threshold = std::numeric_limits<double>::infinity();
  if (m > 0) {
    mean /= static_cast<double>(m);
    const double var = std::max(0.0, sq / static_cast<double>(m) - mean * mean);
    // Rounding noise on a level contour must not open partitions.
    threshold = std::max(mean + std::sqrt(var), 1e-6);
  }

  // A peak rises above its left neighbour and the threshold; a plateau of
  // equal jumps opens one partition at its first point.
  std::vector<std::size_t> bounds{0};
  for (std::size_t k = 1; k < n; ++k) {
    bool peak = Above(jump[k], threshold) && Above(jump[k], jump[k - 1]);
    if (peak) {
      std::size_t j = k;
      while (j + 1 < n && !gap[j + 1] && !Above(jump[j + 1], jump[k]) &&
             !Above(jump[k], jump[j + 1])) {
        ++j;
      }
      peak = j + 1 >= n || gap[j + 1] || !Above(jump[j + 1], jump[k]);
    }
    if (gap[k] || peak) bounds.push_back(k);
  }
  bounds.push_back(n);

  std::vector<MomelAnchor> anchors;
  for (std::size_t p = 0; p + 1 < bounds.size(); ++p) {
    std::vector<double> ts;
    std::vector<double> vs;
    for (std::size_t i = bounds[p]; i < bounds[p + 1]; ++i) {
      ts.push_back(cands[i].time);
      vs.push_back(cands[i].value);
    }
    const double mu = Mean(vs);
    double var = 0.0;
    for (double v : vs) var += (v - mu) * (v - mu);
    const double sd = std::sqrt(var / static_cast<double>(vs.size()));
    double st = 0.0, sv = 0.0;
    std::size_t cnt = 0;
    // Values exactly one sd away (every two-candidate group) and groups that
    // differ only by rounding noise are kept whole.
    const double cutoff = std::max(sd * (1.0 + 1e-9), 1e-9 * std::abs(mu));
    for (std::size_t i = 0; i < vs.size(); ++i) {
      if (std::abs(vs[i] - mu) > cutoff) continue;
      st += ts[i];
      sv += vs[i];
      ++cnt;
    }
    if (cnt == 0) {  // every value exactly one sd away cannot happen, but stay total
      st = Mean(ts) * static_cast<double>(ts.size());
      sv = mu * static_cast<double>(vs.size());
      cnt = vs.size();
    }
    anchors.push_back({st / static_cast<double>(cnt), sv / static_cast<double>(cnt)});
  }

  std::vector<MomelAnchor> merged;
  for (const MomelAnchor& a : anchors) {
    if (!merged.empty() && a.time - merged.back().time < params.min_anchor_gap) {
      merged.back() = {0.5 * (merged.back().time + a.time),
                       0.5 * (merged.back().value + a.value)};
    } else {
      merged.push_back(a);
    }
  }
  return merged;
}

MomelSpline FitMomel(const pitch::F0Contour& contour, const FitParams& params) {
  if (contour.voiced_count() < 3) {
    throw Error(ErrorCode::kTooFewVoicedFrames,
                "need at least 3 voiced frames, got " +
                    std::to_string(contour.voiced_count()));
  }
  if (!(params.window_a > 0) || !(params.window_b > 0) || !(params.max_residual > 0) ||
      params.min_anchor_gap < 0) {
    throw Error(ErrorCode::kInvalidArgument, "invalid Momel parameters");
  }
  std::vector<MomelAnchor> anchors = ReduceCandidates(FindCandidates(contour, params), params);
  if (anchors.empty()) throw Error(ErrorCode::kNoAnchorsFound, "all candidates rejected");
  return MomelSpline(std::move(anchors), contour.start_time(), contour.end_time());
}

// ---------------------------------------------------------------------------
// JSON.

std::string SplineToJson(const MomelSpline& spline) {
  nlohmann::ordered_json j;
  j["anchors"] = nlohmann::ordered_json::array();
  for (const auto& a : spline.anchors()) {
    j["anchors"].push_back({{"t", a.time}, {"v", a.value}});
  }
  j["domain"] = {spline.domain_start(), spline.domain_end()};
  return j.dump();
}

MomelSpline SplineFromJson(const std::string& text) {
  try {
    const auto j = nlohmann::json::parse(text);
    std::vector<MomelAnchor> anchors;
    for (const auto& a : j.at("anchors")) {
      anchors.push_back({a.at("t").get<double>(), a.at("v").get<double>()});
    }
    const auto& d = j.at("domain");
    if (!d.is_array() || d.size() != 2) {
      throw Error(ErrorCode::kParseError, "spline domain must be [t0, t1]");
    }
    return MomelSpline(std::move(anchors), d[0].get<double>(), d[1].get<double>());
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParseError, std::string("spline JSON: ") + e.what());
  }
}

}  // namespace pasta::momel
