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

// Momel macromelodic model: a quadratic spline through target anchors with
// zero slope at every anchor.
//
// Between two anchors (t1, f1) and (t2, f2) the curve is two parabolas that
// meet at the temporal midpoint with value (f1 + f2) / 2:
//
//   t in [t1, tm]:  f1 + 2 (f2 - f1) ((t - t1) / (t2 - t1))^2
//   t in [tm, t2]:  f2 - 2 (f2 - f1) ((t2 - t) / (t2 - t1))^2
//
// Outside the anchor span the curve is held constant.

#ifndef PASTA_MOMEL_H_
#define PASTA_MOMEL_H_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "pasta/pitch.h"

namespace pasta::momel {

struct MomelAnchor {
  double time = 0.0;
  double value = 0.0;

  bool operator==(const MomelAnchor&) const = default;
};

// One quadratic arc anchored at its zero-slope point:
//   value(t) = base + amplitude * ((t - origin) / span)^2  for t in [lo, hi].
// Constant pieces have amplitude 0.
struct QuadraticPiece {
  double lo = 0.0;
  double hi = 0.0;
  double origin = 0.0;
  double base = 0.0;
  double amplitude = 0.0;
  double span = 1.0;

  double Eval(double t) const {
    const double r = (t - origin) / span;
    return base + amplitude * r * r;
  }
};

// A spline restricted to [t_start, t_end]. Shares its pieces with the parent,
// so evaluation on the interval is bit-identical to the parent's.
class SplineSlice {
 public:
  SplineSlice(std::vector<QuadraticPiece> pieces, double t_start, double t_end);

  double Eval(double t) const;
  double t_start() const { return t_start_; }
  double t_end() const { return t_end_; }
  std::span<const QuadraticPiece> pieces() const { return pieces_; }

  // n inclusive, evenly spaced samples: t_j = t_start + j * (t_end - t_start) / (n - 1).
  std::vector<double> SampleUniform(std::size_t n) const;

 private:
  std::vector<QuadraticPiece> pieces_;
  double t_start_;
  double t_end_;
};

class MomelSpline {
 public:
  MomelSpline(std::vector<MomelAnchor> anchors, double domain_start,
              double domain_end);
  // Domain spans exactly the anchors.
  explicit MomelSpline(std::vector<MomelAnchor> anchors);

  double Eval(double t) const;
  SplineSlice Slice(double t_start, double t_end) const;

  std::span<const MomelAnchor> anchors() const { return anchors_; }
  std::span<const QuadraticPiece> pieces() const { return pieces_; }
  double domain_start() const { return domain_start_; }
  double domain_end() const { return domain_end_; }

  bool operator==(const MomelSpline& other) const {
    return anchors_ == other.anchors_ && domain_start_ == other.domain_start_ &&
           domain_end_ == other.domain_end_;
  }

 private:
  std::vector<MomelAnchor> anchors_;
  double domain_start_;
  double domain_end_;
  std::vector<QuadraticPiece> pieces_;
};

double EvalSpline(const MomelSpline& spline, double t);
SplineSlice SliceSpline(const MomelSpline& spline, double t_start, double t_end);

struct FitParams {
  double window_a = 0.30;        // candidate window, seconds
  double max_residual = 0.05;    // relative residual for outlier rejection
  double window_b = 0.20;        // reduction window, seconds
  double min_anchor_gap = 0.05;  // anchors closer than this are merged
  double flat_tolerance = 1e-9;  // relative threshold for a level window
};

// Target-point candidates before reduction; exposed for diagnostics.
std::vector<MomelAnchor> FindCandidates(const pitch::F0Contour& contour,
                                        const FitParams& params);
std::vector<MomelAnchor> ReduceCandidates(std::vector<MomelAnchor> candidates,
                                          const FitParams& params);

// Fits anchors to the voiced frames of the contour. Works on Hz or on
// normalized values alike.
MomelSpline FitMomel(const pitch::F0Contour& contour, const FitParams& params = {});

std::string SplineToJson(const MomelSpline& spline);
MomelSpline SplineFromJson(const std::string& json);

}  // namespace pasta::momel

#endif  // PASTA_MOMEL_H_
