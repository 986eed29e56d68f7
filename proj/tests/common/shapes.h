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

// Synthetic word patterns shared by the unit and acceptance tests.

#ifndef PASTA_TESTS_COMMON_SHAPES_H_
#define PASTA_TESTS_COMMON_SHAPES_H_

#include <cstddef>
#include <vector>

#include "pasta/patterns.h"

namespace pasta::testing {

inline constexpr double kPeakHalfWidth = 0.25;

inline void CenterValues(std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m += x;
  m /= static_cast<double>(v.size());
  for (double& x : v) x -= m;
}

// Parabolic bump of half-width kPeakHalfWidth peaking at fraction alpha of
// the word, mean-centered.
inline std::vector<double> PeakPattern(double alpha, std::size_t n) {
  std::vector<double> v(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double x = static_cast<double>(j) / static_cast<double>(n - 1);
    const double r = (x - alpha) / kPeakHalfWidth;
    v[j] = r * r < 1.0 ? 1.0 - r * r : 0.0;
  }
  CenterValues(v);
  return v;
}

// Near-level tone: a linear drift of total excursion `drift`, mean-centered.
inline std::vector<double> LevelPattern(double drift, std::size_t n) {
  std::vector<double> v(n);
  for (std::size_t j = 0; j < n; ++j) {
    v[j] = drift * static_cast<double>(j) / static_cast<double>(n - 1);
  }
  CenterValues(v);
  return v;
}

struct ShapeSet {
  std::vector<std::vector<double>> peaks;
  std::vector<std::vector<double>> levels;
};

// Peaks at evenly spaced positions in [0.25, 0.75]; levels with drifts in
// [-0.05, 0.05].
inline ShapeSet ShiftedPeaksAndLevels(std::size_t n_peaks, std::size_t n_levels,
                                      std::size_t n_f0) {
  ShapeSet s;
  for (std::size_t i = 0; i < n_peaks; ++i) {
    const double alpha =
        0.25 + 0.5 * static_cast<double>(i) / static_cast<double>(n_peaks - 1);
    s.peaks.push_back(PeakPattern(alpha, n_f0));
  }
  for (std::size_t i = 0; i < n_levels; ++i) {
    const double drift =
        -0.05 + 0.1 * static_cast<double>(i) / static_cast<double>(n_levels - 1);
    s.levels.push_back(LevelPattern(drift, n_f0));
  }
  return s;
}

inline patterns::PatternMatrix ToMatrix(const ShapeSet& s, std::size_t n_f0) {
  patterns::PatternMatrix m(n_f0);
  std::size_t i = 0;
  for (const auto* group : {&s.peaks, &s.levels}) {
    for (const auto& v : *group) {
      m.Append(patterns::WordPattern{v, 1.0 + 0.01 * static_cast<double>(i % 5), i, "shapes"});
      ++i;
    }
  }
  return m;
}

}  // namespace pasta::testing

#endif  // PASTA_TESTS_COMMON_SHAPES_H_
