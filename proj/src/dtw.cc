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

#include "pasta/dtw.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pasta/error.h"

namespace pasta::cluster {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void CheckInputs(std::span<const double> a, std::span<const double> b, Band band) {
  if (a.empty() || b.empty()) throw Error(ErrorCode::kEmptyInput, "DTW of an empty sequence");
  if (band && *band == 0 && a.size() != b.size()) {
    throw Error(ErrorCode::kInvalidArgument, "a zero band needs equal lengths");
  }
}

// Cell (i, j) lies inside the band around the diagonal from (0, 0) to
// (n - 1, m - 1).
bool InBand(std::size_t i, std::size_t j, std::size_t n, std::size_t m, Band band) {
  if (!band) return true;
  const auto x = static_cast<long long>(i) * static_cast<long long>(std::max<std::size_t>(m - 1, 1));
  const auto y = static_cast<long long>(j) * static_cast<long long>(std::max<std::size_t>(n - 1, 1));
  const auto scale = static_cast<long long>(std::max<std::size_t>(std::max(n, m) - 1, 1));
  return std::llabs(x - y) <= static_cast<long long>(*band) * scale;
}

// Full (n+1) x (m+1) accumulated cost table with an infinite border.
std::vector<double> CostTable(std::span<const double> a, std::span<const double> b,
                              Band band) {
  const std::size_t n = a.size();
  const std::size_t m = b.size();
  const std::size_t w = m + 1;
  std::vector<double> d((n + 1) * w, kInf);
  d[0] = 0.0;
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= m; ++j) {
      if (!InBand(i - 1, j - 1, n, m, band)) continue;
      const double diff = a[i - 1] - b[j - 1];
      const double best =
          std::min({d[(i - 1) * w + (j - 1)], d[(i - 1) * w + j], d[i * w + (j - 1)]});
      d[i * w + j] = diff * diff + best;
    }
  }
  return d;
}

}  // namespace

std::string MetricName(Metric metric) {
  return metric == Metric::kDtw ? "dtw" : "euclidean";
}

Metric ParseMetric(const std::string& name) {
  if (name == "dtw") return Metric::kDtw;
  if (name == "euclidean") return Metric::kEuclidean;
  throw Error(ErrorCode::kInvalidArgument, "unknown metric '" + name + "'");
}

double DtwCost(std::span<const double> a, std::span<const double> b, Band band) {
  CheckInputs(a, b, band);
  const std::size_t n = a.size();
  const std::size_t m = b.size();
  // Two rolling rows are enough for the cost alone.
  std::vector<double> prev(m + 1, kInf);
  std::vector<double> cur(m + 1, kInf);
  prev[0] = 0.0;
  for (std::size_t i = 1; i <= n; ++i) {
    cur[0] = kInf;
    for (std::size_t j = 1; j <= m; ++j) {
      if (!InBand(i - 1, j - 1, n, m, band)) {
        cur[j] = kInf;
        continue;
      }
      const double diff = a[i - 1] - b[j - 1];
      cur[j] = diff * diff + std::min({prev[j - 1], prev[j], cur[j - 1]});
    }
    std::swap(prev, cur);
  }
  return prev[m];
}

double DtwDistance(std::span<const double> a, std::span<const double> b, Band band) {
  return std::sqrt(DtwCost(a, b, band));
}

std::vector<std::pair<std::size_t, std::size_t>> DtwPath(std::span<const double> a,
                                                         std::span<const double> b,
                                                         Band band) {
  CheckInputs(a, b, band);
  const std::vector<double> d = CostTable(a, b, band);
  const std::size_t w = b.size() + 1;
  std::vector<std::pair<std::size_t, std::size_t>> path;
  std::size_t i = a.size();
  std::size_t j = b.size();
  while (true) {
    path.emplace_back(i - 1, j - 1);
    if (i == 1 && j == 1) break;
    const double diag = d[(i - 1) * w + (j - 1)];
    const double up = d[(i - 1) * w + j];
    const double left = d[i * w + (j - 1)];
    if (diag <= up && diag <= left) {
      --i;
      --j;
    } else if (up <= left) {
      --i;
    } else {
      --j;
    }
  }
  std::reverse(path.begin(), path.end());
  return path;
}

double SquaredEuclidean(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw Error(ErrorCode::kEmptyInput, "empty vector");
  if (a.size() != b.size()) {
    throw Error(ErrorCode::kLengthMismatch, "Euclidean distance needs equal lengths");
  }
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double diff = a[i] - b[i];
    s += diff * diff;
  }
  return s;
}

double EuclideanDistance(std::span<const double> a, std::span<const double> b) {
  return std::sqrt(SquaredEuclidean(a, b));
}

double MetricCost(Metric metric, std::span<const double> a, std::span<const double> b,
                  Band band) {
  return metric == Metric::kDtw ? DtwCost(a, b, band) : SquaredEuclidean(a, b);
}

}  // namespace pasta::cluster
