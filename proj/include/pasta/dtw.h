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

// Dynamic time warping with squared-difference local cost and the symmetric
// match/insert/delete step pattern.

#ifndef PASTA_DTW_H_
#define PASTA_DTW_H_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace pasta::cluster {

enum class Metric { kDtw, kEuclidean };

std::string MetricName(Metric metric);
Metric ParseMetric(const std::string& name);

// Sakoe-Chiba band half-width in samples; nullopt means the full window.
using Band = std::optional<std::size_t>;

// Accumulated squared cost of the optimal warping path.
double DtwCost(std::span<const double> a, std::span<const double> b, Band band = {});
// sqrt(DtwCost); dtw(a, a) == 0.
double DtwDistance(std::span<const double> a, std::span<const double> b, Band band = {});

// Optimal path as (index into a, index into b) pairs from (0, 0) to the
// end. Ties prefer the diagonal step, then the step that advances a.
std::vector<std::pair<std::size_t, std::size_t>> DtwPath(std::span<const double> a,
                                                         std::span<const double> b,
                                                         Band band = {});

double SquaredEuclidean(std::span<const double> a, std::span<const double> b);
double EuclideanDistance(std::span<const double> a, std::span<const double> b);

// Squared distance under the metric: the quantity k-means minimizes.
double MetricCost(Metric metric, std::span<const double> a, std::span<const double> b,
                  Band band = {});

}  // namespace pasta::cluster

#endif  // PASTA_DTW_H_
