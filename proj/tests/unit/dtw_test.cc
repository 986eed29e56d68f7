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

#include <cmath>
#include <cstdlib>
#include <limits>
#include <random>
#include <vector>

#include <catch_amalgamated.hpp>

#include "pasta/dtw.h"
#include "test_util.h"

using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;
using namespace pasta;
using namespace pasta::cluster;
using pasta::testing::CodeOf;

namespace {

using Vec = std::vector<double>;

// Minimum squared cost over every monotone path from (i, j) to the end,
// enumerated recursively without memoization.
double BruteForce(const Vec& a, const Vec& b, std::size_t i, std::size_t j, long band) {
  if (band >= 0 && std::labs(static_cast<long>(i) - static_cast<long>(j)) > band) {
    return std::numeric_limits<double>::infinity();
  }
  const double d = (a[i] - b[j]) * (a[i] - b[j]);
  if (i + 1 == a.size() && j + 1 == b.size()) return d;
  double best = std::numeric_limits<double>::infinity();
  if (i + 1 < a.size()) best = std::min(best, BruteForce(a, b, i + 1, j, band));
  if (j + 1 < b.size()) best = std::min(best, BruteForce(a, b, i, j + 1, band));
  if (i + 1 < a.size() && j + 1 < b.size()) {
    best = std::min(best, BruteForce(a, b, i + 1, j + 1, band));
  }
  return d + best;
}

double Oracle(const Vec& a, const Vec& b, long band = -1) {
  return std::sqrt(BruteForce(a, b, 0, 0, band));
}

Vec Random(std::mt19937_64& rng, std::size_t n) {
  std::normal_distribution<double> g;
  Vec v(n);
  for (double& x : v) x = g(rng);
  return v;
}

}  // namespace

TEST_CASE("identical vectors have zero distance") {
  const Vec a = {0.1, -0.3, 0.7, 0.2};
  CHECK(DtwDistance(a, a) == 0.0);
}

TEST_CASE("constant offset pair accumulates over the diagonal") {
  const Vec a = {0.0, 0.0};
  const Vec b = {1.0, 1.0};
  CHECK(Oracle(a, b) == std::sqrt(2.0));
  CHECK(DtwDistance(a, b) == std::sqrt(2.0));
}

TEST_CASE("a shifted peak is closer under dtw than euclidean") {
  const Vec a = {0.0, 0.0, 1.0, 0.0};
  const Vec b = {0.0, 1.0, 0.0, 0.0};
  const double euclid = EuclideanDistance(a, b);
  CHECK(euclid == std::sqrt(2.0));
  CHECK(Oracle(a, b) < euclid);
  CHECK_THAT(DtwDistance(a, b), WithinAbs(Oracle(a, b), 1e-15));
}

TEST_CASE("dtw matches exhaustive path enumeration") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 200; ++trial) {
    const auto a = Random(rng, 1 + trial % 6);
    const auto b = Random(rng, 1 + (trial / 6) % 6);
    CHECK_THAT(DtwDistance(a, b), WithinRel(Oracle(a, b), 1e-12));
  }
}

TEST_CASE("banded dtw matches banded enumeration") {
  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 100; ++trial) {
    const auto a = Random(rng, 6);
    const auto b = Random(rng, 6);
    for (std::size_t band : {0, 1, 2}) {
      CHECK_THAT(DtwDistance(a, b, band), WithinRel(Oracle(a, b, static_cast<long>(band)), 1e-12));
    }
    CHECK(DtwDistance(a, b, 0) == EuclideanDistance(a, b));
  }
}

TEST_CASE("returned path realizes the optimal cost") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 50; ++trial) {
    const auto a = Random(rng, 7);
    const auto b = Random(rng, 5);
    const auto path = DtwPath(a, b);
    REQUIRE(path.front() == std::pair<std::size_t, std::size_t>{0, 0});
    REQUIRE(path.back() == std::pair<std::size_t, std::size_t>{6, 4});
    double cost = 0.0;
    for (std::size_t s = 0; s < path.size(); ++s) {
      if (s > 0) {
        const auto di = path[s].first - path[s - 1].first;
        const auto dj = path[s].second - path[s - 1].second;
        CHECK(di <= 1);
        CHECK(dj <= 1);
        CHECK(di + dj >= 1);
      }
      const double d = a[path[s].first] - b[path[s].second];
      cost += d * d;
    }
    CHECK_THAT(cost, WithinRel(DtwCost(a, b), 1e-12));
  }
}

TEST_CASE("dtw axioms over random vectors") {
  std::mt19937_64 rng(24);
  for (int trial = 0; trial < 300; ++trial) {
    const auto a = Random(rng, 32);
    const auto b = Random(rng, 32);
    const double ab = DtwDistance(a, b);
    CHECK(ab == DtwDistance(b, a));
    CHECK(ab >= 0.0);
    CHECK(DtwDistance(a, a) == 0.0);
    CHECK(ab <= EuclideanDistance(a, b));
  }
}

TEST_CASE("empty input and metric names") {
  const Vec a = {1.0};
  const Vec e;
  CHECK(CodeOf([&] { DtwDistance(a, e); }) == ErrorCode::kEmptyInput);
  CHECK(CodeOf([&] { EuclideanDistance(a, Vec{1.0, 2.0}); }) == ErrorCode::kLengthMismatch);
  CHECK(ParseMetric(MetricName(Metric::kDtw)) == Metric::kDtw);
  CHECK(ParseMetric("euclidean") == Metric::kEuclidean);
  CHECK(CodeOf([] { ParseMetric("cosine"); }) == ErrorCode::kInvalidArgument);
  CHECK(MetricCost(Metric::kEuclidean, a, a) == 0.0);
}
