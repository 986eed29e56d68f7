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

// Pattern/state quantization.
//
// Pattern shapes are clustered with k-means under DTW (centroids by DTW
// barycenter averaging) or the Euclidean metric; word levels are clustered
// with 1-D Euclidean k-means. Both use k-means++ seeding from one
// std::mt19937_64 stream, so a seed fully determines the model.

#ifndef PASTA_CLUSTERING_H_
#define PASTA_CLUSTERING_H_

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "pasta/dtw.h"
#include "pasta/patterns.h"
#include "pasta/pitch.h"

namespace pasta::cluster {

inline constexpr std::size_t kDefaultK = 24;
inline constexpr std::size_t kDefaultS = 5;
inline constexpr std::size_t kDefaultMaxIter = 100;
inline constexpr std::size_t kDefaultDbaIter = 10;
inline constexpr int kModelVersion = 1;

struct ClusterModel {
  std::vector<std::vector<double>> barycenters;
  std::vector<double> state_centroids;  // strictly ascending
  Metric metric = Metric::kDtw;
  std::size_t n_f0 = patterns::kDefaultNF0;
  std::uint64_t seed = 0;
  pitch::NormMode norm_mode = pitch::NormMode::kPhrase;
  Band band;

  std::size_t k() const { return barycenters.size(); }
  std::size_t s() const { return state_centroids.size(); }

  // Throws InvalidArgument when an invariant does not hold.
  void Validate() const;

  bool operator==(const ClusterModel&) const = default;
};

struct PastaLabel {
  std::size_t pattern_id = 0;
  std::size_t state_id = 0;

  bool operator==(const PastaLabel&) const = default;
};

struct TrainOptions {
  std::size_t k = kDefaultK;
  std::size_t s = kDefaultS;
  Metric metric = Metric::kDtw;
  std::uint64_t seed = 0;
  std::size_t max_iter = kDefaultMaxIter;
  std::size_t dba_iter = kDefaultDbaIter;
  Band band;
  pitch::NormMode norm_mode = pitch::NormMode::kPhrase;  // recorded in the model
};

struct TrainResult {
  ClusterModel model;
  // Final-iteration assignment of every matrix row.
  std::vector<std::size_t> pattern_labels;
  std::vector<std::size_t> state_labels;
  // Inertia (sum of squared metric distances) after each outer iteration,
  // starting with the seeded centroids.
  std::vector<double> pattern_inertia;
  std::vector<double> state_inertia;
};

TrainResult Train(const patterns::PatternMatrix& matrix, const TrainOptions& options);

// Index of the nearest centroid; ties go to the lower index.
std::size_t NearestPattern(const ClusterModel& model, std::span<const double> values);
std::size_t NearestState(const ClusterModel& model, double level);
PastaLabel Assign(const ClusterModel& model, const patterns::WordPattern& pattern);

// Lower-level k-means shared by pattern and state clustering. With
// `zero_mean` every centroid is kept on the zero-mean subspace.
struct KMeansOptions {
  std::size_t k = 2;
  Metric metric = Metric::kEuclidean;
  Band band;
  std::size_t max_iter = kDefaultMaxIter;
  std::size_t dba_iter = kDefaultDbaIter;
  bool zero_mean = false;
};

struct KMeansResult {
  std::vector<std::vector<double>> centroids;
  std::vector<std::size_t> labels;
  std::vector<double> inertia;
};

KMeansResult KMeans(std::span<const std::vector<double>> points,
                    const KMeansOptions& options, std::mt19937_64& rng);

// DTW barycenter averaging of `members` starting from `initial`.
std::vector<double> DbaBarycenter(std::span<const std::vector<double>> members,
                                  std::vector<double> initial, std::size_t iterations,
                                  bool zero_mean, Band band = {});

std::string ModelToJson(const ClusterModel& model);
ClusterModel ModelFromJson(const std::string& json);

}  // namespace pasta::cluster

#endif  // PASTA_CLUSTERING_H_
