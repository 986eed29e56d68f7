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

#include "pasta/clustering.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <utility>

#include <json.hpp>

#include "pasta/error.h"

namespace pasta::cluster {
namespace {

// Uniform double in [0, 1) from the top 53 bits. Unlike
// std::uniform_real_distribution this is identical on every standard library.
double Uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

void CenterInPlace(std::vector<double>& v) {
  if (v.empty()) return;
  const double mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
  for (double& x : v) x -= mean;
}

struct Assignment {
  std::vector<std::size_t> labels;
  std::vector<double> costs;
  double inertia = 0.0;
};

std::size_t Nearest(std::span<const std::vector<double>> centroids,
                    std::span<const double> x, Metric metric, Band band, double* cost) {
  std::size_t best = 0;
  double best_cost = MetricCost(metric, centroids[0], x, band);
  for (std::size_t c = 1; c < centroids.size(); ++c) {
    const double d = MetricCost(metric, centroids[c], x, band);
    if (d < best_cost) {
      best_cost = d;
      best = c;
    }
  }
  if (cost) *cost = best_cost;
  return best;
}

Assignment AssignAll(std::span<const std::vector<double>> points,
                     std::span<const std::vector<double>> centroids, Metric metric,
                     Band band) {
  Assignment a;
  a.labels.resize(points.size());
  a.costs.resize(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    a.labels[i] = Nearest(centroids, points[i], metric, band, &a.costs[i]);
    a.inertia += a.costs[i];
  }
  return a;
}

// k-means++: first centre uniform, then proportional to the squared
// distance to the nearest chosen centre.
std::vector<std::vector<double>> SeedPlusPlus(std::span<const std::vector<double>> points,
                                              const KMeansOptions& opt,
                                              std::mt19937_64& rng) {
  const std::size_t n = points.size();
  std::vector<std::size_t> chosen;
  std::size_t first = static_cast<std::size_t>(Uniform01(rng) * static_cast<double>(n));
  chosen.push_back(std::min(first, n - 1));
  std::vector<double> d2(n);
  for (std::size_t i = 0; i < n; ++i) {
    d2[i] = MetricCost(opt.metric, points[chosen[0]], points[i], opt.band);
  }
  while (chosen.size() < opt.k) {
    const double total = std::accumulate(d2.begin(), d2.end(), 0.0);
    std::size_t pick = n;
    if (total > 0.0) {
      const double r = Uniform01(rng) * total;
      double acc = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        if (d2[i] <= 0.0) continue;
        acc += d2[i];
        pick = i;
        if (acc > r) break;
      }
    } else {
      // Every point coincides with a centre; take the lowest unused index.
      for (std::size_t i = 0; i < n && pick == n; ++i) {
        if (std::find(chosen.begin(), chosen.end(), i) == chosen.end()) pick = i;
      }
    }
    chosen.push_back(pick);
    for (std::size_t i = 0; i < n; ++i) {
      d2[i] = std::min(d2[i], MetricCost(opt.metric, points[pick], points[i], opt.band));
    }
  }
  std::vector<std::vector<double>> centroids;
  for (std::size_t idx : chosen) {
    centroids.push_back(points[idx]);
    if (opt.zero_mean) CenterInPlace(centroids.back());
  }
  return centroids;
}

std::vector<std::vector<double>> UpdateCentroids(
    std::span<const std::vector<double>> points,
    const std::vector<std::vector<double>>& centroids, const Assignment& assignment,
    const KMeansOptions& opt) {
  const std::size_t k = centroids.size();
  std::vector<std::vector<std::vector<double>>> members(k);
  for (std::size_t i = 0; i < points.size(); ++i) {
    members[assignment.labels[i]].push_back(points[i]);
  }
  std::vector<std::vector<double>> next(k);
  std::set<std::size_t> reseeded;
  for (std::size_t c = 0; c < k; ++c) {
    if (members[c].empty()) {
      // Empty cluster: restart from the point worst served by its centroid.
      std::size_t far = points.size();
      for (std::size_t i = 0; i < points.size(); ++i) {
        if (reseeded.count(i)) continue;
        if (far == points.size() || assignment.costs[i] > assignment.costs[far]) far = i;
      }
      if (far == points.size()) {
        next[c] = centroids[c];
      } else {
        reseeded.insert(far);
        next[c] = points[far];
        if (opt.zero_mean) CenterInPlace(next[c]);
      }
      continue;
    }
    if (opt.metric == Metric::kDtw) {
      next[c] = DbaBarycenter(members[c], centroids[c], opt.dba_iter, opt.zero_mean, opt.band);
    } else {
      std::vector<double> mean(centroids[c].size(), 0.0);
      for (const auto& m : members[c]) {
        for (std::size_t j = 0; j < mean.size(); ++j) mean[j] += m[j];
      }
      for (double& x : mean) x /= static_cast<double>(members[c].size());
      if (opt.zero_mean) CenterInPlace(mean);
      next[c] = std::move(mean);
    }
  }
  return next;
}

}  // namespace

std::vector<double> DbaBarycenter(std::span<const std::vector<double>> members,
                                  std::vector<double> initial, std::size_t iterations,
                                  bool zero_mean, Band band) {
  if (members.empty() || initial.empty()) {
    throw Error(ErrorCode::kEmptyInput, "DBA needs members and an initial centroid");
  }
  std::vector<double> c = std::move(initial);
  const std::size_t len = c.size();
  for (std::size_t it = 0; it < iterations; ++it) {
    std::vector<double> sum(len, 0.0);
    std::vector<double> count(len, 0.0);
    for (const auto& x : members) {
      for (const auto& [l, m] : DtwPath(c, x, band)) {
        sum[l] += x[m];
        count[l] += 1.0;
      }
    }
    std::vector<double> next(len);
    for (std::size_t l = 0; l < len; ++l) next[l] = sum[l] / count[l];
    if (zero_mean) {
      // Minimizer of the path-weighted squared error on the zero-mean
      // subspace: shift each coordinate by mu / count.
      double num = 0.0;
      double den = 0.0;
      for (std::size_t l = 0; l < len; ++l) {
        num += next[l];
        den += 1.0 / count[l];
      }
      const double mu = num / den;
      for (std::size_t l = 0; l < len; ++l) next[l] -= mu / count[l];
    }
    if (next == c) break;
    c = std::move(next);
  }
  return c;
}

KMeansResult KMeans(std::span<const std::vector<double>> points,
                    const KMeansOptions& opt, std::mt19937_64& rng) {
  if (points.empty()) throw Error(ErrorCode::kEmptyMatrix, "no points to cluster");
  if (opt.k == 0) throw Error(ErrorCode::kInvalidArgument, "k must be positive");
  if (opt.k > points.size()) {
    throw Error(ErrorCode::kKTooLarge, "k = " + std::to_string(opt.k) + " exceeds " +
                                           std::to_string(points.size()) + " points");
  }

  KMeansResult result;
  result.centroids = SeedPlusPlus(points, opt, rng);
  Assignment current = AssignAll(points, result.centroids, opt.metric, opt.band);
  result.inertia.push_back(current.inertia);

  for (std::size_t it = 0; it < opt.max_iter; ++it) {
    auto next_centroids = UpdateCentroids(points, result.centroids, current, opt);
    Assignment next = AssignAll(points, next_centroids, opt.metric, opt.band);
    // Exact arithmetic never increases inertia here; keep the previous state
    // if rounding says otherwise so the trace stays monotone.
    if (next.inertia > current.inertia) break;
    const bool same_labels = next.labels == current.labels;
    const bool stalled = current.inertia - next.inertia <= 1e-12 * current.inertia;
    result.centroids = std::move(next_centroids);
    current = std::move(next);
    result.inertia.push_back(current.inertia);
    if (same_labels && stalled) break;
  }
  result.labels = std::move(current.labels);
  return result;
}

TrainResult Train(const patterns::PatternMatrix& matrix, const TrainOptions& options) {
  if (matrix.empty()) throw Error(ErrorCode::kEmptyMatrix, "pattern matrix is empty");
  if (matrix.n_f0() < patterns::kMinModelNF0) {
    throw Error(ErrorCode::kInvalidArgument, "n_f0 below the model minimum");
  }
  if (options.k == 0 || options.s == 0) {
    throw Error(ErrorCode::kInvalidArgument, "k and s must be positive");
  }
  if (options.k > matrix.size()) {
    throw Error(ErrorCode::kKTooLarge, "k = " + std::to_string(options.k) +
                                           " exceeds the " + std::to_string(matrix.size()) +
                                           " patterns");
  }
  std::vector<std::vector<double>> shapes;
  std::vector<std::vector<double>> levels;
  std::set<double> distinct_levels;
  for (const auto& row : matrix.rows()) {
    shapes.push_back(row.values);
    levels.push_back({row.level});
    distinct_levels.insert(row.level);
  }
  if (options.s > distinct_levels.size()) {
    throw Error(ErrorCode::kKTooLarge, "s = " + std::to_string(options.s) + " exceeds the " +
                                           std::to_string(distinct_levels.size()) +
                                           " distinct levels");
  }

  std::mt19937_64 rng(options.seed);
  KMeansOptions pattern_opt;
  pattern_opt.k = options.k;
  pattern_opt.metric = options.metric;
  pattern_opt.band = options.band;
  pattern_opt.max_iter = options.max_iter;
  pattern_opt.dba_iter = options.dba_iter;
  pattern_opt.zero_mean = true;
  KMeansResult patterns = KMeans(shapes, pattern_opt, rng);

  KMeansOptions state_opt;
  state_opt.k = options.s;
  state_opt.metric = Metric::kEuclidean;
  state_opt.max_iter = options.max_iter;
  KMeansResult states = KMeans(levels, state_opt, rng);

  // States are reported in ascending order of their centroid.
  std::vector<std::size_t> order(options.s);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return states.centroids[a][0] < states.centroids[b][0];
  });
  std::vector<std::size_t> rank(options.s);
  for (std::size_t r = 0; r < order.size(); ++r) rank[order[r]] = r;

  TrainResult out;
  out.model.barycenters = std::move(patterns.centroids);
  for (std::size_t idx : order) out.model.state_centroids.push_back(states.centroids[idx][0]);
  out.model.metric = options.metric;
  out.model.n_f0 = matrix.n_f0();
  out.model.seed = options.seed;
  out.model.norm_mode = options.norm_mode;
  out.model.band = options.band;
  out.pattern_labels = std::move(patterns.labels);
  for (std::size_t l : states.labels) out.state_labels.push_back(rank[l]);
  out.pattern_inertia = std::move(patterns.inertia);
  out.state_inertia = std::move(states.inertia);
  out.model.Validate();
  return out;
}

void ClusterModel::Validate() const {
  if (barycenters.empty()) throw Error(ErrorCode::kInvalidArgument, "model has no barycenters");
  if (state_centroids.empty()) throw Error(ErrorCode::kInvalidArgument, "model has no states");
  if (n_f0 < patterns::kMinModelNF0) {
    throw Error(ErrorCode::kInvalidArgument, "model n_f0 below minimum");
  }
  for (std::size_t i = 0; i < barycenters.size(); ++i) {
    const auto& b = barycenters[i];
    if (b.size() != n_f0) {
      throw Error(ErrorCode::kInvalidArgument,
                  "barycenter " + std::to_string(i) + " has the wrong length");
    }
    const double mean = std::accumulate(b.begin(), b.end(), 0.0) / static_cast<double>(b.size());
    if (!(std::abs(mean) <= 1e-6)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "barycenter " + std::to_string(i) + " is not zero-mean");
    }
  }
  for (std::size_t i = 0; i < state_centroids.size(); ++i) {
    if (!std::isfinite(state_centroids[i]) ||
        (i > 0 && !(state_centroids[i] > state_centroids[i - 1]))) {
      throw Error(ErrorCode::kInvalidArgument, "state centroids must strictly ascend");
    }
  }
}

std::size_t NearestPattern(const ClusterModel& model, std::span<const double> values) {
  if (values.size() != model.n_f0) {
    throw Error(ErrorCode::kLengthMismatch,
                "pattern length " + std::to_string(values.size()) + " != model n_f0 " +
                    std::to_string(model.n_f0));
  }
  return Nearest(model.barycenters, values, model.metric, model.band, nullptr);
}

std::size_t NearestState(const ClusterModel& model, double level) {
  std::size_t best = 0;
  double best_d = std::abs(level - model.state_centroids[0]);
  for (std::size_t i = 1; i < model.state_centroids.size(); ++i) {
    const double d = std::abs(level - model.state_centroids[i]);
    if (d < best_d) {
      best_d = d;
      best = i;
    }
  }
  return best;
}

PastaLabel Assign(const ClusterModel& model, const patterns::WordPattern& pattern) {
  return {NearestPattern(model, pattern.values), NearestState(model, pattern.level)};
}

std::string ModelToJson(const ClusterModel& model) {
  nlohmann::ordered_json j;
  j["version"] = kModelVersion;
  j["metric"] = MetricName(model.metric);
  j["n_f0"] = model.n_f0;
  j["k"] = model.k();
  j["s"] = model.s();
  j["seed"] = model.seed;
  if (model.band) j["band"] = *model.band;
  j["barycenters"] = model.barycenters;
  j["state_centroids"] = model.state_centroids;
  j["norm_mode"] = pitch::NormModeName(model.norm_mode);
  return j.dump() + "\n";
}

ClusterModel ModelFromJson(const std::string& text) {
  ClusterModel m;
  try {
    const auto j = nlohmann::json::parse(text);
    const int version = j.at("version").get<int>();
    if (version != kModelVersion) {
      throw Error(ErrorCode::kParseError, "unsupported model version " + std::to_string(version));
    }
    m.metric = ParseMetric(j.at("metric").get<std::string>());
    m.n_f0 = j.at("n_f0").get<std::size_t>();
    m.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("band") && !j.at("band").is_null()) m.band = j.at("band").get<std::size_t>();
    m.barycenters = j.at("barycenters").get<std::vector<std::vector<double>>>();
    m.state_centroids = j.at("state_centroids").get<std::vector<double>>();
    m.norm_mode = pitch::ParseNormMode(j.at("norm_mode").get<std::string>());
    if (j.at("k").get<std::size_t>() != m.k() || j.at("s").get<std::size_t>() != m.s()) {
      throw Error(ErrorCode::kParseError, "k/s disagree with the stored centroids");
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParseError, std::string("model JSON: ") + e.what());
  }
  m.Validate();
  return m;
}

}  // namespace pasta::cluster
