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

// Fundamental-frequency contours: loading, validation, mean-level
// normalization and decimation.

#ifndef PASTA_PITCH_H_
#define PASTA_PITCH_H_

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace pasta::pitch {

inline constexpr double kDefaultFrameStep = 0.01;
inline constexpr double kDefaultF0Min = 50.0;
inline constexpr double kDefaultF0Max = 600.0;
// Maximum deviation of any frame delta from the contour step.
inline constexpr double kStepTolerance = 1e-6;

struct F0Frame {
  double time = 0.0;
  double f0 = 0.0;  // 0 when unvoiced
  bool voiced = false;

  bool operator==(const F0Frame&) const = default;
};

// Uniformly sampled pitch track. Construction validates ordering and step
// uniformity; frames outside [f0_min, f0_max] are demoted to unvoiced.
class F0Contour {
 public:
  F0Contour(std::vector<F0Frame> frames, double frame_step,
            double f0_min = kDefaultF0Min, double f0_max = kDefaultF0Max);

  std::span<const F0Frame> frames() const { return frames_; }
  double frame_step() const { return frame_step_; }
  double f0_min() const { return f0_min_; }
  double f0_max() const { return f0_max_; }

  std::size_t size() const { return frames_.size(); }
  std::size_t voiced_count() const;
  double start_time() const { return frames_.front().time; }
  double end_time() const { return frames_.back().time; }

  bool operator==(const F0Contour&) const = default;

 private:
  std::vector<F0Frame> frames_;
  double frame_step_;
  double f0_min_;
  double f0_max_;
};

enum class F0Format { kCsv, kTwoColumnText };

struct LoadOptions {
  // When set, every frame delta must match it; otherwise the step is
  // inferred from the first delta (kDefaultFrameStep for 1-frame files).
  std::optional<double> frame_step;
  double f0_min = kDefaultF0Min;
  double f0_max = kDefaultF0Max;
};

F0Contour ParseF0(const std::string& text, F0Format format,
                  const LoadOptions& options = {});
F0Contour LoadF0(const std::filesystem::path& path, F0Format format,
                 const LoadOptions& options = {});
// Picks the format from the extension: ".csv" is CSV, anything else is
// whitespace-separated text.
F0Format GuessFormat(const std::filesystem::path& path);

// Writes `time_s,f0_hz,voiced` CSV with round-trip precision.
std::string SerializeF0Csv(const F0Contour& contour);

enum class NormMode { kPhrase, kSpeaker };

struct NormalizationScope {
  NormMode mode = NormMode::kPhrase;
  double mean_f0 = 1.0;
};

std::string NormModeName(NormMode mode);
NormMode ParseNormMode(const std::string& name);

// Arithmetic mean over voiced frames of all contours.
double ComputeMeanF0(std::span<const F0Contour> contours);

// Divides voiced values (and the contour bounds) by scope.mean_f0.
F0Contour NormalizeF0(const F0Contour& contour, const NormalizationScope& scope);

// Block moving average of `factor` frames restricted to the voiced run of the
// kept frame, then keeps every factor-th frame.
F0Contour ResampleWithLowpass(const F0Contour& contour, int factor);

}  // namespace pasta::pitch

#endif  // PASTA_PITCH_H_
