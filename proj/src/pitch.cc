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

#include "pasta/pitch.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <utility>

#include "pasta/error.h"
#include "text_util.h"

namespace pasta::pitch {

F0Contour::F0Contour(std::vector<F0Frame> frames, double frame_step,
                     double f0_min, double f0_max)
    : frames_(std::move(frames)),
      frame_step_(frame_step),
      f0_min_(f0_min),
      f0_max_(f0_max) {
  if (frames_.empty()) throw Error(ErrorCode::kEmptyContour, "no frames");
  if (!(frame_step_ > 0.0) || !std::isfinite(frame_step_)) {
    throw Error(ErrorCode::kInvalidArgument, "frame step must be positive");
  }
  if (!(f0_min_ > 0.0) || !(f0_max_ >= f0_min_)) {
    throw Error(ErrorCode::kInvalidArgument, "invalid f0 bounds");
  }
  for (std::size_t i = 0; i < frames_.size(); ++i) {
    F0Frame& frame = frames_[i];
    if (!std::isfinite(frame.time) || frame.time < 0.0 ||
        !std::isfinite(frame.f0)) {
      throw Error(ErrorCode::kMalformedRow,
                  "frame " + std::to_string(i) + " has invalid time or f0");
    }
    if (i > 0) {
      const double delta = frame.time - frames_[i - 1].time;
      if (std::abs(delta - frame_step_) > kStepTolerance) {
        throw Error(ErrorCode::kNonUniformStep,
                    "delta " + std::to_string(delta) + " at frame " +
                        std::to_string(i) + " deviates from step " +
                        std::to_string(frame_step_));
      }
    }
    if (frame.voiced &&
        (frame.f0 <= 0.0 || frame.f0 < f0_min_ || frame.f0 > f0_max_)) {
      frame.voiced = false;
    }
    if (!frame.voiced) frame.f0 = 0.0;
  }
}

std::size_t F0Contour::voiced_count() const {
  return static_cast<std::size_t>(std::count_if(
      frames_.begin(), frames_.end(), [](const F0Frame& f) { return f.voiced; }));
}

namespace {

struct Row {
  double time;
  double f0;
  bool voiced;
};

Row ParseRow(const std::vector<std::string_view>& fields, std::size_t line_no) {
  if (fields.size() != 2 && fields.size() != 3) {
    throw Error(ErrorCode::kMalformedRow,
                "line " + std::to_string(line_no) + ": expected 2 or 3 columns, got " +
                    std::to_string(fields.size()));
  }
  double values[3] = {0.0, 0.0, 1.0};
  for (std::size_t c = 0; c < fields.size(); ++c) {
    auto parsed = text::ParseDouble(fields[c]);
    if (!parsed) {
      throw Error(ErrorCode::kMalformedRow,
                  "line " + std::to_string(line_no) + ": non-numeric field '" +
                      std::string(fields[c]) + "'");
    }
    values[c] = *parsed;
  }
  return Row{values[0], values[1], values[1] > 0.0 && values[2] != 0.0};
}

}  // namespace

F0Contour ParseF0(const std::string& text, F0Format format,
                  const LoadOptions& options) {
  std::vector<Row> rows;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  bool first_content_line = true;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view = text::Trim(line);
    if (view.empty() || view.front() == '#') continue;
    std::vector<std::string_view> fields = format == F0Format::kCsv
                                               ? text::SplitTrimmed(view, ',')
                                               : text::SplitWhitespace(view);
    if (first_content_line) {
      first_content_line = false;
      // Optional header: the first field of a data row is always numeric.
      if (format == F0Format::kCsv && !fields.empty() &&
          !text::ParseDouble(fields[0])) {
        continue;
      }
    }
    rows.push_back(ParseRow(fields, line_no));
  }
  if (rows.empty()) throw Error(ErrorCode::kEmptyContour, "no data rows");

  double step = kDefaultFrameStep;
  if (options.frame_step) {
    step = *options.frame_step;
  } else if (rows.size() > 1) {
    step = rows[1].time - rows[0].time;
    if (!(step > 0.0)) {
      throw Error(ErrorCode::kNonUniformStep, "times are not increasing");
    }
  }

  std::vector<F0Frame> frames;
  frames.reserve(rows.size());
  for (const Row& r : rows) frames.push_back({r.time, r.f0, r.voiced});
  return F0Contour(std::move(frames), step, options.f0_min, options.f0_max);
}

F0Contour LoadF0(const std::filesystem::path& path, F0Format format,
                 const LoadOptions& options) {
  return ParseF0(text::ReadFile(path), format, options);
}

F0Format GuessFormat(const std::filesystem::path& path) {
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return ext == ".csv" ? F0Format::kCsv : F0Format::kTwoColumnText;
}

std::string SerializeF0Csv(const F0Contour& contour) {
  std::string out = "time_s,f0_hz,voiced\n";
  for (const F0Frame& f : contour.frames()) {
    out += text::FormatDouble(f.time);
    out += ',';
    out += text::FormatDouble(f.f0);
    out += f.voiced ? ",1\n" : ",0\n";
  }
  return out;
}

std::string NormModeName(NormMode mode) {
  return mode == NormMode::kPhrase ? "phrase" : "speaker";
}

NormMode ParseNormMode(const std::string& name) {
  if (name == "phrase") return NormMode::kPhrase;
  if (name == "speaker") return NormMode::kSpeaker;
  throw Error(ErrorCode::kInvalidArgument, "unknown normalization mode '" + name + "'");
}

double ComputeMeanF0(std::span<const F0Contour> contours) {
  double sum = 0.0;
  std::size_t count = 0;
  for (const F0Contour& c : contours) {
    for (const F0Frame& f : c.frames()) {
      if (!f.voiced) continue;
      sum += f.f0;
      ++count;
    }
  }
  if (count == 0) throw Error(ErrorCode::kNoVoicedFrames, "no voiced frames");
  return sum / static_cast<double>(count);
}

F0Contour NormalizeF0(const F0Contour& contour, const NormalizationScope& scope) {
  if (!(scope.mean_f0 > 0.0) || !std::isfinite(scope.mean_f0)) {
    throw Error(ErrorCode::kZeroMean, "normalization mean must be positive");
  }
  std::vector<F0Frame> frames(contour.frames().begin(), contour.frames().end());
  for (F0Frame& f : frames) {
    if (f.voiced) f.f0 /= scope.mean_f0;
  }
  return F0Contour(std::move(frames), contour.frame_step(),
                   contour.f0_min() / scope.mean_f0,
                   contour.f0_max() / scope.mean_f0);
}

F0Contour ResampleWithLowpass(const F0Contour& contour, int factor) {
  if (factor < 1) {
    throw Error(ErrorCode::kInvalidFactor, "factor must be >= 1");
  }
  if (factor == 1) return contour;
  const auto in = contour.frames();
  const std::size_t step = static_cast<std::size_t>(factor);
  std::vector<F0Frame> out;
  out.reserve((in.size() + step - 1) / step);
  for (std::size_t i = 0; i < in.size(); i += step) {
    F0Frame kept{in[i].time, 0.0, in[i].voiced};
    if (kept.voiced) {
      double sum = 0.0;
      std::size_t n = 0;
      for (std::size_t k = i; k < std::min(i + step, in.size()) && in[k].voiced; ++k) {
        sum += in[k].f0;
        ++n;
      }
      kept.f0 = sum / static_cast<double>(n);
    }
    out.push_back(kept);
  }
  return F0Contour(std::move(out), contour.frame_step() * factor,
                   contour.f0_min(), contour.f0_max());
}

}  // namespace pasta::pitch
