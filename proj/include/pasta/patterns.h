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

// Per-word pattern/state decomposition of a stylized contour.
//
// Each word's spline slice is sampled at a fixed number of instants and
// divided by the normalization mean. The mean of those samples is the word's
// level (its state feature); the samples minus the level are its pattern.

#ifndef PASTA_PATTERNS_H_
#define PASTA_PATTERNS_H_

#include <cstddef>
#include <string>
#include <vector>

#include "pasta/alignment.h"
#include "pasta/momel.h"
#include "pasta/pitch.h"

namespace pasta::patterns {

inline constexpr std::size_t kDefaultNF0 = 32;
// Smallest grid that keeps both word boundaries. Trained models require
// kMinModelNF0.
inline constexpr std::size_t kMinNF0 = 2;
inline constexpr std::size_t kMinModelNF0 = 4;
// Words may overhang the spline domain by this much before it counts as a
// different time base.
inline constexpr double kTimeBaseSlack = 0.05;

struct WordPattern {
  std::vector<double> values;  // mean-centered, length n_f0
  double level = 0.0;
  std::size_t word_index = 0;
  std::string utterance_id;

  bool operator==(const WordPattern&) const = default;
};

// Rows of one corpus; every row has the same n_f0.
class PatternMatrix {
 public:
  explicit PatternMatrix(std::size_t n_f0) : n_f0_(n_f0) {}
  PatternMatrix(std::size_t n_f0, std::vector<WordPattern> rows);

  void Append(WordPattern row);
  void Append(const std::vector<WordPattern>& rows);

  std::size_t n_f0() const { return n_f0_; }
  std::size_t size() const { return rows_.size(); }
  bool empty() const { return rows_.empty(); }
  const std::vector<WordPattern>& rows() const { return rows_; }
  const WordPattern& operator[](std::size_t i) const { return rows_[i]; }

 private:
  std::size_t n_f0_;
  std::vector<WordPattern> rows_;
};

std::vector<WordPattern> ExtractPatterns(const momel::MomelSpline& spline,
                                         const align::UtteranceAlignment& alignment,
                                         const pitch::NormalizationScope& scope,
                                         std::size_t n_f0,
                                         const std::string& utterance_id = {});

// JSON lines, one row per line: {"utt": id, "i": index, "level": x, "values": [...]}.
std::string MatrixToJsonl(const PatternMatrix& matrix);
PatternMatrix MatrixFromJsonl(const std::string& jsonl);

}  // namespace pasta::patterns

#endif  // PASTA_PATTERNS_H_
