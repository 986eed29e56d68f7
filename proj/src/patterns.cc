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

#include "pasta/patterns.h"

#include <cmath>
#include <sstream>
#include <utility>

#include <json.hpp>

#include "pasta/error.h"
#include "text_util.h"

namespace pasta::patterns {

PatternMatrix::PatternMatrix(std::size_t n_f0, std::vector<WordPattern> rows)
    : n_f0_(n_f0) {
  for (auto& r : rows) Append(std::move(r));
}

void PatternMatrix::Append(WordPattern row) {
  if (row.values.size() != n_f0_) {
    throw Error(ErrorCode::kLengthMismatch,
                "pattern has " + std::to_string(row.values.size()) +
                    " values, matrix expects " + std::to_string(n_f0_));
  }
  rows_.push_back(std::move(row));
}

void PatternMatrix::Append(const std::vector<WordPattern>& rows) {
  for (const auto& r : rows) Append(r);
}

std::vector<WordPattern> ExtractPatterns(const momel::MomelSpline& spline,
                                         const align::UtteranceAlignment& alignment,
                                         const pitch::NormalizationScope& scope,
                                         std::size_t n_f0,
                                         const std::string& utterance_id) {
  if (n_f0 < kMinNF0) {
    throw Error(ErrorCode::kInvalidArgument,
                "n_f0 must be at least " + std::to_string(kMinNF0));
  }
  if (!(scope.mean_f0 > 0.0) || !std::isfinite(scope.mean_f0)) {
    throw Error(ErrorCode::kZeroMean, "normalization mean must be positive");
  }
  std::vector<WordPattern> out;
  out.reserve(alignment.words.size());
  for (std::size_t i = 0; i < alignment.words.size(); ++i) {
    const auto& word = alignment.words[i];
    if (word.start < spline.domain_start() - kTimeBaseSlack ||
        word.end > spline.domain_end() + kTimeBaseSlack) {
      throw Error(ErrorCode::kTimeBaseMismatch,
                  "word '" + word.text + "' lies outside the spline domain");
    }
    std::vector<double> samples =
        spline.Slice(word.start, word.end).SampleUniform(n_f0);
    double level = 0.0;
    for (double& s : samples) {
      s /= scope.mean_f0;
      level += s;
    }
    level /= static_cast<double>(n_f0);
    for (double& s : samples) s -= level;
    out.push_back(WordPattern{std::move(samples), level, i, utterance_id});
  }
  return out;
}

std::string MatrixToJsonl(const PatternMatrix& matrix) {
  std::string out;
  for (const auto& row : matrix.rows()) {
    nlohmann::ordered_json j;
    j["utt"] = row.utterance_id;
    j["i"] = row.word_index;
    j["level"] = row.level;
    j["values"] = row.values;
    out += j.dump();
    out += '\n';
  }
  return out;
}

PatternMatrix MatrixFromJsonl(const std::string& jsonl) {
  std::istringstream in(jsonl);
  std::string line;
  std::vector<WordPattern> rows;
  std::size_t line_no = 0;
  try {
    while (std::getline(in, line)) {
      ++line_no;
      if (text::Trim(line).empty()) continue;
      const auto j = nlohmann::json::parse(line);
      WordPattern row;
      row.utterance_id = j.at("utt").get<std::string>();
      row.word_index = j.at("i").get<std::size_t>();
      row.level = j.at("level").get<double>();
      row.values = j.at("values").get<std::vector<double>>();
      rows.push_back(std::move(row));
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParseError,
                "pattern line " + std::to_string(line_no) + ": " + e.what());
  }
  const std::size_t n = rows.empty() ? kDefaultNF0 : rows.front().values.size();
  return PatternMatrix(n, std::move(rows));
}

}  // namespace pasta::patterns
