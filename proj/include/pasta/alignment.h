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

// Word (and optional phone) alignments from external forced aligners:
// a minimal word-level JSON and Praat TextGrid interval tiers.

#ifndef PASTA_ALIGNMENT_H_
#define PASTA_ALIGNMENT_H_

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace pasta::align {

struct PhoneInterval {
  std::string label;
  double start = 0.0;
  double end = 0.0;

  bool operator==(const PhoneInterval&) const = default;
};

struct WordInterval {
  std::string text;
  double start = 0.0;
  double end = 0.0;
  std::vector<PhoneInterval> phones;  // empty when the aligner gave none
  std::optional<double> stressed_vowel_time;

  double duration() const { return end - start; }
  bool operator==(const WordInterval&) const = default;
};

struct UtteranceAlignment {
  std::vector<WordInterval> words;
  std::string text;
};

enum class AlignmentFormat { kWordJson, kTextGrid };

// Drops punctuation-only words, then checks every invariant: positive word
// durations, time order without overlap, phones tiling their word, stress
// inside its word. Throws EmptyAlignment, OverlappingWords or ParseError.
UtteranceAlignment Validate(UtteranceAlignment alignment);

UtteranceAlignment ParseWordJson(const std::string& json);
UtteranceAlignment ParseTextGrid(const std::string& contents);
UtteranceAlignment ParseAlignment(const std::string& contents, AlignmentFormat format);
UtteranceAlignment LoadAlignment(const std::filesystem::path& path,
                                 AlignmentFormat format);
// ".json" selects word JSON, everything else TextGrid.
AlignmentFormat GuessAlignmentFormat(const std::filesystem::path& path);

std::string WordJsonFromAlignment(const UtteranceAlignment& alignment);

// Raw TextGrid content, before any word-level interpretation.
struct TextGridInterval {
  double xmin = 0.0;
  double xmax = 0.0;
  std::string text;
};

struct TextGridPoint {
  double time = 0.0;
  std::string mark;
};

struct TextGridTier {
  std::string tier_class;  // "IntervalTier" or "TextTier"
  std::string name;
  double xmin = 0.0;
  double xmax = 0.0;
  std::vector<TextGridInterval> intervals;
  std::vector<TextGridPoint> points;
};

struct TextGrid {
  double xmin = 0.0;
  double xmax = 0.0;
  std::vector<TextGridTier> tiers;
};

// Reads both the long and the short Praat text formats (UTF-8 or UTF-16
// with byte-order mark).
TextGrid ReadTextGrid(const std::string& contents);

}  // namespace pasta::align

#endif  // PASTA_ALIGNMENT_H_
