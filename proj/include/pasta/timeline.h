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

// Pseudo-time for text without audio: every phone lasts mean_phone_s and
// words follow each other without pauses.

#ifndef PASTA_TIMELINE_H_
#define PASTA_TIMELINE_H_

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "pasta/alignment.h"

namespace pasta::intsint {

inline constexpr double kDefaultMeanPhone = 0.08;

// One word of a text plan. Stress is given either as a vowel ordinal
// (`stress_vowel`, 0-based among the word's vowels), as a '+' placed before
// the stressed vowel in `text`, or as a phone index.
struct PlanWord {
  std::string text;
  std::optional<std::size_t> phone_count;
  std::optional<std::size_t> stress_vowel;
  std::optional<std::size_t> stress_phone;
  // Vowel flag per phone; derived from the letters when empty.
  std::vector<bool> vowel_phones;
};

struct TimelineWord {
  std::string text;
  std::size_t phone_count = 0;
  double start = 0.0;
  double end = 0.0;
  std::optional<double> stressed_vowel_time;
  std::optional<double> pre_stress_vowel_time;
  std::optional<double> post_stress_vowel_time;

  double midpoint() const { return 0.5 * (start + end); }
};

class PseudoTimeline {
 public:
  PseudoTimeline(const std::vector<PlanWord>& words,
                 double mean_phone_s = kDefaultMeanPhone);

  double mean_phone_s() const { return mean_phone_s_; }
  const std::vector<TimelineWord>& words() const { return words_; }
  std::size_t size() const { return words_.size(); }
  double start() const { return words_.front().start; }
  double end() const { return words_.back().end; }

  // Word intervals as an alignment over pseudo-time.
  align::UtteranceAlignment ToAlignment() const;

 private:
  double mean_phone_s_;
  std::vector<TimelineWord> words_;
};

// Strips the '+' stress marker and resolves the stress, phone count and
// vowel layout of a plan word.
PlanWord ResolvePlanWord(PlanWord word);

// Plan words from an aligned utterance: phone counts and vowels come from the
// phone tier when present, stress from stressed_vowel_time.
std::vector<PlanWord> PlanFromAlignment(const align::UtteranceAlignment& alignment);

}  // namespace pasta::intsint

#endif  // PASTA_TIMELINE_H_
