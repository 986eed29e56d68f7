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

#include "pasta/timeline.h"

#include <algorithm>
#include <cmath>
#include <utility>

#include "pasta/error.h"
#include "text_util.h"

namespace pasta::intsint {
namespace {

constexpr char32_t kStressMarker = U'+';

std::vector<std::size_t> VowelPhones(const PlanWord& w) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < w.vowel_phones.size(); ++i) {
    if (w.vowel_phones[i]) out.push_back(i);
  }
  return out;
}

// UTF-8 encoding of code points.
std::string EncodeUtf8(const std::u32string& s) {
  std::string out;
  for (char32_t c : s) {
    if (c < 0x80) {
      out += static_cast<char>(c);
    } else if (c < 0x800) {
      out += static_cast<char>(0xC0 | (c >> 6));
      out += static_cast<char>(0x80 | (c & 0x3F));
    } else if (c < 0x10000) {
      out += static_cast<char>(0xE0 | (c >> 12));
      out += static_cast<char>(0x80 | ((c >> 6) & 0x3F));
      out += static_cast<char>(0x80 | (c & 0x3F));
    } else {
      out += static_cast<char>(0xF0 | (c >> 18));
      out += static_cast<char>(0x80 | ((c >> 12) & 0x3F));
      out += static_cast<char>(0x80 | ((c >> 6) & 0x3F));
      out += static_cast<char>(0x80 | (c & 0x3F));
    }
  }
  return out;
}

}  // namespace

PlanWord ResolvePlanWord(PlanWord word) {
  std::u32string clean;
  std::vector<bool> letter_vowel;
  std::optional<std::size_t> marked_letter;
  bool pending_marker = false;
  for (char32_t c : text::DecodeUtf8(word.text)) {
    if (c == kStressMarker) {
      pending_marker = true;
      continue;
    }
    clean += c;
    if (text::IsPunctuation(c) || text::IsSpace(c)) continue;
    const bool vowel = text::IsVowel(c);
    if (pending_marker && vowel && !marked_letter) marked_letter = letter_vowel.size();
    if (vowel) pending_marker = false;
    letter_vowel.push_back(vowel);
  }
  word.text = EncodeUtf8(clean);

  if (word.vowel_phones.empty()) {
    if (letter_vowel.empty() && !word.phone_count) {
      throw Error(ErrorCode::kInvalidArgument, "plan word '" + word.text + "' has no letters");
    }
    const std::size_t letters = letter_vowel.size();
    const std::size_t phones = word.phone_count.value_or(letters);
    if (phones == 0) {
      throw Error(ErrorCode::kInvalidArgument, "plan word '" + word.text + "' has no phones");
    }
    word.vowel_phones.assign(phones, false);
    // With an explicit phone count the letters are spread proportionally.
    for (std::size_t i = 0; i < letters; ++i) {
      if (letter_vowel[i]) word.vowel_phones[i * phones / letters] = true;
    }
    if (marked_letter && !word.stress_phone && !word.stress_vowel) {
      word.stress_phone = *marked_letter * phones / letters;
    }
  }
  word.phone_count = word.vowel_phones.size();

  const std::vector<std::size_t> vowels = VowelPhones(word);
  if (word.stress_phone) {
    if (*word.stress_phone >= *word.phone_count) {
      throw Error(ErrorCode::kInvalidArgument, "stress phone outside word '" + word.text + "'");
    }
  } else if (word.stress_vowel) {
    if (*word.stress_vowel >= vowels.size()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "word '" + word.text + "' has no vowel " + std::to_string(*word.stress_vowel));
    }
    word.stress_phone = vowels[*word.stress_vowel];
  } else if (vowels.size() == 1) {
    word.stress_phone = vowels.front();
  }
  return word;
}

PseudoTimeline::PseudoTimeline(const std::vector<PlanWord>& words, double mean_phone_s)
    : mean_phone_s_(mean_phone_s) {
  if (!(mean_phone_s > 0.0) || !std::isfinite(mean_phone_s)) {
    throw Error(ErrorCode::kInvalidArgument, "mean phone duration must be positive");
  }
  if (words.empty()) throw Error(ErrorCode::kEmptyInput, "text plan has no words");
  std::size_t offset = 0;
  for (const PlanWord& raw : words) {
    const PlanWord w = ResolvePlanWord(raw);
    const std::size_t n = *w.phone_count;
    auto center = [&](std::size_t j) {
      return (static_cast<double>(offset + j) + 0.5) * mean_phone_s;
    };
    TimelineWord tw;
    tw.text = w.text;
    tw.phone_count = n;
    tw.start = static_cast<double>(offset) * mean_phone_s;
    tw.end = static_cast<double>(offset + n) * mean_phone_s;
    if (w.stress_phone) {
      const std::size_t s = *w.stress_phone;
      tw.stressed_vowel_time = center(s);
      for (std::size_t j = s; j-- > 0;) {
        if (w.vowel_phones[j]) {
          tw.pre_stress_vowel_time = center(j);
          break;
        }
      }
      for (std::size_t j = s + 1; j < n; ++j) {
        if (w.vowel_phones[j]) {
          tw.post_stress_vowel_time = center(j);
          break;
        }
      }
    }
    words_.push_back(std::move(tw));
    offset += n;
  }
}

align::UtteranceAlignment PseudoTimeline::ToAlignment() const {
  align::UtteranceAlignment out;
  for (const auto& w : words_) {
    align::WordInterval wi;
    wi.text = w.text;
    wi.start = w.start;
    wi.end = w.end;
    wi.stressed_vowel_time = w.stressed_vowel_time;
    if (!out.text.empty()) out.text += ' ';
    out.text += w.text;
    out.words.push_back(std::move(wi));
  }
  return out;
}

std::vector<PlanWord> PlanFromAlignment(const align::UtteranceAlignment& alignment) {
  std::vector<PlanWord> out;
  for (const auto& w : alignment.words) {
    PlanWord p;
    p.text = w.text;
    if (!w.phones.empty()) {
      for (std::size_t j = 0; j < w.phones.size(); ++j) {
        const auto& ph = w.phones[j];
        const std::u32string label = text::DecodeUtf8(ph.label);
        p.vowel_phones.push_back(!label.empty() && text::IsVowel(label.front()));
        if (w.stressed_vowel_time && *w.stressed_vowel_time >= ph.start &&
            *w.stressed_vowel_time <= ph.end && !p.stress_phone) {
          p.stress_phone = j;
        }
      }
    } else if (w.stressed_vowel_time) {
      p = ResolvePlanWord(p);
      const double frac = (*w.stressed_vowel_time - w.start) / w.duration();
      const auto n = *p.phone_count;
      p.stress_phone = std::min(n - 1, static_cast<std::size_t>(frac * static_cast<double>(n)));
    }
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace pasta::intsint
