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

#include "pasta/alignment.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <utility>

#include <json.hpp>

#include "pasta/error.h"
#include "text_util.h"

namespace pasta::align {
namespace {

// Boundaries shared by the word and phone tiers are written independently by
// aligners; allow for their rounding.
constexpr double kBoundaryTolerance = 1e-4;
constexpr double kOverlapTolerance = 1e-9;

std::string Lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

// "words" or a speaker-prefixed "speaker - words".
bool TierIs(const std::string& name, std::string_view kind) {
  const std::string n = Lower(std::string(text::Trim(name)));
  return n == kind || (n.size() > kind.size() + 3 && n.ends_with(kind) &&
                       n.substr(n.size() - kind.size() - 3, 3) == " - ");
}

std::string JoinWords(const std::vector<WordInterval>& words) {
  std::string s;
  for (const auto& w : words) {
    if (!s.empty()) s += ' ';
    s += w.text;
  }
  return s;
}

}  // namespace

UtteranceAlignment Validate(UtteranceAlignment alignment) {
  std::erase_if(alignment.words,
                [](const WordInterval& w) { return text::IsPunctuationOnly(w.text); });
  if (alignment.words.empty()) {
    throw Error(ErrorCode::kEmptyAlignment, "no words after filtering");
  }
  for (std::size_t i = 0; i < alignment.words.size(); ++i) {
    const WordInterval& w = alignment.words[i];
    const std::string where = "word " + std::to_string(i) + " '" + w.text + "'";
    if (!std::isfinite(w.start) || !std::isfinite(w.end) || !(w.start < w.end)) {
      throw Error(ErrorCode::kParseError, where + ": start must precede end");
    }
    if (i > 0) {
      const WordInterval& prev = alignment.words[i - 1];
      if (w.start < prev.end - kOverlapTolerance) {
        throw Error(ErrorCode::kOverlappingWords,
                    where + " starts before the previous word ends");
      }
    }
    if (!w.phones.empty()) {
      double cursor = w.start;
      for (const PhoneInterval& p : w.phones) {
        if (!(p.start < p.end) || std::abs(p.start - cursor) > kBoundaryTolerance) {
          throw Error(ErrorCode::kParseError, where + ": phones do not tile the word");
        }
        cursor = p.end;
      }
      if (std::abs(cursor - w.end) > kBoundaryTolerance) {
        throw Error(ErrorCode::kParseError, where + ": phones do not reach the word end");
      }
    }
    if (w.stressed_vowel_time &&
        (*w.stressed_vowel_time < w.start || *w.stressed_vowel_time > w.end)) {
      throw Error(ErrorCode::kParseError, where + ": stressed vowel outside the word");
    }
  }
  if (alignment.text.empty()) alignment.text = JoinWords(alignment.words);
  return alignment;
}

UtteranceAlignment ParseWordJson(const std::string& json) {
  UtteranceAlignment out;
  try {
    const auto j = nlohmann::json::parse(json);
    if (j.contains("text")) out.text = j.at("text").get<std::string>();
    for (const auto& w : j.at("words")) {
      WordInterval word;
      word.text = w.at("word").get<std::string>();
      word.start = w.at("start").get<double>();
      word.end = w.at("end").get<double>();
      if (w.contains("phones") && !w.at("phones").is_null()) {
        for (const auto& p : w.at("phones")) {
          if (!p.is_array() || p.size() != 3) {
            throw Error(ErrorCode::kParseError, "phone entries are [label, start, end]");
          }
          word.phones.push_back(
              {p[0].get<std::string>(), p[1].get<double>(), p[2].get<double>()});
        }
      }
      if (w.contains("stressed_vowel_time") && !w.at("stressed_vowel_time").is_null()) {
        word.stressed_vowel_time = w.at("stressed_vowel_time").get<double>();
      }
      out.words.push_back(std::move(word));
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParseError, std::string("word JSON: ") + e.what());
  }
  return Validate(std::move(out));
}

UtteranceAlignment ParseTextGrid(const std::string& contents) {
  const TextGrid grid = ReadTextGrid(contents);
  const TextGridTier* words = nullptr;
  const TextGridTier* phones = nullptr;
  for (const auto& tier : grid.tiers) {
    if (tier.tier_class != "IntervalTier") continue;
    if (!words && TierIs(tier.name, "words")) words = &tier;
    if (!phones && TierIs(tier.name, "phones")) phones = &tier;
  }
  if (!words) throw Error(ErrorCode::kParseError, "TextGrid has no 'words' interval tier");

  UtteranceAlignment out;
  for (const auto& iv : words->intervals) {
    const std::string_view label = text::Trim(iv.text);
    if (label.empty()) continue;  // silence
    WordInterval w;
    w.text = std::string(label);
    w.start = iv.xmin;
    w.end = iv.xmax;
    if (phones) {
      for (const auto& p : phones->intervals) {
        const double mid = 0.5 * (p.xmin + p.xmax);
        if (mid <= w.start || mid >= w.end) continue;
        const std::string_view pl = text::Trim(p.text);
        if (pl.empty()) continue;
        w.phones.push_back({std::string(pl), p.xmin, p.xmax});
      }
    }
    out.words.push_back(std::move(w));
  }
  return Validate(std::move(out));
}

UtteranceAlignment ParseAlignment(const std::string& contents, AlignmentFormat format) {
  return format == AlignmentFormat::kWordJson ? ParseWordJson(contents)
                                              : ParseTextGrid(contents);
}

UtteranceAlignment LoadAlignment(const std::filesystem::path& path,
                                 AlignmentFormat format) {
  return ParseAlignment(text::ReadFile(path), format);
}

AlignmentFormat GuessAlignmentFormat(const std::filesystem::path& path) {
  return Lower(path.extension().string()) == ".json" ? AlignmentFormat::kWordJson
                                                     : AlignmentFormat::kTextGrid;
}

std::string WordJsonFromAlignment(const UtteranceAlignment& alignment) {
  nlohmann::ordered_json j;
  j["text"] = alignment.text;
  j["words"] = nlohmann::ordered_json::array();
  for (const auto& w : alignment.words) {
    nlohmann::ordered_json wj;
    wj["word"] = w.text;
    wj["start"] = w.start;
    wj["end"] = w.end;
    if (!w.phones.empty()) {
      wj["phones"] = nlohmann::ordered_json::array();
      for (const auto& p : w.phones) wj["phones"].push_back({p.label, p.start, p.end});
    }
    if (w.stressed_vowel_time) wj["stressed_vowel_time"] = *w.stressed_vowel_time;
    j["words"].push_back(std::move(wj));
  }
  return j.dump(2) + "\n";
}

}  // namespace pasta::align
