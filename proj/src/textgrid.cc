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

// Praat TextGrid reader.
//
// The long format decorates every value with a key ("xmin = 0") and the
// short format lists bare values, but both carry the same value sequence.
// The tokenizer keeps only quoted strings, numbers and the <exists> flag,
// which turns either format into that sequence.

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "pasta/alignment.h"
#include "pasta/error.h"
#include "text_util.h"

namespace pasta::align {
namespace {

struct Token {
  enum class Kind { kString, kNumber, kFlag };
  Kind kind;
  std::string text;
  double number = 0.0;
};

void AppendUtf8(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out += static_cast<char>(cp);
  } else if (cp < 0x800) {
    out += static_cast<char>(0xC0 | (cp >> 6));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else if (cp < 0x10000) {
    out += static_cast<char>(0xE0 | (cp >> 12));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else {
    out += static_cast<char>(0xF0 | (cp >> 18));
    out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  }
}

// Praat writes UTF-16 when a TextGrid holds non-ASCII labels.
std::string ToUtf8(const std::string& raw) {
  if (raw.size() < 2) return raw;
  const auto b0 = static_cast<unsigned char>(raw[0]);
  const auto b1 = static_cast<unsigned char>(raw[1]);
  const bool le = b0 == 0xFF && b1 == 0xFE;
  const bool be = b0 == 0xFE && b1 == 0xFF;
  if (!le && !be) return raw;
  std::string out;
  out.reserve(raw.size() / 2);
  for (std::size_t i = 2; i + 1 < raw.size(); i += 2) {
    const auto lo = static_cast<unsigned char>(raw[le ? i : i + 1]);
    const auto hi = static_cast<unsigned char>(raw[le ? i + 1 : i]);
    char32_t unit = static_cast<char32_t>((hi << 8) | lo);
    if (unit >= 0xD800 && unit <= 0xDBFF && i + 3 < raw.size()) {
      const auto lo2 = static_cast<unsigned char>(raw[le ? i + 2 : i + 3]);
      const auto hi2 = static_cast<unsigned char>(raw[le ? i + 3 : i + 2]);
      const char32_t low = static_cast<char32_t>((hi2 << 8) | lo2);
      if (low >= 0xDC00 && low <= 0xDFFF) {
        unit = 0x10000 + ((unit - 0xD800) << 10) + (low - 0xDC00);
        i += 2;
      }
    }
    AppendUtf8(out, unit);
  }
  return out;
}

std::vector<Token> Tokenize(std::string_view s) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < s.size()) {
    const char c = s[i];
    if (c == '"') {
      std::string str;
      ++i;
      while (true) {
        if (i >= s.size()) throw Error(ErrorCode::kParseError, "unterminated string");
        if (s[i] == '"') {
          if (i + 1 < s.size() && s[i + 1] == '"') {
            str += '"';
            i += 2;
            continue;
          }
          ++i;
          break;
        }
        str += s[i++];
      }
      tokens.push_back({Token::Kind::kString, std::move(str)});
    } else if (c == '[') {
      while (i < s.size() && s[i] != ']') ++i;
      ++i;
    } else if (c == '!') {
      // Praat comment to end of line.
      while (i < s.size() && s[i] != '\n') ++i;
    } else if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else {
      std::size_t j = i;
      while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j])) &&
             s[j] != '"' && s[j] != '[') {
        ++j;
      }
      const std::string_view word = s.substr(i, j - i);
      if (word == "<exists>") {
        tokens.push_back({Token::Kind::kFlag, std::string(word)});
      } else if (auto v = text::ParseDouble(word)) {
        tokens.push_back({Token::Kind::kNumber, std::string(word), *v});
      }
      i = j;
    }
  }
  return tokens;
}

class TokenReader {
 public:
  explicit TokenReader(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  bool AtEnd() const { return pos_ >= tokens_.size(); }

  const Token& Peek() const {
    if (AtEnd()) throw Error(ErrorCode::kParseError, "unexpected end of TextGrid");
    return tokens_[pos_];
  }

  std::string String() {
    const Token& t = Peek();
    if (t.kind != Token::Kind::kString) {
      throw Error(ErrorCode::kParseError, "expected a string, got '" + t.text + "'");
    }
    ++pos_;
    return t.text;
  }

  double Number() {
    const Token& t = Peek();
    if (t.kind != Token::Kind::kNumber) {
      throw Error(ErrorCode::kParseError, "expected a number, got '" + t.text + "'");
    }
    ++pos_;
    return t.number;
  }

  std::size_t Count() {
    const double v = Number();
    if (v < 0 || v != static_cast<double>(static_cast<std::size_t>(v))) {
      throw Error(ErrorCode::kParseError, "invalid count");
    }
    return static_cast<std::size_t>(v);
  }

  bool Flag() {
    if (!AtEnd() && Peek().kind == Token::Kind::kFlag) {
      ++pos_;
      return true;
    }
    return false;
  }

 private:
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

}  // namespace

TextGrid ReadTextGrid(const std::string& contents) {
  TokenReader in(Tokenize(ToUtf8(contents)));
  if (in.String() != "ooTextFile") {
    throw Error(ErrorCode::kParseError, "not a Praat text file");
  }
  if (in.String() != "TextGrid") {
    throw Error(ErrorCode::kParseError, "object class is not TextGrid");
  }
  TextGrid grid;
  grid.xmin = in.Number();
  grid.xmax = in.Number();
  if (!in.Flag()) return grid;
  const std::size_t n_tiers = in.Count();
  for (std::size_t t = 0; t < n_tiers; ++t) {
    TextGridTier tier;
    tier.tier_class = in.String();
    tier.name = in.String();
    tier.xmin = in.Number();
    tier.xmax = in.Number();
    const std::size_t n = in.Count();
    if (tier.tier_class == "IntervalTier") {
      for (std::size_t k = 0; k < n; ++k) {
        TextGridInterval iv;
        iv.xmin = in.Number();
        iv.xmax = in.Number();
        iv.text = in.String();
        tier.intervals.push_back(std::move(iv));
      }
    } else if (tier.tier_class == "TextTier") {
      for (std::size_t k = 0; k < n; ++k) {
        TextGridPoint pt;
        pt.time = in.Number();
        pt.mark = in.String();
        tier.points.push_back(std::move(pt));
      }
    } else {
      throw Error(ErrorCode::kParseError, "unknown tier class '" + tier.tier_class + "'");
    }
    grid.tiers.push_back(std::move(tier));
  }
  return grid;
}

}  // namespace pasta::align
