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

#include <string>
#include <string_view>
#include <vector>

#include "pasta/error.h"
#include "pasta/pipeline.h"
#include "text_util.h"

namespace pasta::pipeline {
namespace {

// Splits one CSV record. Quoted fields may contain commas and "" escapes.
std::vector<std::string> SplitCsvLine(std::string_view line, std::size_t line_no) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  bool was_quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur += c;
      }
    } else if (c == '"' && text::Trim(cur).empty()) {
      cur.clear();
      quoted = true;
      was_quoted = true;
    } else if (c == ',') {
      fields.push_back(was_quoted ? cur : std::string(text::Trim(cur)));
      cur.clear();
      was_quoted = false;
    } else {
      cur += c;
    }
  }
  if (quoted) {
    throw Error(ErrorCode::kParseError,
                "manifest line " + std::to_string(line_no) + ": unterminated quote");
  }
  fields.push_back(was_quoted ? cur : std::string(text::Trim(cur)));
  return fields;
}

std::filesystem::path Resolve(const std::string& p, const std::filesystem::path& base) {
  std::filesystem::path path(p);
  if (path.is_relative() && !base.empty()) return base / path;
  return path;
}

}  // namespace

std::vector<UtteranceRecord> ParseManifest(const std::string& csv,
                                           const std::filesystem::path& base_dir) {
  std::vector<UtteranceRecord> out;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= csv.size()) {
    std::size_t end = csv.find('\n', start);
    if (end == std::string::npos) end = csv.size();
    std::string_view line(csv.data() + start, end - start);
    start = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (text::Trim(line).empty() || text::Trim(line).front() == '#') continue;
    std::vector<std::string> f = SplitCsvLine(line, line_no);
    if (out.empty() && f[0] == "utterance_id") continue;
    if (f.size() < 4 || f.size() > 5) {
      throw Error(ErrorCode::kParseError, "manifest line " + std::to_string(line_no) +
                                              ": expected 4 or 5 fields, got " +
                                              std::to_string(f.size()));
    }
    if (f[0].empty()) {
      throw Error(ErrorCode::kParseError,
                  "manifest line " + std::to_string(line_no) + ": empty utterance id");
    }
    UtteranceRecord r;
    r.utterance_id = f[0];
    r.speaker_id = f[1];
    r.f0_path = Resolve(f[2], base_dir);
    r.alignment_path = Resolve(f[3], base_dir);
    if (f.size() == 5) r.text = f[4];
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<UtteranceRecord> LoadManifest(const std::filesystem::path& path) {
  return ParseManifest(text::ReadFile(path), path.parent_path());
}

}  // namespace pasta::pipeline
