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

// Small string helpers shared by the parsers. Internal to the library.

#ifndef PASTA_SRC_TEXT_UTIL_H_
#define PASTA_SRC_TEXT_UTIL_H_

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace pasta::text {

std::string_view Trim(std::string_view s);
std::vector<std::string_view> SplitTrimmed(std::string_view s, char sep);
std::vector<std::string_view> SplitWhitespace(std::string_view s);

// Parses the whole field as a double; nullopt on any trailing garbage.
std::optional<double> ParseDouble(std::string_view s);
// Shortest representation that round-trips through ParseDouble.
std::string FormatDouble(double value);

std::string ReadFile(const std::filesystem::path& path);
void WriteFile(const std::filesystem::path& path, const std::string& contents);

// UTF-8 decoding; invalid bytes decode to U+FFFD.
std::u32string DecodeUtf8(std::string_view s);
bool IsPunctuation(char32_t c);
bool IsSpace(char32_t c);
// True when the token has no letters or digits at all.
bool IsPunctuationOnly(std::string_view token);
bool IsVowel(char32_t c);

}  // namespace pasta::text

#endif  // PASTA_SRC_TEXT_UTIL_H_
