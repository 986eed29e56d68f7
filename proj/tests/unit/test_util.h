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

#ifndef PASTA_TESTS_UNIT_TEST_UTIL_H_
#define PASTA_TESTS_UNIT_TEST_UTIL_H_

#include <filesystem>
#include <optional>

#include <catch_amalgamated.hpp>

#include "pasta/error.h"

namespace pasta::testing {

// Code of the pasta::Error thrown by fn, or nullopt if none was thrown.
template <typename Fn>
std::optional<ErrorCode> CodeOf(Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return std::nullopt;
}

inline std::filesystem::path DataDir() { return PASTA_TEST_DATA; }

}  // namespace pasta::testing

#endif  // PASTA_TESTS_UNIT_TEST_UTIL_H_
