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

#ifndef PASTA_ERROR_H_
#define PASTA_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace pasta {

// Every failure the library reports carries one of these codes so callers
// (and the CLI exit-code mapping) can branch on the kind of error.
enum class ErrorCode {
  // pitch
  kMalformedRow,
  kNonUniformStep,
  kEmptyContour,
  kNoVoicedFrames,
  kZeroMean,
  kInvalidFactor,
  // momel
  kTooFewVoicedFrames,
  kNoAnchorsFound,
  kEmptyInterval,
  // alignment
  kParseError,
  kOverlappingWords,
  kEmptyAlignment,
  // patterns
  kTimeBaseMismatch,
  // clustering
  kEmptyInput,
  kKTooLarge,
  kEmptyMatrix,
  kLengthMismatch,
  // intsint
  kFirstMarkRelative,
  kUnorderedMarks,
  kMissingStress,
  // pipeline
  kAllUtterancesSkipped,
  kModelMismatch,
  kIdMismatch,
  // generic
  kInvalidArgument,
  kIoError,
};

std::string_view ErrorCodeName(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// True for errors caused by bad user-supplied configuration rather than by
// the data being processed.
bool IsValidationError(ErrorCode code);

}  // namespace pasta

#endif  // PASTA_ERROR_H_
