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

#include "pasta/error.h"

namespace pasta {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kMalformedRow: return "MalformedRow";
    case ErrorCode::kNonUniformStep: return "NonUniformStep";
    case ErrorCode::kEmptyContour: return "EmptyContour";
    case ErrorCode::kNoVoicedFrames: return "NoVoicedFrames";
    case ErrorCode::kZeroMean: return "ZeroMean";
    case ErrorCode::kInvalidFactor: return "InvalidFactor";
    case ErrorCode::kTooFewVoicedFrames: return "TooFewVoicedFrames";
    case ErrorCode::kNoAnchorsFound: return "NoAnchorsFound";
    case ErrorCode::kEmptyInterval: return "EmptyInterval";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kOverlappingWords: return "OverlappingWords";
    case ErrorCode::kEmptyAlignment: return "EmptyAlignment";
    case ErrorCode::kTimeBaseMismatch: return "TimeBaseMismatch";
    case ErrorCode::kEmptyInput: return "EmptyInput";
    case ErrorCode::kKTooLarge: return "KTooLarge";
    case ErrorCode::kEmptyMatrix: return "EmptyMatrix";
    case ErrorCode::kLengthMismatch: return "LengthMismatch";
    case ErrorCode::kFirstMarkRelative: return "FirstMarkRelative";
    case ErrorCode::kUnorderedMarks: return "UnorderedMarks";
    case ErrorCode::kMissingStress: return "MissingStress";
    case ErrorCode::kAllUtterancesSkipped: return "AllUtterancesSkipped";
    case ErrorCode::kModelMismatch: return "ModelMismatch";
    case ErrorCode::kIdMismatch: return "IdMismatch";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kIoError: return "IoError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
      code_(code) {}

bool IsValidationError(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument:
    case ErrorCode::kInvalidFactor:
    case ErrorCode::kKTooLarge:
    case ErrorCode::kModelMismatch:
      return true;
    default:
      return false;
  }
}

}  // namespace pasta
