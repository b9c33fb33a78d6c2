/* Copyright 2026 The UW-VOS Toolkit Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#ifndef UWVOS_ERROR_H_
#define UWVOS_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace uwvos {

// Stable error codes. The names are part of the CLI's machine-readable
// error output; append new codes at the end and never rename.
enum class ErrorCode {
  kInvalidArgument,
  kIoError,
  kMissingMeta,
  kMalformedMeta,
  kEmptyVideo,
  kDecodeError,
  kUnsupportedDepth,
  kUnknownVideo,
  kUnknownObject,
  kDimensionMismatch,
  kTrackLengthMismatch,
  kLengthMismatch,
  kAllAbsentTrack,
  kInsufficientPresence,
  kSchemaViolation,
  kUnknownEnumValue,
  kMissingProfile,
  kUnmappedCategory,
  kMissingFrames,
  kShapeMismatch,
  kIndivisibleDim,
  kNonFiniteValue,
  kEmptyTrainSet,
  kWrongSplit,
};

std::string_view ErrorCodeName(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace uwvos

#endif  // UWVOS_ERROR_H_
