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

#include "uwvos/error.h"

namespace uwvos {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kIoError: return "IoError";
    case ErrorCode::kMissingMeta: return "MissingMeta";
    case ErrorCode::kMalformedMeta: return "MalformedMeta";
    case ErrorCode::kEmptyVideo: return "EmptyVideo";
    case ErrorCode::kDecodeError: return "DecodeError";
    case ErrorCode::kUnsupportedDepth: return "UnsupportedDepth";
    case ErrorCode::kUnknownVideo: return "UnknownVideo";
    case ErrorCode::kUnknownObject: return "UnknownObject";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kTrackLengthMismatch: return "TrackLengthMismatch";
    case ErrorCode::kLengthMismatch: return "LengthMismatch";
    case ErrorCode::kAllAbsentTrack: return "AllAbsentTrack";
    case ErrorCode::kInsufficientPresence: return "InsufficientPresence";
    case ErrorCode::kSchemaViolation: return "SchemaViolation";
    case ErrorCode::kUnknownEnumValue: return "UnknownEnumValue";
    case ErrorCode::kMissingProfile: return "MissingProfile";
    case ErrorCode::kUnmappedCategory: return "UnmappedCategory";
    case ErrorCode::kMissingFrames: return "MissingFrames";
    case ErrorCode::kShapeMismatch: return "ShapeMismatch";
    case ErrorCode::kIndivisibleDim: return "IndivisibleDim";
    case ErrorCode::kNonFiniteValue: return "NonFiniteValue";
    case ErrorCode::kEmptyTrainSet: return "EmptyTrainSet";
    case ErrorCode::kWrongSplit: return "WrongSplit";
  }
  return "Unknown";
}

}  // namespace uwvos
