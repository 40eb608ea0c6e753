// Copyright 2026 The EdgeGate Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "edgegate/core/error.hpp"

namespace edgegate {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kMalformedUid: return "MalformedUid";
    case ErrorCode::kInvalidPolicy: return "InvalidPolicy";
    case ErrorCode::kNonPositiveInterval: return "NonPositiveInterval";
    case ErrorCode::kNegativeFlow: return "NegativeFlow";
    case ErrorCode::kMissingField: return "MissingField";
    case ErrorCode::kInvalidRecord: return "InvalidRecord";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kSchemaError: return "SchemaError";
    case ErrorCode::kUnknownEventType: return "UnknownEventType";
    case ErrorCode::kInvalidAttempt: return "InvalidAttempt";
    case ErrorCode::kQueueFull: return "QueueFull";
    case ErrorCode::kUnauthorized: return "Unauthorized";
    case ErrorCode::kUnavailable: return "Unavailable";
    case ErrorCode::kNotFound: return "NotFound";
    case ErrorCode::kOverlappingPartition: return "OverlappingPartition";
    case ErrorCode::kConfigError: return "ConfigError";
    case ErrorCode::kMismatchedTruth: return "MismatchedTruth";
    case ErrorCode::kIoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace edgegate
