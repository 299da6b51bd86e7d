// Copyright 2026 The QuickCue Authors
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

#include "quickcue/error.hpp"

namespace quickcue {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kUnknownAspect: return "UnknownAspect";
    case ErrorCode::kUnknownSentiment: return "UnknownSentiment";
    case ErrorCode::kInvalidReview: return "InvalidReview";
    case ErrorCode::kEmptyReview: return "EmptyReview";
    case ErrorCode::kEmptyBucket: return "EmptyBucket";
    case ErrorCode::kNoPairListFound: return "NoPairListFound";
    case ErrorCode::kMalformedPair: return "MalformedPair";
    case ErrorCode::kNoBulletsFound: return "NoBulletsFound";
    case ErrorCode::kCredentialMissing: return "CredentialMissing";
    case ErrorCode::kProviderError: return "ProviderError";
    case ErrorCode::kTimeout: return "Timeout";
    case ErrorCode::kGatewayUnavailable: return "GatewayUnavailable";
    case ErrorCode::kEmptyDataset: return "EmptyDataset";
    case ErrorCode::kDuplicateScore: return "DuplicateScore";
    case ErrorCode::kSchemaError: return "SchemaError";
    case ErrorCode::kConfigError: return "ConfigError";
    case ErrorCode::kIoError: return "IoError";
    case ErrorCode::kRequestTooLarge: return "RequestTooLarge";
  }
  return "Unknown";
}

}  // namespace quickcue
