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

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace quickcue {

enum class ErrorCode {
  kUnknownAspect,
  kUnknownSentiment,
  kInvalidReview,
  kEmptyReview,
  kEmptyBucket,
  kNoPairListFound,
  kMalformedPair,
  kNoBulletsFound,
  kCredentialMissing,
  kProviderError,
  kTimeout,
  kGatewayUnavailable,
  kEmptyDataset,
  kDuplicateScore,
  kSchemaError,
  kConfigError,
  kIoError,
  kRequestTooLarge,
};

std::string_view to_string(ErrorCode code);

// Base of every exception thrown by the library. The code is stable and is
// what the service maps onto HTTP statuses and wire error names.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Retries exhausted against the live provider. status is 0 when the last
// attempt never produced an HTTP response.
class ProviderError : public Error {
 public:
  ProviderError(int status, int attempts, const std::string& message)
      : Error(ErrorCode::kProviderError, message),
        status_(status),
        attempts_(attempts) {}

  int status() const noexcept { return status_; }
  int attempts() const noexcept { return attempts_; }

 private:
  int status_;
  int attempts_;
};

// Validation failure with the location of the offending value, e.g.
// "reviews[2].id".
class SchemaError : public Error {
 public:
  SchemaError(std::string path, const std::string& message)
      : Error(ErrorCode::kSchemaError, message), path_(std::move(path)) {}

  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

}  // namespace quickcue
