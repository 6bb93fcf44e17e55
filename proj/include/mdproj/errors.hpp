/*
 * Copyright 2026 The mdproj Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace mdproj {

enum class ErrorCode {
  InvalidDimension,
  DegenerateDirection,
  LengthMismatch,
  NonStationaryModel,
  NumericFailure,
  UnsupportedMethod,
  InvalidVariance,
  InvalidInput,
  InsufficientTable,
  EmptySample,
  InvalidSample,
  UnsupportedCf,
  Accuracy,
  Resource,
  Config,
  Io,
};

const char* to_string(ErrorCode code);

// Every failure raised by the library carries one of the codes above so that
// callers (the CLI in particular) can map it onto an exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Quadrature or inversion that did not reach its tolerance.
class AccuracyError : public Error {
 public:
  AccuracyError(const std::string& what, double residual)
      : Error(ErrorCode::Accuracy, what), residual_(residual) {}

  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

// A configuration problem attributable to a single key.
class ConfigError : public Error {
 public:
  ConfigError(std::string key, const std::string& what)
      : Error(ErrorCode::Config, what), key_(std::move(key)) {}

  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

}  // namespace mdproj
