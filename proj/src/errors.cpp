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

#include "mdproj/errors.hpp"

namespace mdproj {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidDimension: return "invalid-dimension";
    case ErrorCode::DegenerateDirection: return "degenerate-direction";
    case ErrorCode::LengthMismatch: return "length-mismatch";
    case ErrorCode::NonStationaryModel: return "non-stationary-model";
    case ErrorCode::NumericFailure: return "numeric-failure";
    case ErrorCode::UnsupportedMethod: return "unsupported-method";
    case ErrorCode::InvalidVariance: return "invalid-variance";
    case ErrorCode::InvalidInput: return "invalid-input";
    case ErrorCode::InsufficientTable: return "insufficient-table";
    case ErrorCode::EmptySample: return "empty-sample";
    case ErrorCode::InvalidSample: return "invalid-sample";
    case ErrorCode::UnsupportedCf: return "unsupported-cf";
    case ErrorCode::Accuracy: return "accuracy";
    case ErrorCode::Resource: return "resource";
    case ErrorCode::Config: return "config";
    case ErrorCode::Io: return "io";
  }
  return "unknown";
}

}  // namespace mdproj
