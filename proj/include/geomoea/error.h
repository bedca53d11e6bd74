// Copyright 2026 The Geo-MOEA Authors.
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

#ifndef GEOMOEA_ERROR_H_
#define GEOMOEA_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace geomoea {

enum class ErrorCode {
  kInvalidArgument,
  kInvalidConfig,
  kParse,
  kIo,
  kSchema,
  kDomainTooSmall,
  kCellInfeasible,
  kDegeneratePls,
  kUnreachableOutput,
  kNoWorker,
};

std::string_view error_code_name(ErrorCode code);

// All library failures surface as this exception type. The code is stable
// and is what the CLI maps to exit statuses and structured error JSON.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace geomoea

#endif  // GEOMOEA_ERROR_H_
