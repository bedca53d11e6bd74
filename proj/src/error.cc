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

#include "geomoea/error.h"

namespace geomoea {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "invalid_argument";
    case ErrorCode::kInvalidConfig: return "invalid_config";
    case ErrorCode::kParse: return "parse_error";
    case ErrorCode::kIo: return "io_error";
    case ErrorCode::kSchema: return "schema_mismatch";
    case ErrorCode::kDomainTooSmall: return "domain_too_small";
    case ErrorCode::kCellInfeasible: return "cell_infeasible";
    case ErrorCode::kDegeneratePls: return "degenerate_pls";
    case ErrorCode::kUnreachableOutput: return "unreachable_output";
    case ErrorCode::kNoWorker: return "no_worker";
  }
  return "unknown";
}

}  // namespace geomoea
