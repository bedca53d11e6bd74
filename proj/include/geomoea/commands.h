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

// The geomoea command line, callable in-process so tests can drive it.

#ifndef GEOMOEA_COMMANDS_H_
#define GEOMOEA_COMMANDS_H_

#include <ostream>
#include <string>
#include <vector>

namespace geomoea {

// Exit codes: 0 success, 1 a run or verification failure, 2 bad usage,
// configuration, input or schema. Errors go to `err` as one JSON object.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace geomoea

#endif  // GEOMOEA_COMMANDS_H_
