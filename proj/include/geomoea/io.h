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

// On-disk formats. JSON files name locations by id, never by index; readers
// map ids back through the domain. See docs/formats.md.

#ifndef GEOMOEA_IO_H_
#define GEOMOEA_IO_H_

#include <filesystem>
#include <string>

#include "json.hpp"

#include "geomoea/domain.h"
#include "geomoea/grid_partition.h"
#include "geomoea/mechanism.h"
#include "geomoea/moea.h"
#include "geomoea/pls.h"

namespace geomoea {

using Json = nlohmann::ordered_json;

Json domain_to_json(const Domain& domain);
Domain domain_from_json(const Json& j);

Json cells_to_json(const PartitionTree& tree, const Domain& domain,
                   std::size_t n0);

Json partition_to_json(const PlsPartition& partition, const Domain& domain,
                       const PrivacyConfig& cfg);
// Rebuilds owners from the member lists. Throws kSchema on structural
// problems; semantic checks are left to partition_violations.
PlsPartition partition_from_json(const Json& j, const Domain& domain);

Json matrix_to_json(const ObfuscationMatrix& matrix, const Domain& domain);
ObfuscationMatrix matrix_from_json(const Json& j, const Domain& domain);

Json front_to_json(const ParetoFront& front, const Domain& domain,
                   const PrivacyConfig& cfg);

// Little-endian binary matrix: magic "GEOMOEA1", u32 version, u32 reserved,
// u64 row count, then per row i64 true id, u64 length, the support ids as
// i64 and the probabilities as f64.
void write_matrix_binary(const std::filesystem::path& path,
                         const ObfuscationMatrix& matrix, const Domain& domain);
ObfuscationMatrix read_matrix_binary(const std::filesystem::path& path,
                                     const Domain& domain);

// Whole-file helpers. Reads throw kIo for missing or unreadable files and
// kParse for malformed JSON, naming the path.
Json read_json(const std::filesystem::path& path);
void write_json(const std::filesystem::path& path, const Json& j);
void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace geomoea

#endif  // GEOMOEA_IO_H_
