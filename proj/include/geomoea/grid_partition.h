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

#ifndef GEOMOEA_GRID_PARTITION_H_
#define GEOMOEA_GRID_PARTITION_H_

#include <cstddef>
#include <vector>

#include "geomoea/domain.h"

namespace geomoea {

struct Cell {
  int id = 0;
  Rect bounds;
  // Domain indices (equivalently ids, in id order), ascending.
  std::vector<std::size_t> members;
};

struct PartitionTree {
  int levels = 0;
  std::vector<Cell> cells;  // 2^levels cells, left-to-right in split order
};

// Number of halving rounds for N locations and floor n0: the largest L with
// n0 * 2^L <= N.
int partition_levels(std::size_t n, std::size_t n0);

// Recursive equal-count bisection of the tight bounding box. Each split cuts
// the longer rectangle edge at the median member; the lower half takes the
// extra element of an odd count and ties on the split coordinate go by id.
// Throws kInvalidConfig for n0 < 2 and kDomainTooSmall when N < n0.
PartitionTree binary_partition(const Domain& domain, std::size_t n0);

// Cell index owning each domain location.
std::vector<int> cell_of_location(const PartitionTree& tree,
                                  std::size_t domain_size);

}  // namespace geomoea

#endif  // GEOMOEA_GRID_PARTITION_H_
