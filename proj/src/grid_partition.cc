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

#include "geomoea/grid_partition.h"

#include <algorithm>
#include <string>

#include "geomoea/error.h"

namespace geomoea {
namespace {

void split(const Domain& domain, Rect rect, std::vector<std::size_t> members,
           int depth, std::vector<Cell>& out) {
  if (depth == 0) {
    std::sort(members.begin(), members.end());
    out.push_back({static_cast<int>(out.size()), rect, std::move(members)});
    return;
  }
  const bool cut_x = rect.width() >= rect.height();
  auto coord = [&](std::size_t i) {
    const Location& l = domain.location(i);
    return cut_x ? l.x : l.y;
  };
  std::sort(members.begin(), members.end(),
            [&](std::size_t a, std::size_t b) {
              const double ca = coord(a), cb = coord(b);
              return ca != cb ? ca < cb : a < b;
            });
  const std::size_t lower_count = (members.size() + 1) / 2;
  const double plane =
      0.5 * (coord(members[lower_count - 1]) + coord(members[lower_count]));
  Rect lower = rect, upper = rect;
  if (cut_x) {
    lower.max_x = plane;
    upper.min_x = plane;
  } else {
    lower.max_y = plane;
    upper.min_y = plane;
  }
  std::vector<std::size_t> upper_members(members.begin() + lower_count,
                                         members.end());
  members.resize(lower_count);
  split(domain, lower, std::move(members), depth - 1, out);
  split(domain, upper, std::move(upper_members), depth - 1, out);
}

}  // namespace

int partition_levels(std::size_t n, std::size_t n0) {
  int levels = 0;
  while (n0 << (levels + 1) <= n) ++levels;
  return levels;
}

PartitionTree binary_partition(const Domain& domain, std::size_t n0) {
  if (n0 < 2) {
    throw Error(ErrorCode::kInvalidConfig,
                "n0 must be >= 2, got " + std::to_string(n0));
  }
  if (domain.size() < n0) {
    throw Error(ErrorCode::kDomainTooSmall,
                "domain has " + std::to_string(domain.size()) +
                    " locations, fewer than n0=" + std::to_string(n0));
  }
  PartitionTree tree;
  tree.levels = partition_levels(domain.size(), n0);
  std::vector<std::size_t> all(domain.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  tree.cells.reserve(std::size_t{1} << tree.levels);
  split(domain, domain.bounds(), std::move(all), tree.levels, tree.cells);
  return tree;
}

std::vector<int> cell_of_location(const PartitionTree& tree,
                                  std::size_t domain_size) {
  std::vector<int> owner(domain_size, -1);
  for (const Cell& c : tree.cells) {
    for (std::size_t m : c.members) owner[m] = c.id;
  }
  return owner;
}

}  // namespace geomoea
