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

// Two-objective Pareto machinery. Both objectives are minimized; the pipeline
// feeds (QLoss, -ExpErr).

#ifndef GEOMOEA_PARETO_H_
#define GEOMOEA_PARETO_H_

#include <cstddef>
#include <span>
#include <vector>

#include "geomoea/rng.h"

namespace geomoea {

struct Objectives {
  double f1 = 0.0;
  double f2 = 0.0;

  bool operator==(const Objectives&) const = default;
};

bool dominates(const Objectives& a, const Objectives& b);

// Fronts of indices into `points`, best first, each ascending.
std::vector<std::vector<std::size_t>> fast_nondominated_sort(
    std::span<const Objectives> points);

// Crowding distance of each member of one front, aligned with `front`.
// Boundary members get +inf; an objective with zero range adds nothing.
std::vector<double> crowding_distance(std::span<const Objectives> points,
                                      std::span<const std::size_t> front);

// Winner of a tournament between two distinct uniform picks from [0, n):
// lower rank, then larger crowding, then a coin.
std::size_t binary_tournament(std::span<const int> rank,
                              std::span<const double> crowding, Rng& rng);

// Area dominated by `points` inside the box bounded by `reference`. Throws
// kInvalidArgument if a point exceeds the reference in either objective.
double hypervolume(std::span<const Objectives> points,
                   const Objectives& reference);

// Reference a fixed margin past the worst value of each objective. The
// margin is 10% of the magnitude (or 0.1 when the worst value is zero), so
// it stays beyond the data whatever the sign.
Objectives reference_point(std::span<const Objectives> points);

}  // namespace geomoea

#endif  // GEOMOEA_PARETO_H_
