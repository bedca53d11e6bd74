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

#include "geomoea/pareto.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "geomoea/error.h"

namespace geomoea {

bool dominates(const Objectives& a, const Objectives& b) {
  return a.f1 <= b.f1 && a.f2 <= b.f2 && (a.f1 < b.f1 || a.f2 < b.f2);
}

std::vector<std::vector<std::size_t>> fast_nondominated_sort(
    std::span<const Objectives> points) {
  const std::size_t n = points.size();
  std::vector<std::vector<std::size_t>> dominated(n);
  std::vector<std::size_t> dom_count(n, 0);
  std::vector<std::vector<std::size_t>> fronts;
  std::vector<std::size_t> current;
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t q = 0; q < n; ++q) {
      if (dominates(points[p], points[q])) {
        dominated[p].push_back(q);
      } else if (dominates(points[q], points[p])) {
        ++dom_count[p];
      }
    }
    if (dom_count[p] == 0) current.push_back(p);
  }
  while (!current.empty()) {
    std::vector<std::size_t> next;
    for (std::size_t p : current) {
      for (std::size_t q : dominated[p]) {
        if (--dom_count[q] == 0) next.push_back(q);
      }
    }
    std::sort(next.begin(), next.end());
    fronts.push_back(std::move(current));
    current = std::move(next);
  }
  return fronts;
}

std::vector<double> crowding_distance(std::span<const Objectives> points,
                                      std::span<const std::size_t> front) {
  const std::size_t m = front.size();
  std::vector<double> crowd(m, 0.0);
  if (m <= 2) {
    std::fill(crowd.begin(), crowd.end(),
              std::numeric_limits<double>::infinity());
    return crowd;
  }
  std::vector<std::size_t> order(m);
  for (double Objectives::*f : {&Objectives::f1, &Objectives::f2}) {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) {
                       const double va = points[front[a]].*f;
                       const double vb = points[front[b]].*f;
                       if (va != vb) return va < vb;
                       return front[a] < front[b];
                     });
    crowd[order.front()] = std::numeric_limits<double>::infinity();
    crowd[order.back()] = std::numeric_limits<double>::infinity();
    const double range =
        points[front[order.back()]].*f - points[front[order.front()]].*f;
    if (!(range > 0.0)) continue;
    for (std::size_t k = 1; k + 1 < m; ++k) {
      crowd[order[k]] += (points[front[order[k + 1]]].*f -
                          points[front[order[k - 1]]].*f) /
                         range;
    }
  }
  return crowd;
}

std::size_t binary_tournament(std::span<const int> rank,
                              std::span<const double> crowding, Rng& rng) {
  const std::size_t n = rank.size();
  if (n == 0 || crowding.size() != n) {
    throw Error(ErrorCode::kInvalidArgument,
                "tournament needs matching non-empty rank and crowding");
  }
  if (n == 1) return 0;
  const std::size_t a = rng.index(n);
  std::size_t b = rng.index(n - 1);
  if (b >= a) ++b;
  if (rank[a] != rank[b]) return rank[a] < rank[b] ? a : b;
  if (crowding[a] != crowding[b]) return crowding[a] > crowding[b] ? a : b;
  return rng.coin() ? a : b;
}

double hypervolume(std::span<const Objectives> points,
                   const Objectives& reference) {
  std::vector<Objectives> sorted(points.begin(), points.end());
  for (const Objectives& p : sorted) {
    if (!(p.f1 <= reference.f1 && p.f2 <= reference.f2)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "point (" + std::to_string(p.f1) + ", " +
                      std::to_string(p.f2) + ") lies beyond the reference");
    }
  }
  std::sort(sorted.begin(), sorted.end(),
            [](const Objectives& a, const Objectives& b) {
              return a.f1 != b.f1 ? a.f1 < b.f1 : a.f2 < b.f2;
            });
  double area = 0.0;
  double ceiling = reference.f2;
  for (const Objectives& p : sorted) {
    if (p.f2 >= ceiling) continue;  // dominated by an earlier strip
    area += (reference.f1 - p.f1) * (ceiling - p.f2);
    ceiling = p.f2;
  }
  return area;
}

Objectives reference_point(std::span<const Objectives> points) {
  if (points.empty()) {
    throw Error(ErrorCode::kInvalidArgument,
                "reference point of an empty set");
  }
  Objectives worst = points.front();
  for (const Objectives& p : points) {
    worst.f1 = std::max(worst.f1, p.f1);
    worst.f2 = std::max(worst.f2, p.f2);
  }
  auto pad = [](double v) { return v + (v == 0.0 ? 0.1 : 0.1 * std::abs(v)); };
  return {pad(worst.f1), pad(worst.f2)};
}

}  // namespace geomoea
