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

#include "geomoea/sc_sim.h"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "geomoea/error.h"

namespace geomoea {
namespace {

constexpr std::uint64_t kWorkerTag = 0x3041;
constexpr std::uint64_t kTaskTag = 0x7a5c;
constexpr std::uint64_t kPseudoTag = 0x95e0;
constexpr std::uint64_t kAssignTag = 0xa551;

constexpr double kDenseShare = 0.2;   // of locations
constexpr double kDenseQuota = 0.8;   // of workers

}  // namespace

WorkerPool spawn_workers(const Domain& domain, int count, WorkerMode mode,
                         Rng& rng) {
  if (count < 1) {
    throw Error(ErrorCode::kInvalidConfig, "need at least one worker");
  }
  WorkerPool pool;
  std::vector<std::size_t> sparse;
  int dense_count = 0;
  if (mode == WorkerMode::kOneToFour) {
    // Square around a random location, grown until it holds 20% of the
    // locations.
    const Location& c = domain.location(rng.index(domain.size()));
    std::vector<std::pair<double, std::size_t>> order;
    order.reserve(domain.size());
    for (std::size_t i = 0; i < domain.size(); ++i) {
      const Location& l = domain.location(i);
      order.emplace_back(std::max(std::abs(l.x - c.x), std::abs(l.y - c.y)), i);
    }
    std::sort(order.begin(), order.end());
    const auto take = static_cast<std::size_t>(
        std::ceil(kDenseShare * static_cast<double>(domain.size())));
    for (std::size_t k = 0; k < order.size(); ++k) {
      (k < take ? pool.dense_locations : sparse).push_back(order[k].second);
    }
    std::sort(pool.dense_locations.begin(), pool.dense_locations.end());
    std::sort(sparse.begin(), sparse.end());
    dense_count = static_cast<int>(std::lround(kDenseQuota * count));
    if (sparse.empty()) dense_count = count;
  }
  pool.workers.reserve(static_cast<std::size_t>(count));
  for (int w = 0; w < count; ++w) {
    std::size_t at;
    if (mode == WorkerMode::kUniform) {
      at = rng.index(domain.size());
    } else if (w < dense_count) {
      at = pool.dense_locations[rng.index(pool.dense_locations.size())];
    } else {
      at = sparse[rng.index(sparse.size())];
    }
    pool.workers.push_back({w, at, at, true});
  }
  return pool;
}

std::vector<Task> spawn_tasks(const Domain& domain, int count, Rng& rng) {
  if (count < 0) throw Error(ErrorCode::kInvalidConfig, "negative task count");
  std::vector<Task> tasks;
  tasks.reserve(static_cast<std::size_t>(count));
  for (int t = 0; t < count; ++t) tasks.push_back({t, rng.index(domain.size())});
  return tasks;
}

std::vector<const Worker*> geocast(const Task& task,
                                   const std::vector<Worker>& workers,
                                   const Domain& domain, int k) {
  std::vector<std::pair<double, const Worker*>> idle;
  for (const Worker& w : workers) {
    if (w.idle) {
      idle.emplace_back(domain.distance(task.location, w.pseudo_location), &w);
    }
  }
  if (idle.empty()) {
    throw Error(ErrorCode::kNoWorker,
                "no idle worker for task " + std::to_string(task.id));
  }
  const std::size_t take = std::min<std::size_t>(idle.size(), std::max(k, 1));
  std::partial_sort(idle.begin(), idle.begin() + static_cast<std::ptrdiff_t>(take),
                    idle.end(), [](const auto& a, const auto& b) {
                      return a.first != b.first ? a.first < b.first
                                                : a.second->id < b.second->id;
                    });
  std::vector<const Worker*> out;
  for (std::size_t i = 0; i < take; ++i) out.push_back(idle[i].second);
  return out;
}

Assignment assign(const Task& task, const std::vector<const Worker*>& candidates,
                  std::vector<Worker>& workers, const Domain& domain, Rng& rng,
                  const AssignOptions& options) {
  if (candidates.empty()) {
    throw Error(ErrorCode::kNoWorker,
                "no candidate for task " + std::to_string(task.id));
  }
  std::size_t pick = 0;
  if (options.distance_weighted) {
    std::vector<double> w;
    double total = 0.0;
    for (const Worker* c : candidates) {
      w.push_back(1.0 / std::max(domain.distance(task.location, c->true_location), 1e-6));
      total += w.back();
    }
    double u = rng.uniform01() * total;
    while (pick + 1 < w.size() && u >= w[pick]) u -= w[pick++];
  } else {
    pick = rng.index(candidates.size());
  }
  const Worker& chosen = *candidates[pick];
  Assignment a{task.id, chosen.id,
               domain.distance(task.location, chosen.true_location)};
  if (!options.shared_workers) {
    for (Worker& w : workers) {
      if (w.id == chosen.id) w.idle = false;
    }
  }
  return a;
}

SimulationResult run_simulation(const Domain& domain,
                                const ObfuscationMatrix* matrix,
                                const SimulationConfig& cfg) {
  if (matrix && matrix->size() != domain.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "matrix does not match the domain");
  }
  Rng worker_rng(derive_seed(cfg.seed, {kWorkerTag}));
  Rng task_rng(derive_seed(cfg.seed, {kTaskTag}));
  Rng assign_rng(derive_seed(cfg.seed, {kAssignTag}));
  WorkerPool pool = spawn_workers(domain, cfg.workers, cfg.mode, worker_rng);
  const std::vector<Task> tasks = spawn_tasks(domain, cfg.tasks, task_rng);
  if (matrix) {
    for (Worker& w : pool.workers) {
      Rng r(derive_seed(cfg.seed,
                        {kPseudoTag, static_cast<std::uint64_t>(w.id)}));
      w.pseudo_location = sample_pseudo(*matrix, w.true_location, r);
    }
  }
  SimulationResult result;
  double total = 0.0;
  for (const Task& t : tasks) {
    const auto candidates = geocast(t, pool.workers, domain, cfg.geocast_k);
    result.assignments.push_back(
        assign(t, candidates, pool.workers, domain, assign_rng, cfg.assign));
    total += result.assignments.back().wtd;
  }
  if (!tasks.empty()) total /= static_cast<double>(tasks.size());
  result.mean_wtd = total;
  return result;
}

}  // namespace geomoea
