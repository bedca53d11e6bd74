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

// Spatial-crowdsourcing simulation: idle workers report obfuscated
// locations, the server geocasts each task to the nearest reported workers,
// and one of them travels to the task.

#ifndef GEOMOEA_SC_SIM_H_
#define GEOMOEA_SC_SIM_H_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "geomoea/domain.h"
#include "geomoea/mechanism.h"
#include "geomoea/rng.h"

namespace geomoea {

struct Worker {
  int id = 0;
  std::size_t true_location = 0;    // domain index
  std::size_t pseudo_location = 0;  // domain index
  bool idle = true;
};

struct Task {
  int id = 0;
  std::size_t location = 0;  // domain index, exposed as is
};

struct Assignment {
  int task_id = 0;
  int worker_id = 0;
  double wtd = 0.0;  // km, true worker location to task
};

enum class WorkerMode {
  kUniform,
  // 80% of workers inside a random axis-aligned region holding 20% of the
  // locations, the rest over the other locations.
  kOneToFour,
};

struct WorkerPool {
  std::vector<Worker> workers;
  // Domain indices of the dense region (empty in uniform mode).
  std::vector<std::size_t> dense_locations;
};

// Workers start at their true location as pseudo location and idle.
WorkerPool spawn_workers(const Domain& domain, int count, WorkerMode mode,
                         Rng& rng);

std::vector<Task> spawn_tasks(const Domain& domain, int count, Rng& rng);

// The min(k, idle) idle workers nearest to the task by pseudo location, ties
// by worker id. Throws kNoWorker when nobody is idle.
std::vector<const Worker*> geocast(const Task& task,
                                   const std::vector<Worker>& workers,
                                   const Domain& domain, int k = 3);

struct AssignOptions {
  // Responder odds proportional to 1 / true distance instead of uniform.
  bool distance_weighted = false;
  // Workers stay idle after an assignment and can serve several tasks.
  bool shared_workers = true;
};

Assignment assign(const Task& task, const std::vector<const Worker*>& candidates,
                  std::vector<Worker>& workers, const Domain& domain, Rng& rng,
                  const AssignOptions& options = {});

struct SimulationConfig {
  int workers = 100;
  int tasks = 200;
  WorkerMode mode = WorkerMode::kUniform;
  int geocast_k = 3;
  AssignOptions assign;
  std::uint64_t seed = 1;
};

struct SimulationResult {
  std::vector<Assignment> assignments;
  double mean_wtd = 0.0;
};

// Workers and tasks come from the config seed, so runs that differ only in
// `matrix` see the same population. A null matrix is the non-private
// baseline: workers report their true locations.
SimulationResult run_simulation(const Domain& domain,
                                const ObfuscationMatrix* matrix,
                                const SimulationConfig& cfg);

}  // namespace geomoea

#endif  // GEOMOEA_SC_SIM_H_
