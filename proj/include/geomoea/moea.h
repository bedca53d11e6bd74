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

// Evolutionary search over PLS partitions, plus the two comparison
// baselines: a particle-swarm search on a scalarized objective and a
// single-objective per-cell search under the strict bound.

#ifndef GEOMOEA_MOEA_H_
#define GEOMOEA_MOEA_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "geomoea/domain.h"
#include "geomoea/grid_partition.h"
#include "geomoea/pareto.h"
#include "geomoea/pls.h"
#include "geomoea/rng.h"

namespace geomoea {

struct MoeaConfig {
  int population = 40;
  int max_generations = 500;
  // Stop once HV grows by less than this for `patience` generations in a
  // row. Zero means 1e-6 of the initial HV.
  double hv_epsilon = 0.0;
  int patience = 10;
  int tournament_pool = 5;  // parents per crossover
  std::uint64_t seed = 1;

  void validate() const;
};

struct Individual {
  PlsPartition partition;
  Objectives objectives;  // (QLoss, -ExpErr)
  int rank = 0;
  double crowding = 0.0;
};

struct ParetoFront {
  // Non-dominated over everything evaluated in the run, ascending QLoss.
  std::vector<Individual> members;
  // HV of that set after initialization and after each generation.
  std::vector<double> hv_trace;
  Objectives reference;
  int generations = 0;
  bool converged = false;  // stopped by the HV rule rather than the cap
};

// Builds the matrix and stores both objectives on the partition.
Individual evaluate_partition(PlsPartition partition, const Domain& domain);

// Centers of the PLSs of `cell` in a partition (their medoids).
std::vector<std::size_t> cell_centers(const PlsPartition& partition, int cell);

// Per cell: draws k_i or k_i + 1 distinct centers from the pooled centers of
// the parents and regrows the cell. A cell that cannot be regrown falls back
// to a fresh randomized clustering.
PlsPartition crossover(std::span<const PlsPartition* const> parents,
                       const PartitionPlan& plan, const Domain& domain,
                       const PrivacyConfig& cfg, Rng& rng);

// Per cell: replaces ceil(k/2) centers by random cell members that are not
// centers yet and regrows the cell, with the same fallback.
PlsPartition mutate(const PlsPartition& parent, const PartitionPlan& plan,
                    const Domain& domain, const PrivacyConfig& cfg, Rng& rng);

// The shared initial population: individual i comes from stream
// (seed, 0, i).
std::vector<Individual> initial_population(const PartitionPlan& plan,
                                           const Domain& domain,
                                           const PrivacyConfig& cfg,
                                           const MoeaConfig& mcfg);

// Called after each generation with the generation number and HV.
using GenerationObserver = std::function<void(int, double)>;

ParetoFront evolve(const Domain& domain, const PartitionPlan& plan,
                   const PrivacyConfig& cfg, const MoeaConfig& mcfg,
                   const GenerationObserver& observer = {});
ParetoFront evolve(const Domain& domain, const PartitionTree& tree,
                   const PrivacyConfig& cfg, const MoeaConfig& mcfg);

struct PsoConfig {
  int particles = 40;
  int iterations = 40;
  double inertia = 0.7;
  double cognitive = 1.5;
  double social = 1.5;
  std::vector<double> alphas = {0.0, 0.1, 0.2, 0.3, 0.4, 0.5,
                                0.6, 0.7, 0.8, 0.9, 1.0};
  std::uint64_t seed = 1;
};

struct PsoSolution {
  double alpha = 0.0;
  double fitness = 0.0;  // alpha * QLoss - (1 - alpha) * ExpErr
  Individual best;
};

double pso_fitness(const Objectives& objectives, double alpha);

// There is no velocity over discrete partitions. Instead each particle
// rebuilds every cell from centers drawn out of its own, its personal-best
// and the global-best partition, with odds proportional to the inertia and
// the randomly scaled cognitive and social weights. Particles start from
// initial_population with population = particles.
std::vector<PsoSolution> pso_baseline(const Domain& domain,
                                      const PartitionPlan& plan,
                                      const PrivacyConfig& cfg,
                                      const PsoConfig& pcfg);

struct DpiveConfig {
  int runs = 20;  // strict clusterings tried per cell
  std::uint64_t seed = 1;
};

// Per cell, the strict clustering (every budget eps0) whose PLSs report only
// within the cell with the smallest quality loss.
Individual dpive_baseline(const Domain& domain, const PartitionPlan& plan,
                          const PrivacyConfig& cfg, const DpiveConfig& dcfg);

}  // namespace geomoea

#endif  // GEOMOEA_MOEA_H_
