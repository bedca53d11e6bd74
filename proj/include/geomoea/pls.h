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

// Protection Location Sets (PLSs): groups of nearby locations inside one
// cell among which the mechanism is differentially private. A PLS with
// intrinsic error E'(PLS) gets the budget min(ln(E'/E_m), eps0), which keeps
// the adversary's conditional expected error at or above E_m.

#ifndef GEOMOEA_PLS_H_
#define GEOMOEA_PLS_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "geomoea/domain.h"
#include "geomoea/grid_partition.h"
#include "geomoea/rng.h"

namespace geomoea {

struct PrivacyConfig {
  double epsilon0 = 1.0;
  double e_m = 0.1;  // km
  std::size_t n0 = 33;
  std::size_t min_report_locations = 50;
  std::size_t min_report_plss = 2;
  // Minimize E' over the owning cell only instead of the whole domain.
  // Faster, but the error floor is then no longer certified.
  bool cell_restricted_estimator = false;
  int kmeans_restarts = 10;
  int retc_attempts = 20;

  void validate() const;
};

struct Pls {
  std::vector<std::size_t> members;  // domain indices, ascending
  int cell = 0;
  double diameter = 0.0;  // km, max pairwise member distance
  double e_prime = 0.0;   // km
  double epsilon = 0.0;
  std::size_t center = 0;  // medoid, used to reseed clustering
};

struct ObjectivePair {
  double qloss = 0.0;    // km
  double exp_err = 0.0;  // km
};

struct PlsPartition {
  std::vector<Pls> plss;
  // Reporting range of each PLS: ascending domain indices, always a union of
  // whole PLSs including its own.
  std::vector<std::vector<std::size_t>> reporting_ranges;
  // PLS index of every domain location.
  std::vector<int> owner;
  std::optional<ObjectivePair> objectives;

  // Indices into `plss` of the PLSs that belong to `cell`.
  std::vector<std::size_t> plss_in_cell(int cell) const;
};

// Prior-weighted distortion of the best point estimate against `members`.
// The estimate ranges over `candidates` (empty: the whole domain).
double e_prime(std::span<const std::size_t> members, const Domain& domain,
               std::span<const std::size_t> candidates = {});

// min(ln(e_prime / E_m), eps0), or nullopt when that is not positive.
std::optional<double> allocate_epsilon(double e_prime, const PrivacyConfig& cfg);

// E' >= e^eps0 * E_m: the budget can be the full eps0.
bool meets_strict_bound(double e_prime, const PrivacyConfig& cfg);

double diameter(std::span<const std::size_t> members, const Domain& domain);

// Member minimizing the summed distance to the others, ties by lowest index.
std::size_t medoid(std::span<const std::size_t> members, const Domain& domain);

// Builds a PLS with its cached geometry and budget. nullopt when the set is
// infeasible: fewer than 2 members, zero diameter, or E' <= E_m.
std::optional<Pls> make_pls(std::vector<std::size_t> members, int cell,
                            const Domain& domain, const PrivacyConfig& cfg,
                            std::span<const std::size_t> candidates = {});

struct KSearch {
  int k = 1;
  // The clustering that certified k; every cluster meets the strict bound.
  std::vector<std::vector<std::size_t>> clustering;
};

// Largest k in [1, |cell|/2] for which one of cfg.kmeans_restarts k-means++
// runs yields clusters of size >= 2 that all meet the strict bound. Throws
// kCellInfeasible when even the whole cell fails.
KSearch find_k(const Cell& cell, const Domain& domain, const PrivacyConfig& cfg,
               Rng& rng);

// Per-cell k search results for a tree, computed once and shared by every
// individual in a run.
struct PartitionPlan {
  PartitionTree tree;
  std::vector<KSearch> cells;
};

PartitionPlan plan_partition(PartitionTree tree, const Domain& domain,
                             const PrivacyConfig& cfg, std::uint64_t seed);

enum class BoundRule {
  // Adaptive budgets: clusters retreat to their best historical state.
  kLoose,
  // Every PLS must meet the strict bound and uses eps0.
  kStrict,
};

// Assignment-with-retreats for one cell, grown from `centers` (one cluster
// per center). Unassigned locations join the cluster at the smallest
// single-linkage distance, one at a time. When a cluster first meets the
// strict bound, the active cluster with the largest historical
// eps_g = eps / (2 D) is frozen at that historical state and the locations
// it gained afterwards go back to the pool. Returns nullopt if the final
// clusters are not all feasible; `failed_centers` then receives the centers
// of the clusters that failed.
std::optional<std::vector<Pls>> grow_with_retreats(
    const Cell& cell, std::span<const std::size_t> centers,
    const Domain& domain, const PrivacyConfig& cfg,
    BoundRule rule = BoundRule::kLoose,
    std::vector<std::size_t>* failed_centers = nullptr);

// Randomized clustering of one cell: up to cfg.retc_attempts draws of
// k in {k_i, k_i + 1} random centers, then the k-search clustering as a
// deterministic fallback. Attempt streams derive from (seed, cell, attempt).
std::vector<Pls> ret_c_cell(const Cell& cell, const KSearch& plan,
                            const Domain& domain, const PrivacyConfig& cfg,
                            std::uint64_t seed,
                            BoundRule rule = BoundRule::kLoose);

// Whole-domain partition with reporting ranges.
PlsPartition ret_c(const PartitionPlan& plan, const Domain& domain,
                   const PrivacyConfig& cfg, std::uint64_t seed);
PlsPartition ret_c(const PartitionTree& tree, const Domain& domain,
                   const PrivacyConfig& cfg, std::uint64_t seed);

// Concatenates per-cell PLS lists (in cell order) and builds the ranges.
PlsPartition assemble_partition(std::vector<std::vector<Pls>> per_cell,
                                const Domain& domain, const PrivacyConfig& cfg);

// Grows each range from its own PLS by absorbing whole PLSs in order of
// centroid distance until it holds at least cfg.min_report_plss PLSs and
// cfg.min_report_locations locations, or everything.
PlsPartition build_reporting_ranges(PlsPartition partition,
                                    const Domain& domain,
                                    const PrivacyConfig& cfg);

// Every invariant of a partition that does not hold, as readable messages.
// Empty means valid.
std::vector<std::string> partition_violations(const PlsPartition& partition,
                                              const Domain& domain,
                                              const PrivacyConfig& cfg,
                                              const PartitionTree* tree = nullptr);

}  // namespace geomoea

#endif  // GEOMOEA_PLS_H_
