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

#include "geomoea/moea.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <string>
#include <utility>

#include "geomoea/adversary.h"
#include "geomoea/error.h"
#include "geomoea/mechanism.h"
#include "geomoea/parallel.h"

namespace geomoea {
namespace {

// Stream tags, so that no two kinds of draw share a seed.
constexpr std::uint64_t kInitTag = 0x1417;
constexpr std::uint64_t kSelectTag = 0x5e1ec7;
constexpr std::uint64_t kOffspringTag = 0x0ff5;
constexpr std::uint64_t kPsoTag = 0x9507;
constexpr std::uint64_t kDpiveTag = 0xd41e;

bool contains(const std::vector<std::size_t>& v, std::size_t x) {
  return std::find(v.begin(), v.end(), x) != v.end();
}

// Tops `centers` up to k with random cell members that are not centers yet.
void pad_centers(std::vector<std::size_t>& centers, std::size_t k,
                 const Cell& cell, Rng& rng) {
  std::vector<std::size_t> rest;
  for (std::size_t x : cell.members) {
    if (!contains(centers, x)) rest.push_back(x);
  }
  while (centers.size() < k && !rest.empty()) {
    const std::size_t pick = rng.index(rest.size());
    centers.push_back(rest[pick]);
    rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(pick));
  }
}

std::size_t draw_k(const Cell& cell, const KSearch& ks, Rng& rng) {
  const std::size_t cap = std::max<std::size_t>(1, cell.members.size() / 2);
  const std::size_t k = static_cast<std::size_t>(ks.k) + (rng.coin() ? 1 : 0);
  return std::min(k, cap);
}

// Centers whose cluster ends up infeasible (usually starved by its
// neighbours) are swapped for random non-centers a few times before the cell
// is rebuilt from scratch.
constexpr int kRepairRounds = 5;

std::vector<Pls> regrow(const Cell& cell, const KSearch& ks,
                        std::vector<std::size_t> centers, const Domain& domain,
                        const PrivacyConfig& cfg, Rng& rng) {
  std::vector<std::size_t> failed;
  for (int round = 0; round <= kRepairRounds; ++round) {
    std::sort(centers.begin(), centers.end());
    if (auto plss = grow_with_retreats(cell, centers, domain, cfg,
                                       BoundRule::kLoose, &failed)) {
      return std::move(*plss);
    }
    if (failed.empty()) break;
    std::erase_if(centers, [&](std::size_t c) { return contains(failed, c); });
    const std::size_t k = centers.size() + failed.size();
    // Failed centers stay excluded from the refill.
    std::vector<std::size_t> taken = centers;
    taken.insert(taken.end(), failed.begin(), failed.end());
    pad_centers(taken, taken.size() + failed.size(), cell, rng);
    for (std::size_t t = k; t < taken.size(); ++t) centers.push_back(taken[t]);
    if (centers.size() < k) break;
  }
  return ret_c_cell(cell, ks, domain, cfg, rng.next());
}

std::vector<Objectives> objectives_of(const std::vector<Individual>& pop) {
  std::vector<Objectives> out;
  out.reserve(pop.size());
  for (const auto& ind : pop) out.push_back(ind.objectives);
  return out;
}

void assign_rank_and_crowding(std::vector<Individual>& pop) {
  const auto points = objectives_of(pop);
  const auto fronts = fast_nondominated_sort(points);
  for (std::size_t r = 0; r < fronts.size(); ++r) {
    const auto crowd = crowding_distance(points, fronts[r]);
    for (std::size_t k = 0; k < fronts[r].size(); ++k) {
      pop[fronts[r][k]].rank = static_cast<int>(r);
      pop[fronts[r][k]].crowding = crowd[k];
    }
  }
}

// Elitist truncation: whole fronts first, the last one by crowding.
std::vector<Individual> survivors(std::vector<Individual> merged,
                                  std::size_t n) {
  const auto points = objectives_of(merged);
  const auto fronts = fast_nondominated_sort(points);
  std::vector<Individual> next;
  next.reserve(n);
  for (const auto& front : fronts) {
    if (next.size() + front.size() <= n) {
      for (std::size_t i : front) next.push_back(std::move(merged[i]));
      continue;
    }
    const auto crowd = crowding_distance(points, front);
    std::vector<std::size_t> order(front.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) {
                       return crowd[a] > crowd[b];
                     });
    for (std::size_t k = 0; next.size() < n; ++k) {
      next.push_back(std::move(merged[front[order[k]]]));
    }
    break;
  }
  assign_rank_and_crowding(next);
  return next;
}

// Non-dominated archive of everything evaluated. Equal objective vectors
// keep the earlier entry.
class Archive {
 public:
  void offer(const Individual& ind) {
    for (const auto& a : members_) {
      if (a.objectives == ind.objectives ||
          dominates(a.objectives, ind.objectives)) {
        return;
      }
    }
    std::erase_if(members_, [&](const Individual& a) {
      return dominates(ind.objectives, a.objectives);
    });
    members_.push_back(ind);
  }

  double hypervolume(const Objectives& ref) const {
    std::vector<Objectives> inside;
    for (const auto& a : members_) {
      if (a.objectives.f1 <= ref.f1 && a.objectives.f2 <= ref.f2) {
        inside.push_back(a.objectives);
      }
    }
    return geomoea::hypervolume(inside, ref);
  }

  std::vector<Individual> take_sorted() {
    std::stable_sort(members_.begin(), members_.end(),
                     [](const Individual& a, const Individual& b) {
                       return a.objectives.f1 < b.objectives.f1;
                     });
    return std::move(members_);
  }

 private:
  std::vector<Individual> members_;
};

// The `count` individuals closest to pop[first] in objective space, each
// objective scaled by its population range; ties by index.
std::vector<std::size_t> mates(const std::vector<Individual>& pop,
                               std::size_t first, int count) {
  double lo1 = pop[0].objectives.f1, hi1 = lo1;
  double lo2 = pop[0].objectives.f2, hi2 = lo2;
  for (const auto& ind : pop) {
    lo1 = std::min(lo1, ind.objectives.f1);
    hi1 = std::max(hi1, ind.objectives.f1);
    lo2 = std::min(lo2, ind.objectives.f2);
    hi2 = std::max(hi2, ind.objectives.f2);
  }
  const double s1 = hi1 > lo1 ? hi1 - lo1 : 1.0;
  const double s2 = hi2 > lo2 ? hi2 - lo2 : 1.0;
  std::vector<std::pair<double, std::size_t>> order;
  for (std::size_t i = 0; i < pop.size(); ++i) {
    if (i == first) continue;
    const double a = (pop[i].objectives.f1 - pop[first].objectives.f1) / s1;
    const double b = (pop[i].objectives.f2 - pop[first].objectives.f2) / s2;
    order.emplace_back(a * a + b * b, i);
  }
  std::sort(order.begin(), order.end());
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < order.size() && out.size() < static_cast<std::size_t>(std::max(count, 0)); ++k) {
    out.push_back(order[k].second);
  }
  return out;
}

}  // namespace

void MoeaConfig::validate() const {
  if (population < 4 || population % 2 != 0) {
    throw Error(ErrorCode::kInvalidConfig,
                "population must be even and at least 4, got " +
                    std::to_string(population));
  }
  if (max_generations < 1) {
    throw Error(ErrorCode::kInvalidConfig, "max_generations must be >= 1");
  }
  if (patience < 1) {
    throw Error(ErrorCode::kInvalidConfig, "patience must be >= 1");
  }
  if (tournament_pool < 1) {
    throw Error(ErrorCode::kInvalidConfig, "tournament_pool must be >= 1");
  }
  if (!(hv_epsilon >= 0.0)) {
    throw Error(ErrorCode::kInvalidConfig, "hv_epsilon must be >= 0");
  }
}

Individual evaluate_partition(PlsPartition partition, const Domain& domain) {
  const ObfuscationMatrix matrix = build_matrix(partition, domain);
  const Evaluation e = evaluate(domain, matrix);
  partition.objectives = ObjectivePair{e.qloss, e.exp_err};
  Individual ind;
  ind.objectives = {e.qloss, -e.exp_err};
  ind.partition = std::move(partition);
  return ind;
}

std::vector<std::size_t> cell_centers(const PlsPartition& partition,
                                      int cell) {
  std::vector<std::size_t> out;
  for (const Pls& p : partition.plss) {
    if (p.cell == cell) out.push_back(p.center);
  }
  return out;
}

PlsPartition crossover(std::span<const PlsPartition* const> parents,
                       const PartitionPlan& plan, const Domain& domain,
                       const PrivacyConfig& cfg, Rng& rng) {
  if (parents.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "crossover needs parents");
  }
  const auto& cells = plan.tree.cells;
  std::vector<std::vector<Pls>> per_cell(cells.size());
  for (std::size_t i = 0; i < cells.size(); ++i) {
    std::vector<std::size_t> pool;
    for (const PlsPartition* p : parents) {
      for (std::size_t c : cell_centers(*p, cells[i].id)) pool.push_back(c);
    }
    std::sort(pool.begin(), pool.end());
    pool.erase(std::unique(pool.begin(), pool.end()), pool.end());
    const std::size_t k = draw_k(cells[i], plan.cells[i], rng);
    std::vector<std::size_t> centers;
    for (std::size_t t = 0; t < k && !pool.empty(); ++t) {
      const std::size_t pick = rng.index(pool.size());
      centers.push_back(pool[pick]);
      pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(pick));
    }
    pad_centers(centers, k, cells[i], rng);
    per_cell[i] = regrow(cells[i], plan.cells[i], std::move(centers), domain,
                         cfg, rng);
  }
  return assemble_partition(std::move(per_cell), domain, cfg);
}

PlsPartition mutate(const PlsPartition& parent, const PartitionPlan& plan,
                    const Domain& domain, const PrivacyConfig& cfg, Rng& rng) {
  const auto& cells = plan.tree.cells;
  std::vector<std::vector<Pls>> per_cell(cells.size());
  for (std::size_t i = 0; i < cells.size(); ++i) {
    std::vector<std::size_t> centers = cell_centers(parent, cells[i].id);
    const std::size_t k = centers.size();
    const std::size_t replace = (k + 1) / 2;
    // Drop `replace` random centers, then refill from non-centers, which
    // also excludes the dropped ones.
    std::vector<std::size_t> dropped;
    for (std::size_t t = 0; t < replace; ++t) {
      const std::size_t pick = rng.index(centers.size());
      dropped.push_back(centers[pick]);
      centers.erase(centers.begin() + static_cast<std::ptrdiff_t>(pick));
    }
    std::vector<std::size_t> taken = centers;
    taken.insert(taken.end(), dropped.begin(), dropped.end());
    pad_centers(taken, k + replace, cells[i], rng);
    for (std::size_t t = k; t < taken.size(); ++t) centers.push_back(taken[t]);
    // A cell too small to offer new members keeps the dropped ones.
    for (std::size_t t = 0; centers.size() < k; ++t) {
      centers.push_back(dropped[t]);
    }
    per_cell[i] = regrow(cells[i], plan.cells[i], std::move(centers), domain,
                         cfg, rng);
  }
  return assemble_partition(std::move(per_cell), domain, cfg);
}

std::vector<Individual> initial_population(const PartitionPlan& plan,
                                           const Domain& domain,
                                           const PrivacyConfig& cfg,
                                           const MoeaConfig& mcfg) {
  const auto n = static_cast<std::size_t>(mcfg.population);
  std::vector<Individual> pop(n);
  parallel_for(n, [&](std::size_t i) {
    const std::uint64_t s = derive_seed(mcfg.seed, {0, i, kInitTag});
    pop[i] = evaluate_partition(ret_c(plan, domain, cfg, s), domain);
  });
  return pop;
}

ParetoFront evolve(const Domain& domain, const PartitionPlan& plan,
                   const PrivacyConfig& cfg, const MoeaConfig& mcfg,
                   const GenerationObserver& observer) {
  cfg.validate();
  mcfg.validate();
  const auto n = static_cast<std::size_t>(mcfg.population);
  std::vector<Individual> pop = initial_population(plan, domain, cfg, mcfg);
  assign_rank_and_crowding(pop);

  ParetoFront result;
  result.reference = reference_point(objectives_of(pop));
  Archive archive;
  for (const auto& ind : pop) archive.offer(ind);
  double hv = archive.hypervolume(result.reference);
  result.hv_trace.push_back(hv);
  const double hv_eps = mcfg.hv_epsilon > 0.0 ? mcfg.hv_epsilon
                        : hv > 0.0             ? 1e-6 * hv
                                               : 1e-12;

  int stalled = 0;
  for (int gen = 1; gen <= mcfg.max_generations; ++gen) {
    std::vector<int> rank(n);
    std::vector<double> crowd(n);
    for (std::size_t i = 0; i < n; ++i) {
      rank[i] = pop[i].rank;
      crowd[i] = pop[i].crowding;
    }
    // Parents are drawn serially from one stream; offspring are built in
    // parallel, each from its own (generation, slot) stream.
    Rng select(derive_seed(mcfg.seed, {static_cast<std::uint64_t>(gen),
                                       kSelectTag}));
    const std::size_t n_cross = n / 2;
    std::vector<std::vector<std::size_t>> parents(n);
    for (std::size_t s = 0; s < n; ++s) {
      const std::size_t first = binary_tournament(rank, crowd, select);
      parents[s].push_back(first);
      if (s < n_cross) {
        for (std::size_t p : mates(pop, first, mcfg.tournament_pool - 1)) {
          parents[s].push_back(p);
        }
      }
    }
    std::vector<Individual> offspring(n);
    parallel_for(n, [&](std::size_t s) {
      Rng rng(derive_seed(mcfg.seed,
                          {static_cast<std::uint64_t>(gen), s, kOffspringTag}));
      PlsPartition child;
      if (s < n_cross) {
        std::vector<const PlsPartition*> ps;
        for (std::size_t p : parents[s]) ps.push_back(&pop[p].partition);
        child = crossover(ps, plan, domain, cfg, rng);
      } else {
        child = mutate(pop[parents[s][0]].partition, plan, domain, cfg, rng);
      }
      offspring[s] = evaluate_partition(std::move(child), domain);
    });
    for (const auto& ind : offspring) archive.offer(ind);

    std::vector<Individual> merged = std::move(pop);
    for (auto& ind : offspring) merged.push_back(std::move(ind));
    pop = survivors(std::move(merged), n);

    const double next_hv = archive.hypervolume(result.reference);
    stalled = next_hv - hv < hv_eps ? stalled + 1 : 0;
    hv = next_hv;
    result.hv_trace.push_back(hv);
    result.generations = gen;
    if (observer) observer(gen, hv);
    if (stalled >= mcfg.patience) {
      result.converged = true;
      break;
    }
  }
  result.members = archive.take_sorted();
  assign_rank_and_crowding(result.members);
  return result;
}

ParetoFront evolve(const Domain& domain, const PartitionTree& tree,
                   const PrivacyConfig& cfg, const MoeaConfig& mcfg) {
  return evolve(domain, plan_partition(tree, domain, cfg, mcfg.seed), cfg,
                mcfg);
}

double pso_fitness(const Objectives& objectives, double alpha) {
  // objectives.f2 is already -ExpErr.
  return alpha * objectives.f1 + (1.0 - alpha) * objectives.f2;
}

std::vector<PsoSolution> pso_baseline(const Domain& domain,
                                      const PartitionPlan& plan,
                                      const PrivacyConfig& cfg,
                                      const PsoConfig& pcfg) {
  if (pcfg.particles < 1 || pcfg.iterations < 0) {
    throw Error(ErrorCode::kInvalidConfig,
                "PSO needs at least one particle and a non-negative "
                "iteration count");
  }
  for (double a : pcfg.alphas) {
    if (!(a >= 0.0 && a <= 1.0)) {
      throw Error(ErrorCode::kInvalidConfig, "PSO alpha outside [0, 1]");
    }
  }
  const auto n = static_cast<std::size_t>(pcfg.particles);
  MoeaConfig init_cfg;
  init_cfg.population = pcfg.particles;
  init_cfg.seed = pcfg.seed;
  const std::vector<Individual> init =
      initial_population(plan, domain, cfg, init_cfg);
  const auto& cells = plan.tree.cells;

  std::vector<PsoSolution> out;
  for (std::size_t ai = 0; ai < pcfg.alphas.size(); ++ai) {
    const double alpha = pcfg.alphas[ai];
    auto fit = [&](const Individual& ind) {
      return pso_fitness(ind.objectives, alpha);
    };
    std::vector<Individual> current = init;
    std::vector<Individual> pbest = init;
    std::size_t g = 0;
    for (std::size_t p = 1; p < n; ++p) {
      if (fit(pbest[p]) < fit(pbest[g])) g = p;
    }
    Individual gbest = pbest[g];

    for (int it = 1; it <= pcfg.iterations; ++it) {
      std::vector<Individual> moved(n);
      parallel_for(n, [&](std::size_t p) {
        Rng rng(derive_seed(pcfg.seed, {kPsoTag, ai,
                                        static_cast<std::uint64_t>(it), p}));
        const double weights[3] = {pcfg.inertia,
                                   pcfg.cognitive * rng.uniform01(),
                                   pcfg.social * rng.uniform01()};
        const double total = weights[0] + weights[1] + weights[2];
        const PlsPartition* sources[3] = {&current[p].partition,
                                          &pbest[p].partition,
                                          &gbest.partition};
        std::vector<std::vector<Pls>> per_cell(cells.size());
        for (std::size_t i = 0; i < cells.size(); ++i) {
          std::vector<std::size_t> pools[3];
          for (int s = 0; s < 3; ++s) {
            pools[s] = cell_centers(*sources[s], cells[i].id);
          }
          const std::size_t k = draw_k(cells[i], plan.cells[i], rng);
          std::vector<std::size_t> centers;
          while (centers.size() < k) {
            double u = rng.uniform01() * total;
            int s = 0;
            while (s < 2 && u >= weights[s]) u -= weights[s++];
            // Fall through to the next source that still has a fresh center.
            std::optional<std::size_t> pick;
            for (int tries = 0; tries < 3 && !pick; ++tries) {
              auto& pool = pools[(s + tries) % 3];
              std::erase_if(pool, [&](std::size_t c) {
                return contains(centers, c);
              });
              if (!pool.empty()) pick = pool[rng.index(pool.size())];
            }
            if (!pick) break;
            centers.push_back(*pick);
          }
          pad_centers(centers, k, cells[i], rng);
          per_cell[i] = regrow(cells[i], plan.cells[i], std::move(centers),
                               domain, cfg, rng);
        }
        moved[p] = evaluate_partition(
            assemble_partition(std::move(per_cell), domain, cfg), domain);
      });
      current = std::move(moved);
      for (std::size_t p = 0; p < n; ++p) {
        if (fit(current[p]) < fit(pbest[p])) pbest[p] = current[p];
      }
      for (std::size_t p = 0; p < n; ++p) {
        if (fit(pbest[p]) < fit(gbest)) gbest = pbest[p];
      }
    }
    out.push_back({alpha, fit(gbest), std::move(gbest)});
  }
  return out;
}

Individual dpive_baseline(const Domain& domain, const PartitionPlan& plan,
                          const PrivacyConfig& cfg, const DpiveConfig& dcfg) {
  cfg.validate();
  const auto& cells = plan.tree.cells;
  std::vector<std::vector<Pls>> per_cell(cells.size());
  std::vector<std::optional<Error>> failures(cells.size());

  // Quality loss of one cell when every PLS reports over the whole cell.
  auto cell_qloss = [&](const Cell& cell, const std::vector<Pls>& plss) {
    std::vector<double> dist(cell.members.size());
    double total = 0.0;
    for (const Pls& p : plss) {
      const double eps_g = p.epsilon / (2.0 * p.diameter);
      for (std::size_t x : p.members) {
        for (std::size_t t = 0; t < cell.members.size(); ++t) {
          dist[t] = domain.distance(x, cell.members[t]);
        }
        total += domain.prior(x) * kernel_quality_loss(dist, eps_g);
      }
    }
    return total;
  };

  parallel_for(cells.size(), [&](std::size_t i) {
    try {
      const Cell& cell = cells[i];
      // The certified k-search clustering is always a strict candidate.
      std::vector<Pls> best;
      for (const auto& cluster : plan.cells[i].clustering) {
        auto pls = make_pls(cluster, cell.id, domain, cfg);
        if (!pls || !meets_strict_bound(pls->e_prime, cfg)) {
          throw Error(ErrorCode::kCellInfeasible,
                      "cell " + std::to_string(cell.id) +
                          " has no strict clustering");
        }
        pls->epsilon = cfg.epsilon0;
        best.push_back(std::move(*pls));
      }
      double best_loss = cell_qloss(cell, best);
      for (int r = 0; r < dcfg.runs; ++r) {
        const std::uint64_t s =
            derive_seed(dcfg.seed, {kDpiveTag, i, static_cast<std::uint64_t>(r)});
        auto plss = ret_c_cell(cell, plan.cells[i], domain, cfg, s,
                               BoundRule::kStrict);
        const double loss = cell_qloss(cell, plss);
        if (loss < best_loss) {
          best_loss = loss;
          best = std::move(plss);
        }
      }
      std::sort(best.begin(), best.end(), [](const Pls& a, const Pls& b) {
        return a.members.front() < b.members.front();
      });
      per_cell[i] = std::move(best);
    } catch (const Error& e) {
      failures[i] = e;
    }
  });
  for (auto& f : failures) {
    if (f) throw *f;
  }

  PlsPartition partition = assemble_partition(std::move(per_cell), domain, cfg);
  for (std::size_t j = 0; j < partition.plss.size(); ++j) {
    const int cell = partition.plss[j].cell;
    partition.reporting_ranges[j] = cells[static_cast<std::size_t>(cell)].members;
  }
  Individual ind = evaluate_partition(std::move(partition), domain);
  std::vector<Individual> one{ind};
  assign_rank_and_crowding(one);
  return one.front();
}

}  // namespace geomoea
