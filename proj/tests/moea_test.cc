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
#include <vector>

#include <gtest/gtest.h>

#include "geomoea/adversary.h"
#include "geomoea/error.h"
#include "geomoea/mechanism.h"
#include "geomoea/parallel.h"
#include "test_util.h"

namespace geomoea {
namespace {

// 132 uniform locations, four cells of 33: small enough for whole runs.
struct Small {
  Domain domain;
  PrivacyConfig cfg;
  PartitionPlan plan;
};

const Small& small() {
  static const Small s = [] {
    DatasetSpec spec;
    spec.synthetic.count = 132;
    spec.synthetic.bounds = {0.0, 0.0, 6.0, 5.0};
    spec.seed = 3;
    Domain d = load_domain(spec);
    PrivacyConfig cfg;
    PartitionPlan plan = plan_partition(binary_partition(d, cfg.n0), d, cfg, 3);
    return Small{std::move(d), cfg, std::move(plan)};
  }();
  return s;
}

std::size_t plss_in(const PlsPartition& p, int cell) {
  return p.plss_in_cell(cell).size();
}

TEST(Crossover, PlsCountsAreKOrKPlusOne) {
  const Small& s = small();
  MoeaConfig mcfg;
  mcfg.population = 5;
  const auto pop = initial_population(s.plan, s.domain, s.cfg, mcfg);
  std::vector<const PlsPartition*> parents;
  for (const auto& ind : pop) parents.push_back(&ind.partition);
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Rng rng(seed);
    const PlsPartition child =
        crossover(parents, s.plan, s.domain, s.cfg, rng);
    ASSERT_TRUE(partition_violations(child, s.domain, s.cfg, &s.plan.tree).empty());
    for (std::size_t c = 0; c < s.plan.cells.size(); ++c) {
      const std::size_t k = s.plan.cells[c].k;
      const std::size_t got = plss_in(child, static_cast<int>(c));
      EXPECT_TRUE(got == k || got == k + 1) << "cell " << c << " has " << got;
    }
    const Individual ind = evaluate_partition(child, s.domain);
    EXPECT_TRUE(std::isfinite(ind.objectives.f1));
    EXPECT_TRUE(std::isfinite(ind.objectives.f2));
  }
}

TEST(Crossover, IdenticalParentsGiveValidChildren) {
  const Small& s = small();
  const PlsPartition base = ret_c(s.plan, s.domain, s.cfg, 9);
  std::vector<const PlsPartition*> parents(5, &base);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    Rng rng(seed);
    const PlsPartition child =
        crossover(parents, s.plan, s.domain, s.cfg, rng);
    EXPECT_TRUE(partition_violations(child, s.domain, s.cfg, &s.plan.tree).empty());
  }
}

TEST(Mutate, ValidAndDeterministic) {
  const Small& s = small();
  const PlsPartition base = ret_c(s.plan, s.domain, s.cfg, 2);
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    Rng a(seed), b(seed);
    const PlsPartition x = mutate(base, s.plan, s.domain, s.cfg, a);
    const PlsPartition y = mutate(base, s.plan, s.domain, s.cfg, b);
    EXPECT_TRUE(partition_violations(x, s.domain, s.cfg, &s.plan.tree).empty());
    ASSERT_EQ(x.plss.size(), y.plss.size());
    for (std::size_t k = 0; k < x.plss.size(); ++k) {
      EXPECT_EQ(x.plss[k].members, y.plss[k].members);
    }
  }
}

TEST(Mutate, ChangesCenters) {
  const Small& s = small();
  const PlsPartition base = ret_c(s.plan, s.domain, s.cfg, 4);
  int changed = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Rng rng(seed);
    const PlsPartition x = mutate(base, s.plan, s.domain, s.cfg, rng);
    for (std::size_t c = 0; c < s.plan.cells.size(); ++c) {
      changed += cell_centers(x, static_cast<int>(c)) !=
                 cell_centers(base, static_cast<int>(c));
    }
  }
  EXPECT_GT(changed, 0);
}

TEST(CellCenters, AreMedoids) {
  const Small& s = small();
  const PlsPartition p = ret_c(s.plan, s.domain, s.cfg, 1);
  for (std::size_t c = 0; c < s.plan.cells.size(); ++c) {
    const auto centers = cell_centers(p, static_cast<int>(c));
    const auto idx = p.plss_in_cell(static_cast<int>(c));
    ASSERT_EQ(centers.size(), idx.size());
    for (std::size_t i = 0; i < idx.size(); ++i) {
      EXPECT_EQ(centers[i], medoid(p.plss[idx[i]].members, s.domain));
    }
  }
}

TEST(Evolve, TraceFrontAndDeterminism) {
  const Small& s = small();
  MoeaConfig mcfg;
  mcfg.population = 12;
  mcfg.max_generations = 8;
  mcfg.seed = 5;
  std::vector<double> seen;
  const ParetoFront front =
      evolve(s.domain, s.plan, s.cfg, mcfg,
             [&](int, double hv) { seen.push_back(hv); });
  ASSERT_EQ(front.hv_trace.size(), static_cast<std::size_t>(front.generations) + 1);
  EXPECT_EQ(seen.size(), static_cast<std::size_t>(front.generations));
  for (std::size_t g = 1; g < front.hv_trace.size(); ++g) {
    EXPECT_GE(front.hv_trace[g], front.hv_trace[g - 1]);
  }
  ASSERT_FALSE(front.members.empty());
  std::vector<Objectives> objs;
  for (const auto& m : front.members) {
    objs.push_back(m.objectives);
    EXPECT_TRUE(partition_violations(m.partition, s.domain, s.cfg, &s.plan.tree).empty());
    EXPECT_LT(m.objectives.f1, front.reference.f1);
    EXPECT_LT(m.objectives.f2, front.reference.f2);
  }
  for (std::size_t i = 1; i < objs.size(); ++i) {
    EXPECT_LE(objs[i - 1].f1, objs[i].f1);
  }
  for (const auto& a : objs) {
    for (const auto& b : objs) EXPECT_FALSE(dominates(a, b));
  }
  EXPECT_DOUBLE_EQ(hypervolume(objs, front.reference), front.hv_trace.back());

  // Same seed, different thread cap: same run.
  set_max_threads(1);
  const ParetoFront again = evolve(s.domain, s.plan, s.cfg, mcfg);
  set_max_threads(0);
  EXPECT_EQ(again.hv_trace, front.hv_trace);
  ASSERT_EQ(again.members.size(), front.members.size());
  for (std::size_t i = 0; i < objs.size(); ++i) {
    EXPECT_EQ(again.members[i].objectives, objs[i]);
  }
}

TEST(Evolve, ObjectivesMatchAFreshEvaluation) {
  const Small& s = small();
  MoeaConfig mcfg;
  mcfg.population = 8;
  mcfg.max_generations = 3;
  const ParetoFront front = evolve(s.domain, s.plan, s.cfg, mcfg);
  for (const auto& m : front.members) {
    const ObfuscationMatrix mat = build_matrix(m.partition, s.domain);
    const Evaluation ev = evaluate(s.domain, mat);
    EXPECT_EQ(m.objectives.f1, ev.qloss);
    EXPECT_EQ(m.objectives.f2, -ev.exp_err);
    EXPECT_GE(ev.min_cond_err, s.cfg.e_m - 1e-9);
  }
}

TEST(MoeaConfig, Validation) {
  MoeaConfig mcfg;
  mcfg.population = 1;
  EXPECT_THROW(mcfg.validate(), Error);
  mcfg = MoeaConfig{};
  mcfg.patience = 0;
  EXPECT_THROW(mcfg.validate(), Error);
  EXPECT_NO_THROW(MoeaConfig{}.validate());
}

TEST(Pso, FitnessExamples) {
  const Objectives o{1.0, -0.5};  // QLoss 1, ExpErr 0.5
  EXPECT_DOUBLE_EQ(pso_fitness(o, 1.0), 1.0);
  EXPECT_DOUBLE_EQ(pso_fitness(o, 0.0), -0.5);
  EXPECT_DOUBLE_EQ(pso_fitness(o, 0.5), 0.25);
}

TEST(Pso, OneValidSolutionPerAlpha) {
  const Small& s = small();
  PsoConfig pcfg;
  pcfg.particles = 4;
  pcfg.iterations = 2;
  pcfg.alphas = {0.0, 0.5, 1.0};
  const auto sols = pso_baseline(s.domain, s.plan, s.cfg, pcfg);
  ASSERT_EQ(sols.size(), 3u);

  MoeaConfig init;
  init.population = pcfg.particles;
  init.seed = pcfg.seed;
  const auto start = initial_population(s.plan, s.domain, s.cfg, init);
  for (const auto& sol : sols) {
    EXPECT_TRUE(partition_violations(sol.best.partition, s.domain, s.cfg,
                                     &s.plan.tree).empty());
    EXPECT_DOUBLE_EQ(sol.fitness, pso_fitness(sol.best.objectives, sol.alpha));
    for (const auto& ind : start) {
      EXPECT_LE(sol.fitness, pso_fitness(ind.objectives, sol.alpha));
    }
  }
}

TEST(Dpive, StrictBudgetsCellRangesAndFloor) {
  const Small& s = small();
  const Individual ind = dpive_baseline(s.domain, s.plan, s.cfg, DpiveConfig{});
  const auto owner = cell_of_location(s.plan.tree, s.domain.size());
  for (std::size_t k = 0; k < ind.partition.plss.size(); ++k) {
    const Pls& p = ind.partition.plss[k];
    EXPECT_EQ(p.epsilon, s.cfg.epsilon0);
    for (std::size_t y : ind.partition.reporting_ranges[k]) {
      EXPECT_EQ(owner[y], p.cell);
    }
  }
  const ObfuscationMatrix m = build_matrix(ind.partition, s.domain);
  EXPECT_GE(min_conditional_error(s.domain, m), s.cfg.e_m - 1e-9);
  EXPECT_TRUE(verify_dp_within_pls(m, ind.partition, s.cfg.epsilon0).pass);
}

}  // namespace
}  // namespace geomoea
