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
#include <set>
#include <vector>

#include <gtest/gtest.h>

#include "geomoea/error.h"
#include "test_util.h"

namespace geomoea {
namespace {

using testing::make_domain;

Worker worker(int id, std::size_t loc, bool idle = true) {
  return Worker{id, loc, loc, idle};
}

TEST(Geocast, ThreeNearestByPseudoLocation) {
  // Task at 0, workers' pseudo locations 1..5 km away, listed out of order.
  const Domain d = make_domain({{0, 0}, {1, 0}, {2, 0}, {3, 0}, {4, 0}, {5, 0}});
  std::vector<Worker> ws{worker(0, 4), worker(1, 2), worker(2, 5),
                         worker(3, 1), worker(4, 3)};
  const Task t{0, 0};
  const auto got = geocast(t, ws, d);
  ASSERT_EQ(got.size(), 3u);
  EXPECT_EQ(got[0]->id, 3);
  EXPECT_EQ(got[1]->id, 1);
  EXPECT_EQ(got[2]->id, 4);
}

TEST(Geocast, UsesPseudoNotTrueLocation) {
  const Domain d = make_domain({{0, 0}, {1, 0}, {9, 0}});
  std::vector<Worker> ws{Worker{0, 1, 2, true}, Worker{1, 2, 1, true}};
  const auto got = geocast(Task{0, 0}, ws, d, 1);
  ASSERT_EQ(got.size(), 1u);
  EXPECT_EQ(got[0]->id, 1);
}

TEST(Geocast, TruncationTiesAndNoWorkers) {
  const Domain d = make_domain({{0, 0}, {1, 0}, {-1, 0}});
  std::vector<Worker> ws{worker(7, 2), worker(3, 1), worker(5, 1, false)};
  const auto got = geocast(Task{0, 0}, ws, d);
  ASSERT_EQ(got.size(), 2u);  // one busy worker skipped
  EXPECT_EQ(got[0]->id, 3);   // tie at 1 km broken by id
  EXPECT_EQ(got[1]->id, 7);
  std::vector<Worker> busy{worker(0, 1, false)};
  try {
    geocast(Task{0, 0}, busy, d);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNoWorker);
  }
}

TEST(Assign, TravelDistanceAndBusyMarking) {
  const Domain d = make_domain({{0, 0}, {3, 4}});
  std::vector<Worker> ws{Worker{0, 0, 1, true}};
  Rng rng(1);
  std::vector<const Worker*> cands{&ws[0]};
  const Assignment a = assign(Task{9, 1}, cands, ws, d, rng);
  EXPECT_EQ(a.task_id, 9);
  EXPECT_EQ(a.worker_id, 0);
  EXPECT_DOUBLE_EQ(a.wtd, 5.0);
  EXPECT_TRUE(ws[0].idle);
  AssignOptions exclusive;
  exclusive.shared_workers = false;
  assign(Task{10, 1}, cands, ws, d, rng, exclusive);
  EXPECT_FALSE(ws[0].idle);
}

TEST(Assign, UniformResponderCoversAllCandidates) {
  const Domain d = make_domain({{0, 0}, {1, 0}, {2, 0}});
  std::vector<Worker> ws{worker(0, 0), worker(1, 1), worker(2, 2)};
  std::vector<const Worker*> cands{&ws[0], &ws[1], &ws[2]};
  Rng rng(2);
  std::vector<int> hits(3, 0);
  for (int i = 0; i < 3000; ++i) {
    ++hits[assign(Task{0, 0}, cands, ws, d, rng).worker_id];
  }
  for (int h : hits) EXPECT_NEAR(h, 1000, 150);
}

TEST(SpawnWorkers, OneToFourQuota) {
  const Domain d = load_domain(benchmark_spec(1));
  Rng rng(3);
  const WorkerPool pool = spawn_workers(d, 100, WorkerMode::kOneToFour, rng);
  ASSERT_EQ(pool.workers.size(), 100u);
  EXPECT_EQ(pool.dense_locations.size(), 80u);  // 20% of 400
  const std::set<std::size_t> dense(pool.dense_locations.begin(),
                                    pool.dense_locations.end());
  int inside = 0;
  for (const Worker& w : pool.workers) {
    EXPECT_TRUE(w.idle);
    EXPECT_EQ(w.true_location, w.pseudo_location);
    inside += dense.count(w.true_location) > 0;
  }
  EXPECT_EQ(inside, 80);
}

TEST(SpawnWorkers, UniformAndSingle) {
  const Domain d = load_domain(benchmark_spec(1));
  Rng rng(4);
  const WorkerPool one = spawn_workers(d, 1, WorkerMode::kUniform, rng);
  ASSERT_EQ(one.workers.size(), 1u);
  EXPECT_TRUE(one.workers[0].idle);
  EXPECT_TRUE(one.dense_locations.empty());
  const WorkerPool many = spawn_workers(d, 2000, WorkerMode::kUniform, rng);
  for (const Worker& w : many.workers) EXPECT_LT(w.true_location, d.size());
}

TEST(SpawnTasks, AtDomainLocations) {
  const Domain d = load_domain(benchmark_spec(1));
  Rng rng(5);
  const auto tasks = spawn_tasks(d, 200, rng);
  ASSERT_EQ(tasks.size(), 200u);
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    EXPECT_EQ(tasks[i].id, static_cast<int>(i));
    EXPECT_LT(tasks[i].location, d.size());
  }
}

TEST(RunSimulation, IdentityMatchesNonPrivacy) {
  const Domain d = load_domain(benchmark_spec(2));
  for (WorkerMode mode : {WorkerMode::kUniform, WorkerMode::kOneToFour}) {
    SimulationConfig cfg;
    cfg.mode = mode;
    cfg.seed = 12;
    const ObfuscationMatrix id = identity_matrix(d.size());
    const SimulationResult a = run_simulation(d, &id, cfg);
    const SimulationResult b = run_simulation(d, nullptr, cfg);
    ASSERT_EQ(a.assignments.size(), b.assignments.size());
    EXPECT_EQ(a.mean_wtd, b.mean_wtd);
    for (std::size_t i = 0; i < a.assignments.size(); ++i) {
      EXPECT_EQ(a.assignments[i].worker_id, b.assignments[i].worker_id);
      EXPECT_EQ(a.assignments[i].wtd, b.assignments[i].wtd);
    }
  }
}

TEST(RunSimulation, DeterministicAndNonNegative) {
  const Domain d = load_domain(benchmark_spec(3));
  const PrivacyConfig pcfg;
  const ObfuscationMatrix m =
      build_matrix(ret_c(binary_partition(d, pcfg.n0), d, pcfg, 3), d);
  SimulationConfig cfg;
  cfg.seed = 4;
  const SimulationResult a = run_simulation(d, &m, cfg);
  const SimulationResult b = run_simulation(d, &m, cfg);
  EXPECT_EQ(a.mean_wtd, b.mean_wtd);
  ASSERT_EQ(a.assignments.size(), 200u);
  double total = 0.0;
  for (const auto& as : a.assignments) {
    EXPECT_GE(as.wtd, 0.0);
    total += as.wtd;
  }
  EXPECT_NEAR(a.mean_wtd, total / 200.0, 1e-12);
}

TEST(RunSimulation, ObfuscationCostsTravelOnAverage) {
  const Domain d = load_domain(benchmark_spec(4));
  const PrivacyConfig pcfg;
  const ObfuscationMatrix m =
      build_matrix(ret_c(binary_partition(d, pcfg.n0), d, pcfg, 4), d);
  double plain = 0.0, obf = 0.0;
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    SimulationConfig cfg;
    cfg.seed = seed;
    plain += run_simulation(d, nullptr, cfg).mean_wtd;
    obf += run_simulation(d, &m, cfg).mean_wtd;
  }
  EXPECT_LE(plain, obf);
}

}  // namespace
}  // namespace geomoea
