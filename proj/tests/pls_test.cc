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

#include "geomoea/pls.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <vector>

#include <gtest/gtest.h>

#include "geomoea/error.h"
#include "test_util.h"

namespace geomoea {
namespace {

using testing::make_domain;

PrivacyConfig config(double eps0, double e_m) {
  PrivacyConfig cfg;
  cfg.epsilon0 = eps0;
  cfg.e_m = e_m;
  return cfg;
}

Cell whole_cell(const Domain& d) {
  Cell c;
  c.id = 0;
  c.members.resize(d.size());
  std::iota(c.members.begin(), c.members.end(), std::size_t{0});
  c.bounds = d.bounds();
  return c;
}

TEST(EPrime, ThreeCollinearPoints) {
  const Domain d = make_domain({{0, 0}, {1, 0}, {2, 0}});
  const std::vector<std::size_t> ab{0, 1};
  EXPECT_NEAR(e_prime(ab, d), 0.5, 1e-12);
  const std::vector<std::size_t> a{0};
  EXPECT_EQ(e_prime(a, d), 0.0);
}

TEST(EPrime, SkewedPrior) {
  const Domain d = make_domain({{0, 0}, {1, 0}}, {0.9, 0.1});
  const std::vector<std::size_t> ab{0, 1};
  EXPECT_NEAR(e_prime(ab, d), 0.1, 1e-12);
}

TEST(EPrime, EstimateMayLieOutsideTheSet) {
  // Equilateral triangle; its centre is a domain location but not a member.
  const double h = std::sqrt(3.0);
  const Domain d = make_domain({{0, 0}, {2, 0}, {1, h}, {1, h / 3}});
  const std::vector<std::size_t> tri{0, 1, 2};
  EXPECT_NEAR(e_prime(tri, d), 2.0 / h, 1e-12);
  EXPECT_NEAR(e_prime(tri, d, tri), 4.0 / 3.0, 1e-12);
}

TEST(EPrime, EmptySetThrows) {
  const Domain d = make_domain({{0, 0}, {1, 0}});
  EXPECT_THROW(e_prime(std::vector<std::size_t>{}, d), Error);
}

TEST(EPrime, MatchesExhaustiveOracle) {
  Rng rng(17);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 2 + rng.index(11);
    const Domain d = testing::random_domain(n, rng);
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < n; ++i) {
      if (rng.uniform01() < 0.5) members.push_back(i);
    }
    if (members.empty()) members.push_back(rng.index(n));
    EXPECT_NEAR(e_prime(members, d), testing::oracle_e_prime(d, members),
                1e-12);
  }
}

TEST(AllocateEpsilon, Examples) {
  EXPECT_DOUBLE_EQ(*allocate_epsilon(0.5, config(1.0, 0.1)), 1.0);
  EXPECT_NEAR(*allocate_epsilon(0.2, config(1.0, 0.1)), std::log(2.0), 1e-12);
  EXPECT_FALSE(allocate_epsilon(0.1, config(1.0, 0.1)).has_value());
  EXPECT_FALSE(allocate_epsilon(0.0, config(1.0, 0.1)).has_value());
}

TEST(AllocateEpsilon, StrictBoundMeansFullBudget) {
  const PrivacyConfig cfg = config(1.0, 0.1);
  EXPECT_TRUE(meets_strict_bound(0.1 * std::exp(1.0), cfg));
  EXPECT_FALSE(meets_strict_bound(0.27, cfg));
  for (double e : {0.15, 0.25, 0.28, 0.5, 3.0}) {
    const auto eps = allocate_epsilon(e, cfg);
    ASSERT_TRUE(eps.has_value());
    EXPECT_LE(*eps, cfg.epsilon0);
    EXPECT_GE(e, std::exp(*eps) * cfg.e_m * (1 - 1e-12));
    EXPECT_EQ(meets_strict_bound(e, cfg), *eps == cfg.epsilon0);
  }
}

TEST(Geometry, DiameterAndMedoid) {
  const Domain d = make_domain({{0, 0}, {1, 0}, {2, 0}, {0, 3}});
  const std::vector<std::size_t> all{0, 1, 2, 3};
  EXPECT_NEAR(diameter(all, d), std::sqrt(13.0), 1e-12);
  const std::vector<std::size_t> line{0, 1, 2};
  EXPECT_EQ(medoid(line, d), 1u);
  // 0 and 1 tie on summed distance; lower index wins.
  const std::vector<std::size_t> pair{0, 1};
  EXPECT_EQ(medoid(pair, d), 0u);
}

TEST(MakePls, RejectsInfeasibleSets) {
  const Domain d = make_domain({{0, 0}, {0, 0}, {1, 0}, {5, 0}});
  const PrivacyConfig cfg = config(1.0, 0.1);
  EXPECT_FALSE(make_pls({0}, 0, d, cfg));
  EXPECT_FALSE(make_pls({0, 1}, 0, d, cfg));  // coincident
  const auto p = make_pls({0, 2}, 0, d, cfg);
  ASSERT_TRUE(p);
  EXPECT_NEAR(p->e_prime, 0.5, 1e-12);
  EXPECT_NEAR(p->diameter, 1.0, 1e-12);
  EXPECT_DOUBLE_EQ(p->epsilon, 1.0);
  EXPECT_FALSE(make_pls({2, 3}, 0, d, config(1.0, 2.0)));
}

TEST(FindK, FourCollinearPoints) {
  const Domain d = make_domain({{0, 0}, {1, 0}, {2, 0}, {3, 0}});
  Rng rng(1);
  const KSearch ks = find_k(whole_cell(d), d, config(1.0, 0.1), rng);
  EXPECT_EQ(ks.k, 2);
  ASSERT_EQ(ks.clustering.size(), 2u);
  for (const auto& c : ks.clustering) {
    EXPECT_EQ(c.size(), 2u);
    EXPECT_GE(e_prime(c, d), std::exp(1.0) * 0.1);
  }
}

TEST(FindK, TwoLocationsAndCoincident) {
  Rng rng(1);
  const Domain two = make_domain({{0, 0}, {2, 0}});
  EXPECT_EQ(find_k(whole_cell(two), two, config(1.0, 0.1), rng).k, 1);
  const Domain same = make_domain({{1, 1}, {1, 1}});
  try {
    find_k(whole_cell(same), same, config(1.0, 0.1), rng);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kCellInfeasible);
  }
}

TEST(FindK, LargeErrorThresholdIsInfeasible) {
  const Domain d = make_domain({{0, 0}, {1, 0}, {2, 0}, {3, 0}});
  Rng rng(1);
  EXPECT_THROW(find_k(whole_cell(d), d, config(1.0, 5.0), rng), Error);
}

TEST(RetC, TwoPointCellIsOnePls) {
  const Domain d = make_domain({{0, 0}, {2, 0}});
  const PrivacyConfig cfg = config(1.0, 0.1);
  Rng rng(4);
  const Cell cell = whole_cell(d);
  const KSearch ks = find_k(cell, d, cfg, rng);
  const auto plss = ret_c_cell(cell, ks, d, cfg, 99);
  ASSERT_EQ(plss.size(), 1u);
  EXPECT_EQ(plss[0].members, (std::vector<std::size_t>{0, 1}));
  EXPECT_DOUBLE_EQ(plss[0].epsilon, 1.0);
  EXPECT_NEAR(plss[0].e_prime, 1.0, 1e-12);
}

TEST(RetC, BenchmarkPartitionIsValid) {
  const Domain d = load_domain(benchmark_spec(1));
  const PrivacyConfig cfg = config(1.0, 0.1);
  const PartitionTree tree = binary_partition(d, cfg.n0);
  ASSERT_EQ(tree.cells.size(), 8u);
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const PlsPartition p = ret_c(tree, d, cfg, seed);
    EXPECT_TRUE(partition_violations(p, d, cfg, &tree).empty());
    std::vector<int> seen(d.size(), 0);
    for (const Pls& pls : p.plss) {
      EXPECT_GE(pls.members.size(), 2u);
      EXPECT_GT(pls.e_prime, cfg.e_m);
      EXPECT_GT(pls.epsilon, 0.0);
      EXPECT_LE(pls.epsilon, cfg.epsilon0);
      EXPECT_GE(pls.e_prime, std::exp(pls.epsilon) * cfg.e_m * (1 - 1e-12));
      EXPECT_NEAR(pls.e_prime, testing::oracle_e_prime(d, pls.members), 1e-12);
      for (std::size_t m : pls.members) {
        ++seen[m];
        EXPECT_EQ(std::find(tree.cells[pls.cell].members.begin(),
                            tree.cells[pls.cell].members.end(), m) !=
                      tree.cells[pls.cell].members.end(),
                  true);
      }
    }
    for (int s : seen) EXPECT_EQ(s, 1);
    for (std::size_t k = 0; k < p.plss.size(); ++k) {
      const auto& r = p.reporting_ranges[k];
      EXPECT_GE(r.size(), 50u);
      EXPECT_TRUE(std::includes(r.begin(), r.end(), p.plss[k].members.begin(),
                                p.plss[k].members.end()));
    }
  }
}

TEST(RetC, SameSeedSamePartition) {
  const Domain d = load_domain(benchmark_spec(2));
  const PrivacyConfig cfg = config(1.0, 0.1);
  const PartitionTree tree = binary_partition(d, cfg.n0);
  const PlsPartition a = ret_c(tree, d, cfg, 5);
  const PlsPartition b = ret_c(tree, d, cfg, 5);
  ASSERT_EQ(a.plss.size(), b.plss.size());
  for (std::size_t k = 0; k < a.plss.size(); ++k) {
    EXPECT_EQ(a.plss[k].members, b.plss[k].members);
    EXPECT_EQ(a.plss[k].epsilon, b.plss[k].epsilon);
  }
}

TEST(RetC, StrictPartitionsPassTheLooseCheck) {
  const Domain d = load_domain(benchmark_spec(3));
  const PrivacyConfig cfg = config(1.0, 0.1);
  const PartitionPlan plan =
      plan_partition(binary_partition(d, cfg.n0), d, cfg, 3);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    std::vector<std::vector<Pls>> per_cell;
    for (std::size_t c = 0; c < plan.tree.cells.size(); ++c) {
      per_cell.push_back(ret_c_cell(plan.tree.cells[c], plan.cells[c], d, cfg,
                                    seed, BoundRule::kStrict));
      for (const Pls& p : per_cell.back()) {
        EXPECT_TRUE(meets_strict_bound(p.e_prime, cfg));
        EXPECT_DOUBLE_EQ(p.epsilon, cfg.epsilon0);
      }
    }
    const PlsPartition p = assemble_partition(per_cell, d, cfg);
    EXPECT_TRUE(partition_violations(p, d, cfg, &plan.tree).empty());
  }
}

TEST(RetC, ErrorThresholdAboveDiameterIsInfeasible) {
  const Domain d = load_domain(benchmark_spec(1));
  const PrivacyConfig cfg = config(1.0, 50.0);
  const PartitionTree tree = binary_partition(d, cfg.n0);
  try {
    ret_c(tree, d, cfg, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kCellInfeasible);
  }
}

// Hand-built PLSs along a line so centroid order is obvious.
struct Line {
  Domain domain;
  PlsPartition partition;
};

Line line_partition(const std::vector<std::size_t>& sizes) {
  std::vector<std::pair<double, double>> xy;
  std::vector<std::vector<std::size_t>> groups;
  double x = 0.0;
  for (std::size_t s : sizes) {
    groups.emplace_back();
    for (std::size_t i = 0; i < s; ++i) {
      groups.back().push_back(xy.size());
      xy.emplace_back(x + 0.01 * i, 0.0);
    }
    x += 10.0;
  }
  Domain d = make_domain(xy);
  PlsPartition p;
  for (auto& g : groups) {
    Pls pls;
    pls.members = g;
    pls.diameter = diameter(g, d);
    pls.e_prime = e_prime(g, d);
    pls.epsilon = 1.0;
    p.plss.push_back(pls);
  }
  p = build_reporting_ranges(std::move(p), d, PrivacyConfig{});
  return {std::move(d), std::move(p)};
}

TEST(ReportingRanges, ThresholdArithmetic) {
  const PlsPartition p = line_partition({30, 25, 40}).partition;
  EXPECT_EQ(p.reporting_ranges[0].size(), 55u);
  EXPECT_EQ(p.reporting_ranges[1].size(), 55u);  // 25 + nearer 30
  EXPECT_EQ(p.reporting_ranges[2].size(), 65u);
}

TEST(ReportingRanges, LargePlsStillTakesANeighbour) {
  const PlsPartition p = line_partition({60, 10}).partition;
  EXPECT_EQ(p.reporting_ranges[0].size(), 70u);
}

TEST(ReportingRanges, SmallDomainTakesEverything) {
  const PlsPartition p = line_partition({10, 10, 10, 10}).partition;
  for (const auto& r : p.reporting_ranges) EXPECT_EQ(r.size(), 40u);
}

TEST(PartitionViolations, ReportsBrokenCover) {
  const Domain d = load_domain(benchmark_spec(1));
  const PrivacyConfig cfg = config(1.0, 0.1);
  const PartitionTree tree = binary_partition(d, cfg.n0);
  PlsPartition p = ret_c(tree, d, cfg, 1);
  p.plss[0].members.push_back(p.plss[1].members.front());
  EXPECT_FALSE(partition_violations(p, d, cfg, &tree).empty());
}

}  // namespace
}  // namespace geomoea
