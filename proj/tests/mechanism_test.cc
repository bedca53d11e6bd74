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

#include "geomoea/mechanism.h"

#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

#include <gtest/gtest.h>

#include "geomoea/error.h"
#include "test_util.h"

namespace geomoea {
namespace {

using testing::make_domain;

Pls two_point_pls(double eps) {
  Pls p;
  p.members = {0, 1};
  p.diameter = 1.0;
  p.e_prime = 0.5;
  p.epsilon = eps;
  return p;
}

PlsPartition benchmark_partition(std::uint64_t seed, const Domain& d,
                                 const PrivacyConfig& cfg) {
  return ret_c(binary_partition(d, cfg.n0), d, cfg, seed);
}

TEST(MechanismRow, TwoPointExample) {
  const Domain d = make_domain({{0, 0}, {1, 0}});
  const std::vector<std::size_t> range{0, 1};
  const SparseRow row = mechanism_row(d, 0, two_point_pls(2.0), range);
  ASSERT_EQ(row.support, range);
  EXPECT_NEAR(row.probs[0], 1.0 / (1.0 + std::exp(-1.0)), 1e-15);
  EXPECT_NEAR(row.probs[1], std::exp(-1.0) / (1.0 + std::exp(-1.0)), 1e-15);
}

TEST(MechanismRow, TinyBudgetIsNearlyUniform) {
  Rng rng(2);
  const Domain d = testing::random_domain(9, rng);
  Pls p;
  p.members = {0, 1, 2};
  p.diameter = 1.0;
  p.epsilon = 1e-12;
  std::vector<std::size_t> range{0, 1, 2, 3, 4, 5, 6, 7, 8};
  const SparseRow row = mechanism_row(d, 1, p, range);
  for (double v : row.probs) EXPECT_NEAR(v, 1.0 / 9.0, 1e-9);
}

TEST(MechanismRow, SelfReportIsMostLikely) {
  const Domain d = load_domain(benchmark_spec(1));
  const PrivacyConfig cfg;
  const PlsPartition part = benchmark_partition(1, d, cfg);
  for (std::size_t k = 0; k < part.plss.size(); ++k) {
    for (std::size_t x : part.plss[k].members) {
      const SparseRow row =
          mechanism_row(d, x, part.plss[k], part.reporting_ranges[k]);
      const auto self = std::lower_bound(row.support.begin(),
                                         row.support.end(), x) -
                        row.support.begin();
      EXPECT_EQ(row.probs[self],
                *std::max_element(row.probs.begin(), row.probs.end()));
    }
  }
}

TEST(MechanismRow, Errors) {
  const Domain d = make_domain({{0, 0}, {1, 0}, {2, 0}});
  const std::vector<std::size_t> range{0, 1};
  Pls degenerate = two_point_pls(1.0);
  degenerate.diameter = 0.0;
  try {
    mechanism_row(d, 0, degenerate, range);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDegeneratePls);
  }
  EXPECT_THROW(mechanism_row(d, 2, two_point_pls(1.0), range), Error);
}

TEST(MechanismRow, LargeExponentsDoNotUnderflow) {
  const Domain d = make_domain({{0, 0}, {0.001, 0}, {50, 0}});
  Pls p;
  p.members = {0, 1};
  p.diameter = 0.001;
  p.epsilon = 1.0;
  const std::vector<std::size_t> range{0, 1, 2};
  const SparseRow row = mechanism_row(d, 0, p, range);
  double total = 0.0;
  for (double v : row.probs) total += v;
  EXPECT_NEAR(total, 1.0, 1e-12);
  EXPECT_TRUE(std::isfinite(row.probs[0]));
}

TEST(BuildMatrix, RowsAreStochasticAndShareSupport) {
  const Domain d = load_domain(benchmark_spec(4));
  const PrivacyConfig cfg;
  const PlsPartition part = benchmark_partition(4, d, cfg);
  const ObfuscationMatrix m = build_matrix(part, d);
  ASSERT_EQ(m.size(), 400u);
  EXPECT_TRUE(row_stochasticity(m).pass);
  for (std::size_t k = 0; k < part.plss.size(); ++k) {
    for (std::size_t x : part.plss[k].members) {
      EXPECT_EQ(m.row(x).support, part.reporting_ranges[k]);
      for (double v : m.row(x).probs) EXPECT_GT(v, 0.0);
    }
  }
}

TEST(Matrix, ColumnsMirrorRows) {
  Rng rng(8);
  const auto f = testing::random_dense_matrix(10, rng);
  const ObfuscationMatrix m = testing::to_sparse(f);
  for (std::size_t xp = 0; xp < 10; ++xp) {
    std::size_t count = 0;
    std::size_t last = 0;
    for (const auto& e : m.column(xp)) {
      if (count > 0) EXPECT_GT(e.source, last);
      last = e.source;
      EXPECT_EQ(e.prob, f[e.source][xp]);
      ++count;
    }
    std::size_t expected = 0;
    for (std::size_t x = 0; x < 10; ++x) expected += f[x][xp] > 0.0;
    EXPECT_EQ(count, expected);
  }
  EXPECT_EQ(m.probability(0, 3), f[0][3]);
}

TEST(RowStochasticity, NamesTheWorstRow) {
  std::vector<SparseRow> rows(3);
  for (std::size_t i = 0; i < 3; ++i) rows[i] = {{i}, {1.0}};
  rows[2].probs[0] = 0.9;
  const auto rep = row_stochasticity(ObfuscationMatrix(rows, 3));
  EXPECT_FALSE(rep.pass);
  ASSERT_TRUE(rep.worst_row);
  EXPECT_EQ(*rep.worst_row, 2u);
  EXPECT_NEAR(rep.max_deviation, 0.1, 1e-12);
}

TEST(SamplePseudo, DegenerateRowAndDeterminism) {
  const ObfuscationMatrix id = identity_matrix(5);
  Rng rng(3);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(sample_pseudo(id, 3, rng), 3u);
  EXPECT_THROW(sample_pseudo(id, 5, rng), Error);

  Rng src(4);
  const ObfuscationMatrix m = testing::to_sparse(testing::random_dense_matrix(6, src));
  Rng a(11), b(11);
  for (int i = 0; i < 1000; ++i) {
    EXPECT_EQ(sample_pseudo(m, 2, a), sample_pseudo(m, 2, b));
  }
}

TEST(SamplePseudo, EmpiricalFrequenciesWithinThreeSigma) {
  const Domain d = make_domain({{0, 0}, {1, 0}, {2, 0}, {3, 0}});
  Pls p;
  p.members = {0, 1};
  p.diameter = 1.0;
  p.epsilon = 1.5;
  const std::vector<std::size_t> range{0, 1, 2, 3};
  std::vector<SparseRow> rows;
  for (std::size_t x = 0; x < 4; ++x) {
    Pls q = p;
    q.members = {x};
    rows.push_back(mechanism_row(d, x, x < 2 ? p : q, range));
  }
  const ObfuscationMatrix m(rows, 4);
  constexpr int kDraws = 100000;
  std::vector<int> counts(4, 0);
  Rng rng(21);
  for (int i = 0; i < kDraws; ++i) ++counts[sample_pseudo(m, 1, rng)];
  for (std::size_t j = 0; j < 4; ++j) {
    const double pj = rows[1].probs[j];
    const double sigma = std::sqrt(kDraws * pj * (1 - pj));
    EXPECT_LE(std::abs(counts[j] - kDraws * pj), 3 * sigma) << "outcome " << j;
  }
}

TEST(QualityLossAt, Examples) {
  const Domain d = make_domain({{0, 0}, {1, 0}});
  EXPECT_EQ(quality_loss_at(0, identity_matrix(2), d), 0.0);
  const std::vector<std::size_t> range{0, 1};
  const SparseRow row = mechanism_row(d, 0, two_point_pls(2.0), range);
  const ObfuscationMatrix m({row, {{0, 1}, {0.5, 0.5}}}, 2);
  EXPECT_NEAR(quality_loss_at(0, m, d), std::exp(-1.0) / (1 + std::exp(-1.0)),
              1e-15);
  EXPECT_NEAR(quality_loss_at(1, m, d), 0.5, 1e-15);
}

TEST(KernelQualityLoss, NonIncreasingInBudget) {
  Rng rng(31);
  for (int t = 0; t < 50; ++t) {
    std::vector<double> dist{0.0};
    const std::size_t n = 2 + rng.index(60);
    for (std::size_t i = 0; i < n; ++i) dist.push_back(rng.uniform(0.0, 5.0));
    double prev = kernel_quality_loss(dist, 0.1);
    for (int g = 2; g <= 50; ++g) {
      const double cur = kernel_quality_loss(dist, 0.1 * g);
      EXPECT_LE(cur, prev + 1e-12);
      prev = cur;
    }
  }
}

TEST(VerifyDp, TwoPointRatio) {
  const Domain d = make_domain({{0, 0}, {1, 0}});
  const std::vector<std::size_t> range{0, 1};
  PlsPartition part;
  part.plss = {two_point_pls(2.0)};
  part.reporting_ranges = {range};
  part.owner = {0, 0};
  const ObfuscationMatrix m = build_matrix(part, d);
  const DpReport rep = verify_dp_within_pls(m, part, 2.0);
  EXPECT_TRUE(rep.pass);
  EXPECT_NEAR(rep.max_ratio, std::exp(1.0), 1e-12);
  EXPECT_FALSE(verify_dp_within_pls(m, part, 0.5).pass);
}

TEST(VerifyDp, UniformRowsHaveRatioOne) {
  PlsPartition part;
  part.plss = {two_point_pls(1.0)};
  part.reporting_ranges = {{0, 1}};
  part.owner = {0, 0};
  const ObfuscationMatrix m({{{0, 1}, {0.5, 0.5}}, {{0, 1}, {0.5, 0.5}}}, 2);
  const DpReport rep = verify_dp_within_pls(m, part, 0.1);
  EXPECT_TRUE(rep.pass);
  EXPECT_DOUBLE_EQ(rep.max_ratio, 1.0);
}

TEST(VerifyDp, HoldsOnGeneratedPartitions) {
  const Domain d = load_domain(benchmark_spec(5));
  for (double eps0 : {0.5, 1.0, 1.5}) {
    PrivacyConfig cfg;
    cfg.epsilon0 = eps0;
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
      const PlsPartition part = benchmark_partition(seed, d, cfg);
      const ObfuscationMatrix m = build_matrix(part, d);
      const DpReport rep = verify_dp_within_pls(m, part, eps0);
      EXPECT_TRUE(rep.pass) << rep.max_ratio << " > " << rep.bound;
      // Geo-indistinguishable form within each PLS.
      for (std::size_t k = 0; k < part.plss.size(); ++k) {
        const Pls& p = part.plss[k];
        const double eps_g = p.epsilon / (2 * p.diameter);
        for (std::size_t x : p.members) {
          for (std::size_t y : p.members) {
            const double cap =
                std::exp(eps_g * (d.distance(x, y) + p.diameter)) * (1 + 1e-9);
            for (std::size_t xp : part.reporting_ranges[k]) {
              EXPECT_LE(m.probability(x, xp) / m.probability(y, xp), cap);
            }
          }
        }
      }
    }
  }
}

TEST(VerifyCrossPls, BoundHoldsWhereRangesMeet) {
  const Domain d = load_domain(benchmark_spec(6));
  const PrivacyConfig cfg;
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    const PlsPartition part = benchmark_partition(seed, d, cfg);
    const ObfuscationMatrix m = build_matrix(part, d);
    std::size_t applicable = 0;
    for (std::size_t i = 0; i < part.plss.size(); ++i) {
      for (std::size_t j = 0; j < part.plss.size(); ++j) {
        if (i == j) continue;
        const auto rep = verify_cross_pls(m, part, d, i, j, cfg.epsilon0);
        if (!rep.applicable) continue;
        ++applicable;
        EXPECT_TRUE(rep.pass);
        EXPECT_LE(rep.observed, rep.bound);
      }
    }
    EXPECT_GT(applicable, 0u);
  }
}

TEST(VerifyCrossPls, IdenticalRangesAndDisjointRanges) {
  const Domain d = make_domain({{0, 0}, {1, 0}, {5, 0}, {6, 0}});
  PlsPartition part;
  Pls a = two_point_pls(1.0);
  Pls b = two_point_pls(1.0);
  b.members = {2, 3};
  part.plss = {a, b};
  part.owner = {0, 0, 1, 1};
  part.reporting_ranges = {{0, 1, 2, 3}, {0, 1, 2, 3}};
  ObfuscationMatrix m = build_matrix(part, d);
  auto rep = verify_cross_pls(m, part, d, 0, 1, 1.0);
  EXPECT_TRUE(rep.applicable);
  EXPECT_TRUE(rep.pass);
  // D(Y) = 6, D(P) = 1 on both sides, prefactor 1.
  EXPECT_NEAR(rep.bound, std::exp(0.5 * 12.0), 1e-9);

  part.reporting_ranges = {{0, 1}, {2, 3}};
  m = build_matrix(part, d);
  rep = verify_cross_pls(m, part, d, 0, 1, 1.0);
  EXPECT_FALSE(rep.applicable);
}

}  // namespace
}  // namespace geomoea
