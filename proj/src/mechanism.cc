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
#include <iterator>
#include <limits>
#include <string>

#include "geomoea/error.h"

namespace geomoea {

ObfuscationMatrix::ObfuscationMatrix(std::vector<SparseRow> rows,
                                     std::size_t domain_size)
    : rows_(std::move(rows)) {
  std::vector<std::size_t> counts(domain_size, 0);
  for (std::size_t x = 0; x < rows_.size(); ++x) {
    const SparseRow& r = rows_[x];
    if (r.support.size() != r.probs.size()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "row " + std::to_string(x) + ": support/probs size mismatch");
    }
    for (std::size_t k = 0; k < r.support.size(); ++k) {
      if (r.support[k] >= domain_size ||
          (k > 0 && r.support[k] <= r.support[k - 1])) {
        throw Error(ErrorCode::kInvalidArgument,
                    "row " + std::to_string(x) +
                        ": support must be ascending domain indices");
      }
      if (r.probs[k] > 0.0) ++counts[r.support[k]];
    }
  }
  column_offsets_.assign(domain_size + 1, 0);
  for (std::size_t c = 0; c < domain_size; ++c) {
    column_offsets_[c + 1] = column_offsets_[c] + counts[c];
  }
  column_entries_.resize(column_offsets_.back());
  std::vector<std::size_t> fill(column_offsets_.begin(),
                                column_offsets_.end() - 1);
  for (std::size_t x = 0; x < rows_.size(); ++x) {
    const SparseRow& r = rows_[x];
    for (std::size_t k = 0; k < r.support.size(); ++k) {
      if (r.probs[k] > 0.0) column_entries_[fill[r.support[k]]++] = {x, r.probs[k]};
    }
  }
}

const SparseRow& ObfuscationMatrix::row(std::size_t x) const {
  if (x >= rows_.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "location index " + std::to_string(x) + " is not in the matrix");
  }
  return rows_[x];
}

double ObfuscationMatrix::probability(std::size_t x, std::size_t x_prime) const {
  const SparseRow& r = row(x);
  auto it = std::lower_bound(r.support.begin(), r.support.end(), x_prime);
  if (it == r.support.end() || *it != x_prime) return 0.0;
  return r.probs[static_cast<std::size_t>(it - r.support.begin())];
}

std::span<const ObfuscationMatrix::Entry> ObfuscationMatrix::column(
    std::size_t x_prime) const {
  if (x_prime + 1 >= column_offsets_.size()) return {};
  return std::span<const Entry>(column_entries_)
      .subspan(column_offsets_[x_prime],
               column_offsets_[x_prime + 1] - column_offsets_[x_prime]);
}

SparseRow mechanism_row(const Domain& domain, std::size_t x, const Pls& pls,
                        std::span<const std::size_t> range) {
  if (!std::binary_search(pls.members.begin(), pls.members.end(), x)) {
    throw Error(ErrorCode::kInvalidArgument,
                "location id " + std::to_string(domain.location(x).id) +
                    " is not a member of the PLS");
  }
  if (!(pls.diameter > 0.0)) {
    throw Error(ErrorCode::kDegeneratePls, "PLS has zero diameter");
  }
  const double eps_g = pls.epsilon / (2.0 * pls.diameter);
  SparseRow row;
  row.support.assign(range.begin(), range.end());
  row.probs.resize(range.size());
  double d_min = std::numeric_limits<double>::infinity();
  for (std::size_t t : range) d_min = std::min(d_min, domain.distance(x, t));
  double total = 0.0;
  for (std::size_t k = 0; k < range.size(); ++k) {
    row.probs[k] = std::exp(-eps_g * (domain.distance(x, range[k]) - d_min));
    total += row.probs[k];
  }
  for (double& p : row.probs) p /= total;
  return row;
}

ObfuscationMatrix build_matrix(const PlsPartition& partition,
                               const Domain& domain) {
  std::vector<SparseRow> rows(domain.size());
  for (std::size_t x = 0; x < domain.size(); ++x) {
    const int owner = partition.owner.at(x);
    if (owner < 0) {
      throw Error(ErrorCode::kInvalidArgument,
                  "location id " + std::to_string(domain.location(x).id) +
                      " has no PLS");
    }
    const auto j = static_cast<std::size_t>(owner);
    rows[x] = mechanism_row(domain, x, partition.plss[j],
                            partition.reporting_ranges[j]);
  }
  return ObfuscationMatrix(std::move(rows), domain.size());
}

ObfuscationMatrix identity_matrix(std::size_t domain_size) {
  std::vector<SparseRow> rows(domain_size);
  for (std::size_t x = 0; x < domain_size; ++x) rows[x] = {{x}, {1.0}};
  return ObfuscationMatrix(std::move(rows), domain_size);
}

std::size_t sample_pseudo(const ObfuscationMatrix& matrix, std::size_t x,
                          Rng& rng) {
  const SparseRow& r = matrix.row(x);
  if (r.support.empty()) {
    throw Error(ErrorCode::kInvalidArgument,
                "row " + std::to_string(x) + " is empty");
  }
  const double u = rng.uniform01();
  double cumulative = 0.0;
  for (std::size_t k = 0; k < r.support.size(); ++k) {
    cumulative += r.probs[k];
    if (u < cumulative) return r.support[k];
  }
  // Rounding left the total just under u; take the last positive entry.
  for (std::size_t k = r.support.size(); k-- > 0;) {
    if (r.probs[k] > 0.0) return r.support[k];
  }
  return r.support.back();
}

double quality_loss_at(std::size_t x, const ObfuscationMatrix& matrix,
                       const Domain& domain) {
  const SparseRow& r = matrix.row(x);
  double loss = 0.0;
  for (std::size_t k = 0; k < r.support.size(); ++k) {
    loss += r.probs[k] * domain.distance(r.support[k], x);
  }
  return loss;
}

double kernel_quality_loss(std::span<const double> distances, double eps_g) {
  double d_min = std::numeric_limits<double>::infinity();
  for (double d : distances) d_min = std::min(d_min, d);
  double num = 0.0, den = 0.0;
  for (double d : distances) {
    const double w = std::exp(-eps_g * (d - d_min));
    num += d * w;
    den += w;
  }
  return num / den;
}

StochasticityReport row_stochasticity(const ObfuscationMatrix& matrix,
                                      double tolerance) {
  StochasticityReport report;
  for (std::size_t x = 0; x < matrix.size(); ++x) {
    const SparseRow& r = matrix.row(x);
    double total = 0.0;
    for (double p : r.probs) {
      total += p;
      if (!(p > 0.0)) report.has_nonpositive = true;
    }
    const double dev = std::abs(total - 1.0);
    if (!report.worst_row || dev > report.max_deviation) {
      report.max_deviation = dev;
      report.worst_row = x;
    }
  }
  report.pass = report.max_deviation <= tolerance && !report.has_nonpositive;
  return report;
}

namespace {

double ratio(double num, double den) {
  if (den > 0.0) return num / den;
  return num > 0.0 ? std::numeric_limits<double>::infinity() : 1.0;
}

}  // namespace

DpReport verify_dp_within_pls(const ObfuscationMatrix& matrix,
                              const PlsPartition& partition, double epsilon0) {
  DpReport report;
  report.bound = std::exp(epsilon0);
  for (std::size_t j = 0; j < partition.plss.size(); ++j) {
    const auto& members = partition.plss[j].members;
    const auto& range = partition.reporting_ranges[j];
    for (std::size_t x : members) {
      for (std::size_t y : members) {
        if (x == y) continue;
        for (std::size_t xp : range) {
          const double r = ratio(matrix.probability(x, xp),
                                 matrix.probability(y, xp));
          if (r > report.max_ratio) {
            report.max_ratio = r;
            report.pls = j;
            report.x = x;
            report.y = y;
            report.x_prime = xp;
          }
        }
      }
    }
  }
  report.pass = report.max_ratio <= report.bound * (1.0 + 1e-9);
  return report;
}

CrossPlsReport verify_cross_pls(const ObfuscationMatrix& matrix,
                                const PlsPartition& partition,
                                const Domain& domain, std::size_t i,
                                std::size_t j, double epsilon0) {
  CrossPlsReport report;
  const auto& range_i = partition.reporting_ranges.at(i);
  const auto& range_j = partition.reporting_ranges.at(j);
  std::vector<std::size_t> common;
  std::set_intersection(range_i.begin(), range_i.end(), range_j.begin(),
                        range_j.end(), std::back_inserter(common));
  if (common.empty()) return report;
  report.applicable = true;
  const Pls& pi = partition.plss[i];
  const Pls& pj = partition.plss[j];
  const double exponent =
      0.5 * epsilon0 *
      (diameter(range_j, domain) / pj.diameter +
       diameter(range_i, domain) / pi.diameter);
  report.bound = static_cast<double>(range_j.size()) /
                 static_cast<double>(range_i.size()) * std::exp(exponent);
  for (std::size_t x : pi.members) {
    for (std::size_t y : pj.members) {
      for (std::size_t xp : common) {
        report.observed = std::max(
            report.observed,
            ratio(matrix.probability(x, xp), matrix.probability(y, xp)));
      }
    }
  }
  report.pass = report.observed <= report.bound * (1.0 + 1e-9);
  return report;
}

}  // namespace geomoea
