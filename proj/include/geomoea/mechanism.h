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

// Exponential-mechanism obfuscation over per-PLS reporting ranges.
//
// A true location x in PLS P reports x' from the range Y(P) with probability
// proportional to exp(-eps_P * d(x, x') / (2 * D(P))), where eps_P is the
// PLS's own adaptive budget (never above eps0) and D(P) its diameter, the
// sensitivity of the utility -d(x, x').

#ifndef GEOMOEA_MECHANISM_H_
#define GEOMOEA_MECHANISM_H_

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "geomoea/domain.h"
#include "geomoea/pls.h"
#include "geomoea/rng.h"

namespace geomoea {

// Support in ascending domain-index order; probabilities aligned with it.
struct SparseRow {
  std::vector<std::size_t> support;
  std::vector<double> probs;
};

class ObfuscationMatrix {
 public:
  struct Entry {
    std::size_t source = 0;  // true location
    double prob = 0.0;
  };

  ObfuscationMatrix() = default;
  // One row per domain location. Rows are not checked for stochasticity here
  // (see row_stochasticity); supports must be ascending and in range.
  ObfuscationMatrix(std::vector<SparseRow> rows, std::size_t domain_size);

  std::size_t size() const { return rows_.size(); }
  const SparseRow& row(std::size_t x) const;
  // f(x' | x); zero outside the row's support.
  double probability(std::size_t x, std::size_t x_prime) const;
  // All (x, f(x' | x)) with positive mass, x ascending.
  std::span<const Entry> column(std::size_t x_prime) const;
  std::size_t domain_size() const { return column_offsets_.empty() ? 0 : column_offsets_.size() - 1; }

 private:
  std::vector<SparseRow> rows_;
  std::vector<std::size_t> column_offsets_;
  std::vector<Entry> column_entries_;
};

// Reporting distribution of x in `pls` over `range`. Exponents are shifted by
// the row's smallest distance before normalizing. Throws kDegeneratePls when
// the PLS diameter is zero and kInvalidArgument when x is not a member.
SparseRow mechanism_row(const Domain& domain, std::size_t x, const Pls& pls,
                        std::span<const std::size_t> range);

ObfuscationMatrix build_matrix(const PlsPartition& partition,
                               const Domain& domain);

// Every location reports itself.
ObfuscationMatrix identity_matrix(std::size_t domain_size);

// Inverse-CDF draw over the row's id-ordered support.
std::size_t sample_pseudo(const ObfuscationMatrix& matrix, std::size_t x,
                          Rng& rng);

// Expected report distance from x.
double quality_loss_at(std::size_t x, const ObfuscationMatrix& matrix,
                       const Domain& domain);

// L(eps_g) = sum_j d_j e^{-eps_g d_j} / sum_j e^{-eps_g d_j}: the quality
// loss of one row written as a function of eps_g = eps / (2D).
double kernel_quality_loss(std::span<const double> distances, double eps_g);

struct StochasticityReport {
  bool pass = true;
  double max_deviation = 0.0;  // max |sum(row) - 1|
  std::optional<std::size_t> worst_row;
  bool has_nonpositive = false;
};

StochasticityReport row_stochasticity(const ObfuscationMatrix& matrix,
                                      double tolerance = 1e-9);

struct DpReport {
  bool pass = true;
  double max_ratio = 1.0;
  double bound = 1.0;  // e^eps0
  // Where the max ratio was observed.
  std::size_t pls = 0;
  std::size_t x = 0;
  std::size_t y = 0;
  std::size_t x_prime = 0;
};

// Max of f(x'|x) / f(x'|y) over all PLSs, x, y in the PLS and x' in its
// range. Passes iff it does not exceed e^eps0 * (1 + 1e-9).
DpReport verify_dp_within_pls(const ObfuscationMatrix& matrix,
                              const PlsPartition& partition, double epsilon0);

struct CrossPlsReport {
  bool applicable = false;  // ranges intersect
  bool pass = true;
  double observed = 0.0;  // max f(x'|x) / f(x'|y)
  double bound = 0.0;
};

// Ratio bound between two PLSs with intersecting ranges:
// (|Y_j| / |Y_i|) * exp(eps0 / 2 * (D(Y_j) / D(P_j) + D(Y_i) / D(P_i))).
// The bound is not tight; both numbers are reported.
CrossPlsReport verify_cross_pls(const ObfuscationMatrix& matrix,
                                const PlsPartition& partition,
                                const Domain& domain, std::size_t i,
                                std::size_t j, double epsilon0);

}  // namespace geomoea

#endif  // GEOMOEA_MECHANISM_H_
