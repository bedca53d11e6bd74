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

#include "geomoea/adversary.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "geomoea/error.h"
#include "geomoea/parallel.h"

namespace geomoea {
namespace {

struct OutputTerm {
  bool reachable = false;
  double mass = 0.0;  // Pr(x')
  double cost = 0.0;  // min_y sum_x pi(x) f(x'|x) d(y, x)
};

OutputTerm output_term(const Domain& domain, const ObfuscationMatrix& matrix,
                       std::size_t x_prime, std::vector<std::size_t>& support,
                       std::vector<double>& weights) {
  support.clear();
  weights.clear();
  OutputTerm term;
  for (const auto& e : matrix.column(x_prime)) {
    const double w = domain.prior(e.source) * e.prob;
    if (!(w > 0.0)) continue;
    support.push_back(e.source);
    weights.push_back(w);
    term.mass += w;
  }
  if (support.empty()) return term;
  term.reachable = true;
  term.cost = min_expected_distance(domain, support, weights).cost;
  return term;
}

std::vector<OutputTerm> all_output_terms(const Domain& domain,
                                         const ObfuscationMatrix& matrix) {
  std::vector<OutputTerm> terms(domain.size());
  // Fixed chunks of outputs per task keep scratch buffers reusable.
  constexpr std::size_t kChunk = 32;
  const std::size_t chunks = (domain.size() + kChunk - 1) / kChunk;
  parallel_for(chunks, [&](std::size_t c) {
    std::vector<std::size_t> support;
    std::vector<double> weights;
    const std::size_t end = std::min(domain.size(), (c + 1) * kChunk);
    for (std::size_t xp = c * kChunk; xp < end; ++xp) {
      terms[xp] = output_term(domain, matrix, xp, support, weights);
    }
  });
  return terms;
}

void check_size(const Domain& domain, const ObfuscationMatrix& matrix) {
  if (matrix.size() != domain.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "matrix has " + std::to_string(matrix.size()) +
                    " rows but the domain has " +
                    std::to_string(domain.size()) + " locations");
  }
}

}  // namespace

Posterior posterior(const Domain& domain, const ObfuscationMatrix& matrix,
                    std::size_t x_prime) {
  check_size(domain, matrix);
  Posterior post;
  post.observed = x_prime;
  post.probs.assign(domain.size(), 0.0);
  double total = 0.0;
  for (const auto& e : matrix.column(x_prime)) {
    post.probs[e.source] = domain.prior(e.source) * e.prob;
    total += post.probs[e.source];
  }
  if (!(total > 0.0)) {
    throw Error(ErrorCode::kUnreachableOutput,
                "output index " + std::to_string(x_prime) +
                    " is never reported");
  }
  for (double& p : post.probs) p /= total;
  return post;
}

Attack optimal_attack(const Posterior& post, const Domain& domain) {
  std::vector<std::size_t> support;
  std::vector<double> weights;
  for (std::size_t x = 0; x < post.probs.size(); ++x) {
    if (post.probs[x] > 0.0) {
      support.push_back(x);
      weights.push_back(post.probs[x]);
    }
  }
  const PointEstimate best = min_expected_distance(domain, support, weights);
  return {best.index, best.cost};
}

double expected_inference_error(const Domain& domain,
                                const ObfuscationMatrix& matrix) {
  return evaluate(domain, matrix).exp_err;
}

double quality_loss(const Domain& domain, const ObfuscationMatrix& matrix) {
  check_size(domain, matrix);
  double total = 0.0;
  for (std::size_t x = 0; x < domain.size(); ++x) {
    total += domain.prior(x) * quality_loss_at(x, matrix, domain);
  }
  return total;
}

double min_conditional_error(const Domain& domain,
                             const ObfuscationMatrix& matrix) {
  return evaluate(domain, matrix).min_cond_err;
}

Evaluation evaluate(const Domain& domain, const ObfuscationMatrix& matrix) {
  check_size(domain, matrix);
  Evaluation out;
  out.qloss = quality_loss(domain, matrix);
  const auto terms = all_output_terms(domain, matrix);
  double min_cond = std::numeric_limits<double>::infinity();
  for (const OutputTerm& t : terms) {
    if (!t.reachable) continue;
    out.exp_err += t.cost;
    min_cond = std::min(min_cond, t.cost / t.mass);
  }
  out.min_cond_err = std::isfinite(min_cond) ? min_cond : 0.0;
  return out;
}

}  // namespace geomoea
