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

// The Bayesian adversary who knows the prior and the obfuscation matrix, and
// the two objectives it induces: expected inference error (the adversary's
// distortion, larger is more private) and quality loss (expected report
// distance, smaller is more useful). Point estimates range over the whole
// discrete domain.

#ifndef GEOMOEA_ADVERSARY_H_
#define GEOMOEA_ADVERSARY_H_

#include <cstddef>
#include <vector>

#include "geomoea/domain.h"
#include "geomoea/mechanism.h"
#include "geomoea/pls.h"

namespace geomoea {

struct Posterior {
  std::size_t observed = 0;
  std::vector<double> probs;  // dense over the domain
};

// Pr(x | x') by Bayes. Throws kUnreachableOutput when no location reports x'.
Posterior posterior(const Domain& domain, const ObfuscationMatrix& matrix,
                    std::size_t x_prime);

struct Attack {
  std::size_t estimate = 0;
  double distortion = 0.0;  // km, the conditional expected error of x'
};

// Minimizes expected distortion under the posterior; ties to the lowest id.
Attack optimal_attack(const Posterior& post, const Domain& domain);

double expected_inference_error(const Domain& domain,
                                const ObfuscationMatrix& matrix);
double quality_loss(const Domain& domain, const ObfuscationMatrix& matrix);

// Smallest conditional expected error over all reachable outputs. Matrices
// built from valid partitions keep this at or above E_m.
double min_conditional_error(const Domain& domain,
                             const ObfuscationMatrix& matrix);

struct Evaluation {
  double qloss = 0.0;
  double exp_err = 0.0;
  double min_cond_err = 0.0;
};

// All three figures in one pass. Outputs are processed in parallel and summed
// in index order, so the result does not depend on the thread count.
Evaluation evaluate(const Domain& domain, const ObfuscationMatrix& matrix);

}  // namespace geomoea

#endif  // GEOMOEA_ADVERSARY_H_
