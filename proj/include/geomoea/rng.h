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

#ifndef GEOMOEA_RNG_H_
#define GEOMOEA_RNG_H_

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <random>

namespace geomoea {

// Mixes a base seed with a list of stream tags (generation, slot, cell id,
// attempt, ...) into an independent 64-bit seed. Used so that every parallel
// unit of work owns a reproducible stream regardless of scheduling.
std::uint64_t derive_seed(std::uint64_t base,
                          std::initializer_list<std::uint64_t> tags);

// Thin wrapper over mt19937_64. The std distributions are implementation
// defined, so the draws here are spelled out to stay identical across
// standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform in [0, 1).
  double uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // Uniform in [0, n). n must be positive.
  std::size_t index(std::size_t n);

  bool coin() { return (engine_() >> 63) != 0; }

  // Fresh seed for a child stream.
  std::uint64_t split() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace geomoea

#endif  // GEOMOEA_RNG_H_
