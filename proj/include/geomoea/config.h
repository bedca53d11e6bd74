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

// Run configuration: one JSON document, every field optional, plus command
// line overrides applied on top by the CLI.

#ifndef GEOMOEA_CONFIG_H_
#define GEOMOEA_CONFIG_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "geomoea/domain.h"
#include "geomoea/moea.h"
#include "geomoea/pls.h"
#include "geomoea/sc_sim.h"

namespace geomoea {

enum class Baseline { kNone, kDpive, kPso };

struct SweepGrid {
  std::vector<double> epsilon0 = {0.1, 0.2, 0.3, 0.4, 0.5,
                                  0.6, 0.7, 0.8, 0.9, 1.0};
  std::vector<double> e_m = {0.05,  0.075, 0.1,   0.125, 0.15, 0.175,
                             0.2,   0.225, 0.25,  0.275, 0.3};
};

struct RunConfig {
  // Unset: the synthetic benchmark for the run seed.
  std::optional<DatasetSpec> dataset;
  PrivacyConfig privacy;
  MoeaConfig moea;
  Baseline baseline = Baseline::kNone;
  PsoConfig pso;
  DpiveConfig dpive;
  SimulationConfig sim;
  SweepGrid sweep;
  std::string output_dir = "out";
  unsigned threads = 0;
  std::uint64_t seed = 1;

  // Copies `seed` into every sub-config and validates them.
  void finalize();
  DatasetSpec dataset_spec() const;
};

// Throws kInvalidConfig for unknown keys or values of the wrong type.
RunConfig config_from_json(const nlohmann::ordered_json& j);
nlohmann::ordered_json config_to_json(const RunConfig& cfg);

// Seed used when neither the config nor a flag sets one: GEOMOEA_SEED if it
// parses as an unsigned integer, else 1.
std::uint64_t default_seed();

Baseline parse_baseline(const std::string& name);
WorkerMode parse_worker_mode(const std::string& name);
const char* baseline_name(Baseline b);
const char* worker_mode_name(WorkerMode m);

}  // namespace geomoea

#endif  // GEOMOEA_CONFIG_H_
