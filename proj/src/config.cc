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

#include "geomoea/config.h"

#include <cerrno>
#include <cstdlib>
#include <set>
#include <string>

#include "geomoea/error.h"

namespace geomoea {
namespace {

using Json = nlohmann::ordered_json;

// Reads fields of one JSON object, then rejects any key it never asked for.
class ObjectReader {
 public:
  ObjectReader(const Json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) fail("is not an object");
  }

  template <typename T>
  void read(const char* key, T& out) {
    seen_.insert(key);
    if (!j_.contains(key)) return;
    try {
      out = j_.at(key).get<T>();
    } catch (const nlohmann::json::exception&) {
      fail(std::string("\"") + key + "\" has the wrong type");
    }
  }

  const Json* child(const char* key) {
    seen_.insert(key);
    return j_.contains(key) ? &j_.at(key) : nullptr;
  }

  void finish() const {
    for (const auto& [key, value] : j_.items()) {
      if (!seen_.count(key)) fail("unknown key \"" + key + "\"");
    }
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorCode::kInvalidConfig, path_ + ": " + what);
  }

  const std::string& path() const { return path_; }

 private:
  const Json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

DatasetSpec dataset_from_json(const Json& j) {
  DatasetSpec spec = benchmark_spec(1);
  ObjectReader r(j, "dataset");
  std::string csv;
  r.read("csv", csv);
  if (!csv.empty()) spec.csv_path = csv;
  r.read("geo", spec.geo);
  r.read("blur_radius_m", spec.blur_radius_m);
  if (const Json* pr = r.child("prior_range")) {
    if (!pr->is_array() || pr->size() != 2) r.fail("prior_range must be [lo, hi]");
    spec.prior_lo = (*pr)[0].get<double>();
    spec.prior_hi = (*pr)[1].get<double>();
  }
  if (const Json* syn = r.child("synthetic")) {
    ObjectReader s(*syn, "dataset.synthetic");
    s.read("count", spec.synthetic.count);
    s.read("background_fraction", spec.synthetic.background_fraction);
    if (const Json* b = s.child("bounds")) {
      if (!b->is_array() || b->size() != 4) {
        s.fail("bounds must be [min_x, min_y, max_x, max_y]");
      }
      spec.synthetic.bounds = {(*b)[0].get<double>(), (*b)[1].get<double>(),
                               (*b)[2].get<double>(), (*b)[3].get<double>()};
    }
    if (const Json* cs = s.child("clusters")) {
      if (!cs->is_array()) s.fail("clusters must be an array");
      spec.synthetic.clusters.clear();
      for (const Json& c : *cs) {
        GaussianCluster g;
        ObjectReader cr(c, "dataset.synthetic.clusters[]");
        cr.read("x", g.center_x);
        cr.read("y", g.center_y);
        cr.read("sigma", g.sigma);
        cr.read("weight", g.weight);
        cr.finish();
        spec.synthetic.clusters.push_back(g);
      }
    }
    s.finish();
  }
  r.finish();
  return spec;
}

Json dataset_to_json(const DatasetSpec& spec) {
  Json clusters = Json::array();
  for (const auto& c : spec.synthetic.clusters) {
    clusters.push_back({{"x", c.center_x}, {"y", c.center_y},
                        {"sigma", c.sigma}, {"weight", c.weight}});
  }
  Json j;
  if (spec.csv_path) j["csv"] = *spec.csv_path;
  j["geo"] = spec.geo;
  j["blur_radius_m"] = spec.blur_radius_m;
  j["prior_range"] = {spec.prior_lo, spec.prior_hi};
  const Rect& b = spec.synthetic.bounds;
  j["synthetic"] = {{"count", spec.synthetic.count},
                    {"bounds", {b.min_x, b.min_y, b.max_x, b.max_y}},
                    {"background_fraction", spec.synthetic.background_fraction},
                    {"clusters", std::move(clusters)}};
  return j;
}

}  // namespace

std::uint64_t default_seed() {
  const char* env = std::getenv("GEOMOEA_SEED");
  if (!env || !*env) return 1;
  errno = 0;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(env, &end, 10);
  if (errno != 0 || *end != '\0' || env[0] == '-') return 1;
  return v;
}

Baseline parse_baseline(const std::string& name) {
  if (name == "none") return Baseline::kNone;
  if (name == "dpive") return Baseline::kDpive;
  if (name == "pso") return Baseline::kPso;
  throw Error(ErrorCode::kInvalidConfig, "unknown baseline \"" + name + "\"");
}

WorkerMode parse_worker_mode(const std::string& name) {
  if (name == "uniform") return WorkerMode::kUniform;
  if (name == "one_to_four") return WorkerMode::kOneToFour;
  throw Error(ErrorCode::kInvalidConfig, "unknown worker mode \"" + name + "\"");
}

const char* baseline_name(Baseline b) {
  switch (b) {
    case Baseline::kDpive:
      return "dpive";
    case Baseline::kPso:
      return "pso";
    case Baseline::kNone:
      break;
  }
  return "none";
}

const char* worker_mode_name(WorkerMode m) {
  return m == WorkerMode::kOneToFour ? "one_to_four" : "uniform";
}

RunConfig config_from_json(const Json& j) {
  RunConfig cfg;
  cfg.seed = default_seed();
  ObjectReader r(j, "config");
  r.read("seed", cfg.seed);
  r.read("threads", cfg.threads);
  r.read("output_dir", cfg.output_dir);
  if (const Json* d = r.child("dataset")) cfg.dataset = dataset_from_json(*d);
  if (const Json* p = r.child("privacy")) {
    ObjectReader pr(*p, "privacy");
    pr.read("epsilon0", cfg.privacy.epsilon0);
    pr.read("e_m", cfg.privacy.e_m);
    pr.read("n0", cfg.privacy.n0);
    pr.read("min_report_locations", cfg.privacy.min_report_locations);
    pr.read("min_report_plss", cfg.privacy.min_report_plss);
    pr.read("cell_restricted_estimator", cfg.privacy.cell_restricted_estimator);
    pr.read("kmeans_restarts", cfg.privacy.kmeans_restarts);
    pr.read("retc_attempts", cfg.privacy.retc_attempts);
    pr.finish();
  }
  if (const Json* m = r.child("moea")) {
    ObjectReader mr(*m, "moea");
    mr.read("population", cfg.moea.population);
    mr.read("max_generations", cfg.moea.max_generations);
    mr.read("hv_epsilon", cfg.moea.hv_epsilon);
    mr.read("patience", cfg.moea.patience);
    mr.read("tournament_pool", cfg.moea.tournament_pool);
    mr.finish();
  }
  std::string baseline = baseline_name(cfg.baseline);
  r.read("baseline", baseline);
  cfg.baseline = parse_baseline(baseline);
  if (const Json* p = r.child("pso")) {
    ObjectReader pr(*p, "pso");
    pr.read("particles", cfg.pso.particles);
    pr.read("iterations", cfg.pso.iterations);
    pr.read("inertia", cfg.pso.inertia);
    pr.read("cognitive", cfg.pso.cognitive);
    pr.read("social", cfg.pso.social);
    pr.read("alphas", cfg.pso.alphas);
    pr.finish();
  }
  if (const Json* d = r.child("dpive")) {
    ObjectReader dr(*d, "dpive");
    dr.read("runs", cfg.dpive.runs);
    dr.finish();
  }
  if (const Json* s = r.child("sim")) {
    ObjectReader sr(*s, "sim");
    sr.read("workers", cfg.sim.workers);
    sr.read("tasks", cfg.sim.tasks);
    std::string mode = worker_mode_name(cfg.sim.mode);
    sr.read("mode", mode);
    cfg.sim.mode = parse_worker_mode(mode);
    sr.read("geocast_k", cfg.sim.geocast_k);
    sr.read("distance_weighted", cfg.sim.assign.distance_weighted);
    sr.read("shared_workers", cfg.sim.assign.shared_workers);
    sr.finish();
  }
  if (const Json* g = r.child("sweep")) {
    ObjectReader gr(*g, "sweep");
    gr.read("epsilon0", cfg.sweep.epsilon0);
    gr.read("e_m", cfg.sweep.e_m);
    gr.finish();
  }
  r.finish();
  return cfg;
}

Json config_to_json(const RunConfig& cfg) {
  Json j;
  j["seed"] = cfg.seed;
  j["threads"] = cfg.threads;
  j["output_dir"] = cfg.output_dir;
  j["dataset"] = dataset_to_json(cfg.dataset_spec());
  j["privacy"] = {{"epsilon0", cfg.privacy.epsilon0},
                  {"e_m", cfg.privacy.e_m},
                  {"n0", cfg.privacy.n0},
                  {"min_report_locations", cfg.privacy.min_report_locations},
                  {"min_report_plss", cfg.privacy.min_report_plss},
                  {"cell_restricted_estimator",
                   cfg.privacy.cell_restricted_estimator},
                  {"kmeans_restarts", cfg.privacy.kmeans_restarts},
                  {"retc_attempts", cfg.privacy.retc_attempts}};
  j["moea"] = {{"population", cfg.moea.population},
               {"max_generations", cfg.moea.max_generations},
               {"hv_epsilon", cfg.moea.hv_epsilon},
               {"patience", cfg.moea.patience},
               {"tournament_pool", cfg.moea.tournament_pool}};
  j["baseline"] = baseline_name(cfg.baseline);
  j["pso"] = {{"particles", cfg.pso.particles},
              {"iterations", cfg.pso.iterations},
              {"inertia", cfg.pso.inertia},
              {"cognitive", cfg.pso.cognitive},
              {"social", cfg.pso.social},
              {"alphas", cfg.pso.alphas}};
  j["dpive"] = {{"runs", cfg.dpive.runs}};
  j["sim"] = {{"workers", cfg.sim.workers},
              {"tasks", cfg.sim.tasks},
              {"mode", worker_mode_name(cfg.sim.mode)},
              {"geocast_k", cfg.sim.geocast_k},
              {"distance_weighted", cfg.sim.assign.distance_weighted},
              {"shared_workers", cfg.sim.assign.shared_workers}};
  j["sweep"] = {{"epsilon0", cfg.sweep.epsilon0}, {"e_m", cfg.sweep.e_m}};
  return j;
}

DatasetSpec RunConfig::dataset_spec() const {
  DatasetSpec spec = dataset ? *dataset : benchmark_spec(seed);
  spec.seed = seed;
  return spec;
}

void RunConfig::finalize() {
  moea.seed = seed;
  pso.seed = seed;
  dpive.seed = seed;
  sim.seed = seed;
  dataset_spec().validate();
  privacy.validate();
  moea.validate();
  if (sim.workers < 1 || sim.tasks < 0 || sim.geocast_k < 1) {
    throw Error(ErrorCode::kInvalidConfig,
                "sim needs workers >= 1, tasks >= 0 and geocast_k >= 1");
  }
  if (dpive.runs < 0) {
    throw Error(ErrorCode::kInvalidConfig, "dpive.runs must be >= 0");
  }
}

}  // namespace geomoea
