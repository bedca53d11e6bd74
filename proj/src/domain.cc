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

#include "geomoea/domain.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <numeric>
#include <sstream>
#include <unordered_set>

#include "geomoea/error.h"
#include "geomoea/rng.h"

namespace geomoea {
namespace {

constexpr std::size_t kMaxCachedLocations = 4096;
constexpr double kEarthRadiusKm = 6371.0088;

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) {
    const auto b = field.find_first_not_of(" \t\r");
    const auto e = field.find_last_not_of(" \t\r");
    fields.push_back(b == std::string::npos ? "" : field.substr(b, e - b + 1));
  }
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

double parse_double(const std::string& s, std::size_t row) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size() || !std::isfinite(v)) {
    throw Error(ErrorCode::kParse, "row " + std::to_string(row) +
                                       ": cannot parse number '" + s + "'");
  }
  return v;
}

int parse_int(const std::string& s, std::size_t row) {
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size() || v < std::numeric_limits<int>::min() ||
      v > std::numeric_limits<int>::max()) {
    throw Error(ErrorCode::kParse, "row " + std::to_string(row) +
                                       ": cannot parse id '" + s + "'");
  }
  return static_cast<int>(v);
}

std::vector<Location> read_csv(const std::string& path, bool geo) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open dataset file: " + path);
  std::string line;
  if (!std::getline(in, line)) {
    throw Error(ErrorCode::kParse, "row 1: missing header in " + path);
  }
  const auto header = split_csv_line(line);
  const std::vector<std::string> want =
      geo ? std::vector<std::string>{"id", "lon", "lat"}
          : std::vector<std::string>{"id", "x", "y"};
  if (header != want) {
    throw Error(ErrorCode::kParse, "row 1: expected header '" + want[0] + "," +
                                       want[1] + "," + want[2] + "'");
  }
  struct Raw {
    int id;
    double a;
    double b;
  };
  std::vector<Raw> raw;
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto f = split_csv_line(line);
    if (f.size() != 3) {
      throw Error(ErrorCode::kParse, "row " + std::to_string(row) +
                                         ": expected 3 fields, got " +
                                         std::to_string(f.size()));
    }
    raw.push_back({parse_int(f[0], row), parse_double(f[1], row),
                   parse_double(f[2], row)});
  }
  std::vector<Location> out;
  out.reserve(raw.size());
  if (!geo) {
    for (const auto& r : raw) out.push_back({r.id, r.a, r.b});
    return out;
  }
  if (raw.empty()) return out;
  double lo_lon = raw[0].a, hi_lon = raw[0].a, lo_lat = raw[0].b,
         hi_lat = raw[0].b;
  for (const auto& r : raw) {
    lo_lon = std::min(lo_lon, r.a);
    hi_lon = std::max(hi_lon, r.a);
    lo_lat = std::min(lo_lat, r.b);
    hi_lat = std::max(hi_lat, r.b);
  }
  const double lon0 = 0.5 * (lo_lon + hi_lon);
  const double lat0 = 0.5 * (lo_lat + hi_lat);
  for (const auto& r : raw) out.push_back(project_lon_lat(r.id, r.a, r.b, lon0, lat0));
  return out;
}

double standard_normal(Rng& rng) {
  // Box-Muller; 1 - u keeps the log argument in (0, 1].
  const double u = 1.0 - rng.uniform01();
  const double v = rng.uniform01();
  return std::sqrt(-2.0 * std::log(u)) * std::cos(2.0 * std::numbers::pi * v);
}

std::vector<Location> synthesize(const SyntheticSpec& spec, Rng& rng) {
  const Rect& box = spec.bounds;
  double total_weight = 0.0;
  for (const auto& c : spec.clusters) total_weight += c.weight;
  std::vector<Location> out;
  out.reserve(static_cast<std::size_t>(spec.count));
  for (int i = 0; i < spec.count; ++i) {
    double x = 0.0, y = 0.0;
    if (spec.clusters.empty() || total_weight <= 0.0 ||
        rng.uniform01() < spec.background_fraction) {
      x = rng.uniform(box.min_x, box.max_x);
      y = rng.uniform(box.min_y, box.max_y);
    } else {
      double pick = rng.uniform01() * total_weight;
      std::size_t c = 0;
      while (c + 1 < spec.clusters.size() && pick >= spec.clusters[c].weight) {
        pick -= spec.clusters[c].weight;
        ++c;
      }
      const auto& cl = spec.clusters[c];
      // Resample out-of-box draws a few times, then clamp.
      for (int attempt = 0;; ++attempt) {
        x = cl.center_x + cl.sigma * standard_normal(rng);
        y = cl.center_y + cl.sigma * standard_normal(rng);
        if (box.contains(x, y)) break;
        if (attempt == 16) {
          x = std::clamp(x, box.min_x, box.max_x);
          y = std::clamp(y, box.min_y, box.max_y);
          break;
        }
      }
    }
    out.push_back({i, x, y});
  }
  return out;
}

}  // namespace

double distance(const Location& a, const Location& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

Location project_lon_lat(int id, double lon, double lat, double lon0,
                         double lat0) {
  constexpr double kDeg = std::numbers::pi / 180.0;
  return {id, kEarthRadiusKm * (lon - lon0) * kDeg * std::cos(lat0 * kDeg),
          kEarthRadiusKm * (lat - lat0) * kDeg};
}

void DatasetSpec::validate() const {
  if (!(blur_radius_m >= 0.0) || !std::isfinite(blur_radius_m)) {
    throw Error(ErrorCode::kInvalidConfig, "blur_radius must be >= 0");
  }
  if (!(prior_lo > 0.0) || !(prior_lo <= prior_hi) || !std::isfinite(prior_hi)) {
    throw Error(ErrorCode::kInvalidConfig,
                "prior_range must satisfy 0 < lo <= hi");
  }
  if (!csv_path) {
    if (synthetic.count < 2) {
      throw Error(ErrorCode::kDomainTooSmall,
                  "synthetic count must be >= 2, got " +
                      std::to_string(synthetic.count));
    }
    const Rect& b = synthetic.bounds;
    if (!(b.max_x >= b.min_x) || !(b.max_y >= b.min_y)) {
      throw Error(ErrorCode::kInvalidConfig, "synthetic bounds are inverted");
    }
    if (!(synthetic.background_fraction >= 0.0 &&
          synthetic.background_fraction <= 1.0)) {
      throw Error(ErrorCode::kInvalidConfig,
                  "background_fraction must lie in [0, 1]");
    }
  }
}

DatasetSpec benchmark_spec(std::uint64_t seed) {
  DatasetSpec spec;
  spec.synthetic.count = 400;
  // Spread so that every 50-point cell stays feasible up to eps0 = 1.5 and
  // E_m = 0.2 (whole-cell E' about 1.07 km, against 0.90 required).
  spec.synthetic.bounds = {0.0, 0.0, 14.0, 11.0};
  spec.synthetic.clusters = {{3.5, 2.8, 1.5, 1.0},
                             {9.8, 3.5, 1.8, 1.0},
                             {4.2, 8.4, 1.7, 1.0},
                             {10.5, 8.4, 1.4, 1.0}};
  spec.synthetic.background_fraction = 0.3;
  spec.blur_radius_m = 80.0;
  spec.prior_lo = 0.0005;
  spec.prior_hi = 0.0015;
  spec.seed = seed;
  return spec;
}

Domain::Domain(std::vector<Location> locations, std::vector<double> prior) {
  if (locations.size() < 2) {
    throw Error(ErrorCode::kDomainTooSmall,
                "a domain needs at least 2 locations, got " +
                    std::to_string(locations.size()));
  }
  if (prior.size() != locations.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "prior size does not match location count");
  }
  std::vector<std::size_t> order(locations.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return locations[a].id < locations[b].id;
  });
  locations_.reserve(order.size());
  prior_.reserve(order.size());
  double total = 0.0;
  for (std::size_t k = 0; k < order.size(); ++k) {
    const Location& loc = locations[order[k]];
    if (k > 0 && loc.id == locations_.back().id) {
      throw Error(ErrorCode::kInvalidArgument,
                  "duplicate location id " + std::to_string(loc.id));
    }
    if (!std::isfinite(loc.x) || !std::isfinite(loc.y)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "non-finite coordinate for id " + std::to_string(loc.id));
    }
    const double p = prior[order[k]];
    if (!(p > 0.0) || !std::isfinite(p)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "prior must be positive for id " + std::to_string(loc.id));
    }
    locations_.push_back(loc);
    prior_.push_back(p);
    total += p;
  }
  // Priors that already sum to one within rounding are kept bit-for-bit, so
  // a domain read back from JSON matches the one that was written.
  if (std::abs(total - 1.0) > 1e-12) {
    for (double& p : prior_) p /= total;
  }

  bounds_ = {locations_[0].x, locations_[0].y, locations_[0].x,
             locations_[0].y};
  for (const auto& l : locations_) {
    bounds_.min_x = std::min(bounds_.min_x, l.x);
    bounds_.min_y = std::min(bounds_.min_y, l.y);
    bounds_.max_x = std::max(bounds_.max_x, l.x);
    bounds_.max_y = std::max(bounds_.max_y, l.y);
  }

  const std::size_t n = locations_.size();
  if (n <= kMaxCachedLocations) {
    auto table = std::make_shared<std::vector<double>>(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        const double d = geomoea::distance(locations_[i], locations_[j]);
        (*table)[i * n + j] = d;
        (*table)[j * n + i] = d;
      }
    }
    distances_ = std::move(table);
  }
}

std::size_t Domain::index_of(int id) const {
  auto it = std::lower_bound(
      locations_.begin(), locations_.end(), id,
      [](const Location& l, int v) { return l.id < v; });
  if (it == locations_.end() || it->id != id) {
    throw Error(ErrorCode::kInvalidArgument,
                "unknown location id " + std::to_string(id));
  }
  return static_cast<std::size_t>(it - locations_.begin());
}

std::size_t Domain::nearest(double x, double y) const {
  const Location probe{-1, x, y};
  std::size_t best = 0;
  double best_d = geomoea::distance(probe, locations_[0]);
  for (std::size_t i = 1; i < locations_.size(); ++i) {
    const double d = geomoea::distance(probe, locations_[i]);
    if (d < best_d) {
      best_d = d;
      best = i;
    }
  }
  return best;
}

Domain load_domain(const DatasetSpec& spec) {
  spec.validate();
  std::vector<Location> raw;
  if (spec.csv_path) {
    raw = read_csv(*spec.csv_path, spec.geo);
  } else {
    Rng layout(derive_seed(spec.seed, {1}));
    raw = synthesize(spec.synthetic, layout);
  }
  if (raw.size() < 2) {
    throw Error(ErrorCode::kDomainTooSmall,
                "a domain needs at least 2 locations, got " +
                    std::to_string(raw.size()));
  }

  const double radius_km = spec.blur_radius_m / 1000.0;
  if (radius_km > 0.0) {
    Rng blur(derive_seed(spec.seed, {2}));
    for (auto& loc : raw) {
      // Uniform over the disk: radius ~ R * sqrt(U).
      const double r = radius_km * std::sqrt(blur.uniform01());
      const double theta = 2.0 * std::numbers::pi * blur.uniform01();
      loc.x += r * std::cos(theta);
      loc.y += r * std::sin(theta);
    }
  }

  Rng prior_rng(derive_seed(spec.seed, {3}));
  std::vector<double> prior(raw.size());
  for (double& p : prior) p = prior_rng.uniform(spec.prior_lo, spec.prior_hi);
  return Domain(std::move(raw), std::move(prior));
}

PointEstimate min_expected_distance(const Domain& domain,
                                    std::span<const std::size_t> support,
                                    std::span<const double> weights,
                                    std::span<const std::size_t> candidates) {
  if (support.empty() || support.size() != weights.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "weighted median needs a non-empty, matching support");
  }
  auto cost = [&](std::size_t y) {
    double s = 0.0;
    for (std::size_t k = 0; k < support.size(); ++k) {
      s += weights[k] * domain.distance(y, support[k]);
    }
    return s;
  };
  double total_weight = 0.0;
  std::size_t anchor_k = 0;
  for (std::size_t k = 0; k < support.size(); ++k) {
    total_weight += weights[k];
    if (weights[k] > weights[anchor_k]) anchor_k = k;
  }
  // The heaviest support point is the pruning anchor; when candidates are
  // restricted it may not be one of them, which only weakens the bound.
  const std::size_t anchor = support[anchor_k];
  const double anchor_cost = cost(anchor);
  PointEstimate best{0, std::numeric_limits<double>::infinity()};
  auto consider = [&](std::size_t y) {
    const double d = domain.distance(y, anchor);
    const double lower = total_weight * d - anchor_cost;
    if (lower > best.cost + 1e-9 * (total_weight * d + anchor_cost)) return;
    const double c = cost(y);
    if (c < best.cost || (c == best.cost && y < best.index)) best = {y, c};
  };
  if (candidates.empty()) {
    best = {anchor, anchor_cost};
    for (std::size_t y = 0; y < domain.size(); ++y) consider(y);
  } else {
    for (std::size_t y : candidates) consider(y);
  }
  return best;
}

}  // namespace geomoea
