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

// The discrete location universe: coordinates in km on a local tangent
// plane, a normalized prior, and the Euclidean metric.

#ifndef GEOMOEA_DOMAIN_H_
#define GEOMOEA_DOMAIN_H_

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace geomoea {

struct Location {
  int id = 0;
  double x = 0.0;  // km east
  double y = 0.0;  // km north
};

// Euclidean distance in km.
double distance(const Location& a, const Location& b);

struct Rect {
  double min_x = 0.0;
  double min_y = 0.0;
  double max_x = 0.0;
  double max_y = 0.0;

  double width() const { return max_x - min_x; }
  double height() const { return max_y - min_y; }
  bool contains(double x, double y) const {
    return x >= min_x && x <= max_x && y >= min_y && y <= max_y;
  }
};

struct GaussianCluster {
  double center_x = 0.0;
  double center_y = 0.0;
  double sigma = 1.0;  // km
  double weight = 1.0;
};

struct SyntheticSpec {
  int count = 400;
  Rect bounds{0.0, 0.0, 10.0, 8.0};
  std::vector<GaussianCluster> clusters;
  // Share of points drawn uniformly over `bounds` instead of from a cluster.
  double background_fraction = 1.0;
};

struct DatasetSpec {
  // When set, locations are read from this CSV; otherwise `synthetic` is used.
  std::optional<std::string> csv_path;
  // CSV columns are id,lon,lat (degrees) instead of id,x,y (km).
  bool geo = false;
  SyntheticSpec synthetic;
  double blur_radius_m = 0.0;
  double prior_lo = 0.0005;
  double prior_hi = 0.0015;
  std::uint64_t seed = 1;

  void validate() const;
};

// The 400-location clustered layout used by the benchmarks and tests.
DatasetSpec benchmark_spec(std::uint64_t seed);

class Domain {
 public:
  // Locations are reordered by id so that index order equals id order; the
  // prior is permuted alongside and normalized to sum to one.
  Domain(std::vector<Location> locations, std::vector<double> prior);

  std::size_t size() const { return locations_.size(); }
  const Location& location(std::size_t i) const { return locations_[i]; }
  std::span<const Location> locations() const { return locations_; }
  double prior(std::size_t i) const { return prior_[i]; }
  std::span<const double> priors() const { return prior_; }

  double distance(std::size_t a, std::size_t b) const {
    if (distances_) return (*distances_)[a * locations_.size() + b];
    return geomoea::distance(locations_[a], locations_[b]);
  }

  // Throws kInvalidArgument for unknown ids.
  std::size_t index_of(int id) const;
  const Rect& bounds() const { return bounds_; }

  // Index of the domain location closest to (x, y), ties by lower id.
  std::size_t nearest(double x, double y) const;

 private:
  std::vector<Location> locations_;
  std::vector<double> prior_;
  Rect bounds_;
  // Full N x N table when N is small enough; shared so copies are cheap.
  std::shared_ptr<const std::vector<double>> distances_;
};

Domain load_domain(const DatasetSpec& spec);

struct PointEstimate {
  std::size_t index = 0;
  double cost = 0.0;
};

// The discrete weighted 1-median: argmin over y of sum_k w_k * d(y, x_k).
// `candidates` restricts y; empty means the whole domain. Ties go to the
// lowest index. Candidates are pruned with the triangle-inequality bound
// W * d(y, c) - S(c) <= S(y), which never discards a minimizer.
PointEstimate min_expected_distance(const Domain& domain,
                                    std::span<const std::size_t> support,
                                    std::span<const double> weights,
                                    std::span<const std::size_t> candidates = {});

// Equirectangular projection about (lon0, lat0), in km.
Location project_lon_lat(int id, double lon, double lat, double lon0,
                         double lat0);

}  // namespace geomoea

#endif  // GEOMOEA_DOMAIN_H_
