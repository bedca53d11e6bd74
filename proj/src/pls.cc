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

#include "geomoea/pls.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "geomoea/error.h"
#include "geomoea/parallel.h"

namespace geomoea {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::span<const std::size_t> estimator_candidates(const Cell& cell,
                                                  const PrivacyConfig& cfg) {
  if (cfg.cell_restricted_estimator) return cell.members;
  return {};
}

double squared_gap(const Location& a, double x, double y) {
  const double dx = a.x - x, dy = a.y - y;
  return dx * dx + dy * dy;
}

// One k-means++ seeded Lloyd run on the cell's coordinates.
std::vector<std::vector<std::size_t>> kmeans(const Cell& cell, int k,
                                             const Domain& domain, Rng& rng) {
  const std::size_t m = cell.members.size();
  auto loc = [&](std::size_t li) -> const Location& {
    return domain.location(cell.members[li]);
  };
  std::vector<double> cx, cy;
  std::vector<double> d2(m, kInf);
  std::vector<bool> chosen(m, false);
  std::size_t first = rng.index(m);
  for (int c = 0; c < k; ++c) {
    std::size_t pick = first;
    if (c > 0) {
      double total = 0.0;
      for (std::size_t li = 0; li < m; ++li) {
        if (!chosen[li]) total += d2[li];
      }
      if (total > 0.0) {
        double u = rng.uniform01() * total;
        pick = m;
        for (std::size_t li = 0; li < m; ++li) {
          if (chosen[li] || d2[li] == 0.0) continue;
          pick = li;
          if (u < d2[li]) break;
          u -= d2[li];
        }
      } else {
        std::vector<std::size_t> rest;
        for (std::size_t li = 0; li < m; ++li) {
          if (!chosen[li]) rest.push_back(li);
        }
        pick = rest[rng.index(rest.size())];
      }
    }
    chosen[pick] = true;
    cx.push_back(loc(pick).x);
    cy.push_back(loc(pick).y);
    for (std::size_t li = 0; li < m; ++li) {
      d2[li] = std::min(d2[li], squared_gap(loc(li), cx.back(), cy.back()));
    }
  }

  std::vector<int> assign(m, -1);
  for (int iter = 0; iter < 30; ++iter) {
    bool changed = false;
    for (std::size_t li = 0; li < m; ++li) {
      int best = 0;
      double best_d = kInf;
      for (int c = 0; c < k; ++c) {
        const double d = squared_gap(loc(li), cx[c], cy[c]);
        if (d < best_d) {
          best_d = d;
          best = c;
        }
      }
      if (assign[li] != best) {
        assign[li] = best;
        changed = true;
      }
    }
    if (!changed) break;
    std::vector<double> sx(k, 0.0), sy(k, 0.0);
    std::vector<int> cnt(k, 0);
    for (std::size_t li = 0; li < m; ++li) {
      sx[assign[li]] += loc(li).x;
      sy[assign[li]] += loc(li).y;
      ++cnt[assign[li]];
    }
    for (int c = 0; c < k; ++c) {
      if (cnt[c] > 0) {
        cx[c] = sx[c] / cnt[c];
        cy[c] = sy[c] / cnt[c];
      }
    }
  }
  std::vector<std::vector<std::size_t>> clusters(k);
  for (std::size_t li = 0; li < m; ++li) {
    clusters[assign[li]].push_back(cell.members[li]);
  }
  return clusters;
}

std::string format_km(double v) {
  std::ostringstream out;
  out.precision(6);
  out << v;
  return out.str();
}

}  // namespace

void PrivacyConfig::validate() const {
  if (!(epsilon0 > 0.0) || !std::isfinite(epsilon0)) {
    throw Error(ErrorCode::kInvalidConfig, "epsilon0 must be > 0");
  }
  if (!(e_m > 0.0) || !std::isfinite(e_m)) {
    throw Error(ErrorCode::kInvalidConfig, "e_m must be > 0");
  }
  if (n0 < 2) throw Error(ErrorCode::kInvalidConfig, "n0 must be >= 2");
  if (min_report_plss < 2) {
    throw Error(ErrorCode::kInvalidConfig, "min_report_plss must be >= 2");
  }
  if (kmeans_restarts < 1 || retc_attempts < 1) {
    throw Error(ErrorCode::kInvalidConfig,
                "kmeans_restarts and retc_attempts must be >= 1");
  }
}

std::vector<std::size_t> PlsPartition::plss_in_cell(int cell) const {
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < plss.size(); ++j) {
    if (plss[j].cell == cell) out.push_back(j);
  }
  return out;
}

double e_prime(std::span<const std::size_t> members, const Domain& domain,
               std::span<const std::size_t> candidates) {
  if (members.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "E' of an empty set");
  }
  double mass = 0.0;
  for (std::size_t x : members) mass += domain.prior(x);
  std::vector<double> weights;
  weights.reserve(members.size());
  for (std::size_t x : members) weights.push_back(domain.prior(x) / mass);
  return min_expected_distance(domain, members, weights, candidates).cost;
}

std::optional<double> allocate_epsilon(double e_prime, const PrivacyConfig& cfg) {
  if (!(e_prime > 0.0)) return std::nullopt;
  const double eps = std::min(std::log(e_prime / cfg.e_m), cfg.epsilon0);
  if (!(eps > 0.0)) return std::nullopt;
  return eps;
}

bool meets_strict_bound(double e_prime, const PrivacyConfig& cfg) {
  return e_prime >= std::exp(cfg.epsilon0) * cfg.e_m;
}

double diameter(std::span<const std::size_t> members, const Domain& domain) {
  double d = 0.0;
  for (std::size_t a = 0; a < members.size(); ++a) {
    for (std::size_t b = a + 1; b < members.size(); ++b) {
      d = std::max(d, domain.distance(members[a], members[b]));
    }
  }
  return d;
}

std::size_t medoid(std::span<const std::size_t> members, const Domain& domain) {
  std::size_t best = members.front();
  double best_sum = kInf;
  for (std::size_t a : members) {
    double s = 0.0;
    for (std::size_t b : members) s += domain.distance(a, b);
    if (s < best_sum || (s == best_sum && a < best)) {
      best_sum = s;
      best = a;
    }
  }
  return best;
}

std::optional<Pls> make_pls(std::vector<std::size_t> members, int cell,
                            const Domain& domain, const PrivacyConfig& cfg,
                            std::span<const std::size_t> candidates) {
  if (members.size() < 2) return std::nullopt;
  std::sort(members.begin(), members.end());
  Pls pls;
  pls.cell = cell;
  pls.diameter = diameter(members, domain);
  if (!(pls.diameter > 0.0)) return std::nullopt;
  pls.e_prime = e_prime(members, domain, candidates);
  const auto eps = allocate_epsilon(pls.e_prime, cfg);
  if (!eps) return std::nullopt;
  pls.epsilon = *eps;
  pls.center = medoid(members, domain);
  pls.members = std::move(members);
  return pls;
}

KSearch find_k(const Cell& cell, const Domain& domain, const PrivacyConfig& cfg,
               Rng& rng) {
  const std::size_t m = cell.members.size();
  const auto candidates = estimator_candidates(cell, cfg);
  const double floor = std::exp(cfg.epsilon0) * cfg.e_m;
  for (int k = static_cast<int>(m / 2); k >= 2; --k) {
    double best_score = -kInf;
    std::vector<std::vector<std::size_t>> best;
    for (int r = 0; r < cfg.kmeans_restarts; ++r) {
      auto clusters = kmeans(cell, k, domain, rng);
      bool ok = true;
      double score = kInf;
      for (const auto& c : clusters) {
        if (c.size() < 2) {
          ok = false;
          break;
        }
      }
      for (std::size_t j = 0; ok && j < clusters.size(); ++j) {
        const double e = e_prime(clusters[j], domain, candidates);
        if (!meets_strict_bound(e, cfg)) ok = false;
        score = std::min(score, e / floor);
      }
      if (ok && score > best_score) {
        best_score = score;
        best = std::move(clusters);
      }
    }
    if (!best.empty()) return {k, std::move(best)};
  }
  const double whole = m == 0 ? 0.0 : e_prime(cell.members, domain, candidates);
  if (m < 2 || !meets_strict_bound(whole, cfg)) {
    throw Error(ErrorCode::kCellInfeasible,
                "cell " + std::to_string(cell.id) + " is infeasible: E'=" +
                    format_km(whole) + " km is below e^eps0 * E_m = " +
                    format_km(floor) + " km");
  }
  return {1, {cell.members}};
}

PartitionPlan plan_partition(PartitionTree tree, const Domain& domain,
                             const PrivacyConfig& cfg, std::uint64_t seed) {
  cfg.validate();
  PartitionPlan plan;
  plan.cells.resize(tree.cells.size());
  std::vector<std::optional<Error>> failures(tree.cells.size());
  parallel_for(tree.cells.size(), [&](std::size_t i) {
    try {
      Rng rng(derive_seed(seed, {0x6b5eed, static_cast<std::uint64_t>(i)}));
      plan.cells[i] = find_k(tree.cells[i], domain, cfg, rng);
    } catch (const Error& e) {
      failures[i] = e;
    }
  });
  for (auto& f : failures) {
    if (f) throw *f;
  }
  plan.tree = std::move(tree);
  return plan;
}

std::optional<std::vector<Pls>> grow_with_retreats(
    const Cell& cell, std::span<const std::size_t> centers,
    const Domain& domain, const PrivacyConfig& cfg, BoundRule rule,
    std::vector<std::size_t>* failed_centers) {
  const std::size_t m = cell.members.size();
  const auto candidates = estimator_candidates(cell, cfg);
  if (failed_centers) failed_centers->clear();
  if (centers.empty()) return std::nullopt;

  auto local_of = [&](std::size_t domain_index) {
    auto it = std::lower_bound(cell.members.begin(), cell.members.end(),
                               domain_index);
    if (it == cell.members.end() || *it != domain_index) {
      throw Error(ErrorCode::kInvalidArgument,
                  "center is not a member of cell " + std::to_string(cell.id));
    }
    return static_cast<std::size_t>(it - cell.members.begin());
  };

  struct Snapshot {
    std::vector<std::size_t> members;  // local indices
    double eps_g = 0.0;
    double diameter = 0.0;
  };
  struct Cluster {
    std::vector<std::size_t> members;  // local indices
    bool active = true;
    bool strict_reached = false;
    double diameter = 0.0;
    std::optional<Snapshot> best;
  };

  std::vector<Cluster> clusters(centers.size());
  std::vector<bool> in_pool(m, true);
  std::size_t pool_size = m;
  for (std::size_t j = 0; j < centers.size(); ++j) {
    const std::size_t li = local_of(centers[j]);
    if (!in_pool[li]) return std::nullopt;  // duplicate center
    in_pool[li] = false;
    --pool_size;
    clusters[j].members.push_back(li);
  }

  auto dist = [&](std::size_t a, std::size_t b) {
    return domain.distance(cell.members[a], cell.members[b]);
  };
  auto to_domain = [&](const std::vector<std::size_t>& local) {
    std::vector<std::size_t> out;
    out.reserve(local.size());
    for (std::size_t li : local) out.push_back(cell.members[li]);
    std::sort(out.begin(), out.end());
    return out;
  };

  std::vector<double> near_d(m, kInf);
  std::vector<int> near_c(m, -1);
  auto refresh = [&](std::size_t li) {
    near_d[li] = kInf;
    near_c[li] = -1;
    for (std::size_t j = 0; j < clusters.size(); ++j) {
      if (!clusters[j].active) continue;
      for (std::size_t other : clusters[j].members) {
        const double d = dist(li, other);
        if (d < near_d[li]) {
          near_d[li] = d;
          near_c[li] = static_cast<int>(j);
        }
      }
    }
  };
  for (std::size_t li = 0; li < m; ++li) {
    if (in_pool[li]) refresh(li);
  }

  std::size_t active_count = clusters.size();
  auto freeze = [&](std::size_t j, std::vector<std::size_t> keep) {
    Cluster& c = clusters[j];
    std::vector<bool> kept(m, false);
    for (std::size_t li : keep) kept[li] = true;
    std::vector<std::size_t> released;
    for (std::size_t li : c.members) {
      if (!kept[li]) released.push_back(li);
    }
    c.members = std::move(keep);
    c.active = false;
    --active_count;
    for (std::size_t li : released) {
      in_pool[li] = true;
      ++pool_size;
    }
    for (std::size_t li = 0; li < m; ++li) {
      if (in_pool[li] && (near_c[li] == static_cast<int>(j) ||
                          std::find(released.begin(), released.end(), li) !=
                              released.end())) {
        refresh(li);
      }
    }
  };

  while (pool_size > 0 && active_count > 0) {
    std::size_t pick = m;
    for (std::size_t li = 0; li < m; ++li) {
      if (in_pool[li] && near_c[li] >= 0 &&
          (pick == m || near_d[li] < near_d[pick])) {
        pick = li;
      }
    }
    if (pick == m) break;
    const auto j = static_cast<std::size_t>(near_c[pick]);
    Cluster& c = clusters[j];
    for (std::size_t other : c.members) {
      c.diameter = std::max(c.diameter, dist(pick, other));
    }
    c.members.push_back(pick);
    in_pool[pick] = false;
    --pool_size;
    for (std::size_t li = 0; li < m; ++li) {
      if (!in_pool[li]) continue;
      const double d = dist(li, pick);
      if (d < near_d[li] ||
          (d == near_d[li] && static_cast<int>(j) < near_c[li])) {
        near_d[li] = d;
        near_c[li] = static_cast<int>(j);
      }
    }

    const double e = e_prime(to_domain(c.members), domain, candidates);
    if (c.diameter > 0.0) {
      if (const auto eps = allocate_epsilon(e, cfg)) {
        const double eps_g = *eps / (2.0 * c.diameter);
        if (!c.best || eps_g > c.best->eps_g) {
          c.best = Snapshot{c.members, eps_g, c.diameter};
        }
      }
    }
    if (c.strict_reached || !meets_strict_bound(e, cfg)) continue;
    c.strict_reached = true;
    if (rule == BoundRule::kStrict) {
      freeze(j, c.members);
      continue;
    }
    // Retreat: keep only the active cluster with the best historical eps_g.
    std::size_t winner = clusters.size();
    for (std::size_t w = 0; w < clusters.size(); ++w) {
      const Cluster& cand = clusters[w];
      if (!cand.active || !cand.best) continue;
      if (winner == clusters.size()) {
        winner = w;
        continue;
      }
      const Snapshot& a = *cand.best;
      const Snapshot& b = *clusters[winner].best;
      const std::size_t a_min =
          cell.members[*std::min_element(a.members.begin(), a.members.end())];
      const std::size_t b_min =
          cell.members[*std::min_element(b.members.begin(), b.members.end())];
      if (a.eps_g > b.eps_g ||
          (a.eps_g == b.eps_g &&
           (a.diameter < b.diameter ||
            (a.diameter == b.diameter && a_min < b_min)))) {
        winner = w;
      }
    }
    freeze(winner, clusters[winner].best->members);
    clusters[winner].diameter = clusters[winner].best->diameter;
  }

  // Everything frozen with locations left over: attach them to the nearest
  // frozen cluster, closest first.
  while (pool_size > 0) {
    std::size_t pick = m, target = 0;
    double best_d = kInf;
    for (std::size_t li = 0; li < m; ++li) {
      if (!in_pool[li]) continue;
      for (std::size_t j = 0; j < clusters.size(); ++j) {
        for (std::size_t other : clusters[j].members) {
          const double d = dist(li, other);
          if (d < best_d) {
            best_d = d;
            pick = li;
            target = j;
          }
        }
      }
    }
    clusters[target].members.push_back(pick);
    in_pool[pick] = false;
    --pool_size;
  }

  std::vector<Pls> out;
  out.reserve(clusters.size());
  bool ok = true;
  for (std::size_t j = 0; j < clusters.size(); ++j) {
    auto pls = make_pls(to_domain(clusters[j].members), cell.id, domain, cfg,
                        candidates);
    if (pls && rule == BoundRule::kStrict) {
      if (!meets_strict_bound(pls->e_prime, cfg)) pls.reset();
      else pls->epsilon = cfg.epsilon0;
    }
    if (!pls) {
      ok = false;
      if (!failed_centers) break;
      failed_centers->push_back(centers[j]);
      continue;
    }
    out.push_back(std::move(*pls));
  }
  if (!ok) return std::nullopt;
  std::sort(out.begin(), out.end(), [](const Pls& a, const Pls& b) {
    return a.members.front() < b.members.front();
  });
  return out;
}

std::vector<Pls> ret_c_cell(const Cell& cell, const KSearch& plan,
                            const Domain& domain, const PrivacyConfig& cfg,
                            std::uint64_t seed, BoundRule rule) {
  const std::size_t m = cell.members.size();
  const std::size_t k_cap = std::max<std::size_t>(1, m / 2);
  for (int attempt = 0; attempt < cfg.retc_attempts; ++attempt) {
    Rng rng(derive_seed(seed, {static_cast<std::uint64_t>(cell.id),
                               static_cast<std::uint64_t>(attempt)}));
    std::size_t k = static_cast<std::size_t>(plan.k) + (rng.coin() ? 1 : 0);
    k = std::min(k, k_cap);
    std::vector<std::size_t> order = cell.members;
    for (std::size_t i = 0; i < k; ++i) {
      std::swap(order[i], order[i + rng.index(m - i)]);
    }
    order.resize(k);
    if (auto plss = grow_with_retreats(cell, order, domain, cfg, rule)) {
      return std::move(*plss);
    }
  }
  const auto candidates = estimator_candidates(cell, cfg);
  std::vector<Pls> out;
  for (const auto& cluster : plan.clustering) {
    auto pls = make_pls(cluster, cell.id, domain, cfg, candidates);
    if (!pls || !meets_strict_bound(pls->e_prime, cfg)) {
      throw Error(ErrorCode::kCellInfeasible,
                  "cell " + std::to_string(cell.id) +
                      ": no valid PLS partition after " +
                      std::to_string(cfg.retc_attempts) + " attempts");
    }
    if (rule == BoundRule::kStrict) pls->epsilon = cfg.epsilon0;
    out.push_back(std::move(*pls));
  }
  std::sort(out.begin(), out.end(), [](const Pls& a, const Pls& b) {
    return a.members.front() < b.members.front();
  });
  return out;
}

PlsPartition ret_c(const PartitionPlan& plan, const Domain& domain,
                   const PrivacyConfig& cfg, std::uint64_t seed) {
  const auto& cells = plan.tree.cells;
  std::vector<std::vector<Pls>> per_cell(cells.size());
  std::vector<std::optional<Error>> failures(cells.size());
  parallel_for(cells.size(), [&](std::size_t i) {
    try {
      per_cell[i] = ret_c_cell(cells[i], plan.cells[i], domain, cfg, seed);
    } catch (const Error& e) {
      failures[i] = e;
    }
  });
  for (auto& f : failures) {
    if (f) throw *f;
  }
  return assemble_partition(std::move(per_cell), domain, cfg);
}

PlsPartition ret_c(const PartitionTree& tree, const Domain& domain,
                   const PrivacyConfig& cfg, std::uint64_t seed) {
  return ret_c(plan_partition(tree, domain, cfg, seed), domain, cfg, seed);
}

PlsPartition assemble_partition(std::vector<std::vector<Pls>> per_cell,
                                const Domain& domain, const PrivacyConfig& cfg) {
  PlsPartition partition;
  for (auto& cell_plss : per_cell) {
    for (auto& p : cell_plss) partition.plss.push_back(std::move(p));
  }
  partition.owner.assign(domain.size(), -1);
  for (std::size_t j = 0; j < partition.plss.size(); ++j) {
    for (std::size_t x : partition.plss[j].members) {
      if (partition.owner[x] != -1) {
        throw Error(ErrorCode::kInvalidArgument,
                    "location id " + std::to_string(domain.location(x).id) +
                        " is in two PLSs");
      }
      partition.owner[x] = static_cast<int>(j);
    }
  }
  for (std::size_t x = 0; x < domain.size(); ++x) {
    if (partition.owner[x] == -1) {
      throw Error(ErrorCode::kInvalidArgument,
                  "location id " + std::to_string(domain.location(x).id) +
                      " is not covered by any PLS");
    }
  }
  return build_reporting_ranges(std::move(partition), domain, cfg);
}

PlsPartition build_reporting_ranges(PlsPartition partition,
                                    const Domain& domain,
                                    const PrivacyConfig& cfg) {
  const std::size_t count = partition.plss.size();
  std::vector<Location> centroid(count);
  for (std::size_t j = 0; j < count; ++j) {
    double sx = 0.0, sy = 0.0;
    for (std::size_t x : partition.plss[j].members) {
      sx += domain.location(x).x;
      sy += domain.location(x).y;
    }
    const double n = static_cast<double>(partition.plss[j].members.size());
    centroid[j] = {static_cast<int>(j), sx / n, sy / n};
  }
  partition.reporting_ranges.assign(count, {});
  std::vector<std::pair<double, std::size_t>> order;
  for (std::size_t j = 0; j < count; ++j) {
    order.clear();
    for (std::size_t o = 0; o < count; ++o) {
      if (o != j) order.emplace_back(distance(centroid[j], centroid[o]), o);
    }
    std::sort(order.begin(), order.end());
    std::vector<std::size_t> range = partition.plss[j].members;
    std::size_t included = 1;
    for (const auto& [d, o] : order) {
      if (included >= cfg.min_report_plss &&
          range.size() >= cfg.min_report_locations) {
        break;
      }
      const auto& add = partition.plss[o].members;
      range.insert(range.end(), add.begin(), add.end());
      ++included;
    }
    std::sort(range.begin(), range.end());
    partition.reporting_ranges[j] = std::move(range);
  }
  return partition;
}

std::vector<std::string> partition_violations(const PlsPartition& partition,
                                              const Domain& domain,
                                              const PrivacyConfig& cfg,
                                              const PartitionTree* tree) {
  std::vector<std::string> out;
  const std::size_t n = domain.size();
  std::vector<int> seen(n, -1);
  std::vector<int> cell_of;
  if (tree) cell_of = cell_of_location(*tree, n);
  for (std::size_t j = 0; j < partition.plss.size(); ++j) {
    const Pls& p = partition.plss[j];
    const std::string tag = "PLS " + std::to_string(j);
    if (p.members.size() < 2) out.push_back(tag + " has fewer than 2 members");
    for (std::size_t x : p.members) {
      if (x >= n) {
        out.push_back(tag + " references an index outside the domain");
        continue;
      }
      if (seen[x] != -1) {
        out.push_back("location id " + std::to_string(domain.location(x).id) +
                      " is in PLS " + std::to_string(seen[x]) + " and " +
                      std::to_string(j));
      }
      seen[x] = static_cast<int>(j);
      if (tree && cell_of[x] != p.cell) {
        out.push_back(tag + " straddles cells");
      }
    }
    if (!(p.epsilon > 0.0) || p.epsilon > cfg.epsilon0) {
      out.push_back(tag + " budget " + std::to_string(p.epsilon) +
                    " is outside (0, eps0]");
    }
    if (!(p.e_prime > cfg.e_m)) out.push_back(tag + " has E' <= E_m");
    if (p.e_prime < std::exp(p.epsilon) * cfg.e_m * (1.0 - 1e-12)) {
      out.push_back(tag + " violates E' >= e^eps * E_m");
    }
    if (!(p.diameter > 0.0)) out.push_back(tag + " has zero diameter");
  }
  for (std::size_t x = 0; x < n; ++x) {
    if (seen[x] == -1) {
      out.push_back("location id " + std::to_string(domain.location(x).id) +
                    " is not covered");
    }
  }
  if (partition.reporting_ranges.size() != partition.plss.size()) {
    out.push_back("reporting range count does not match PLS count");
    return out;
  }
  for (std::size_t j = 0; j < partition.plss.size(); ++j) {
    const auto& range = partition.reporting_ranges[j];
    const std::string tag = "range " + std::to_string(j);
    std::vector<int> plss_seen;
    std::size_t located = 0;
    for (std::size_t x : range) {
      if (x >= n || seen[x] == -1) continue;
      ++located;
      plss_seen.push_back(seen[x]);
    }
    std::sort(plss_seen.begin(), plss_seen.end());
    plss_seen.erase(std::unique(plss_seen.begin(), plss_seen.end()),
                    plss_seen.end());
    std::size_t whole = 0;
    for (int q : plss_seen) whole += partition.plss[q].members.size();
    if (whole != located) out.push_back(tag + " contains a partial PLS");
    if (!std::binary_search(plss_seen.begin(), plss_seen.end(),
                            static_cast<int>(j))) {
      out.push_back(tag + " does not contain its own PLS");
    }
    const bool everything = range.size() == n;
    if (!everything && (plss_seen.size() < cfg.min_report_plss ||
                        range.size() < cfg.min_report_locations)) {
      out.push_back(tag + " is below the minimum size");
    }
  }
  return out;
}

}  // namespace geomoea
