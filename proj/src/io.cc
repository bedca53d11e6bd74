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

#include "geomoea/io.h"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "geomoea/error.h"

namespace geomoea {
namespace {

static_assert(std::endian::native == std::endian::little,
              "binary matrix IO assumes a little-endian host");

constexpr std::array<char, 8> kMagic = {'G', 'E', 'O', 'M', 'O', 'E', 'A', '1'};
constexpr std::uint32_t kBinaryVersion = 1;

[[noreturn]] void schema_error(const std::string& what) {
  throw Error(ErrorCode::kSchema, what);
}

const Json& field(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) {
    schema_error(where + ": missing \"" + key + "\"");
  }
  return j.at(key);
}

double number(const Json& j, const char* key, const std::string& where) {
  const Json& v = field(j, key, where);
  if (!v.is_number()) schema_error(where + ": \"" + key + "\" is not a number");
  return v.get<double>();
}

const Json& array(const Json& j, const char* key, const std::string& where) {
  const Json& v = field(j, key, where);
  if (!v.is_array()) schema_error(where + ": \"" + key + "\" is not an array");
  return v;
}

std::size_t index_of_id(const Json& v, const Domain& domain,
                        const std::string& where) {
  if (!v.is_number_integer()) schema_error(where + ": id is not an integer");
  try {
    return domain.index_of(v.get<int>());
  } catch (const Error&) {
    schema_error(where + ": unknown location id " + v.dump());
  }
}

Json ids(const std::vector<std::size_t>& indices, const Domain& domain) {
  Json out = Json::array();
  for (std::size_t i : indices) out.push_back(domain.location(i).id);
  return out;
}

std::vector<std::size_t> sorted_indices(const Json& arr, const Domain& domain,
                                        const std::string& where) {
  std::vector<std::size_t> out;
  out.reserve(arr.size());
  for (const Json& v : arr) out.push_back(index_of_id(v, domain, where));
  std::sort(out.begin(), out.end());
  if (std::adjacent_find(out.begin(), out.end()) != out.end()) {
    schema_error(where + ": repeated location id");
  }
  return out;
}

template <typename T>
void put(std::ostream& out, T v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof v);
}

template <typename T>
T get(std::istream& in, const std::string& path) {
  T v{};
  in.read(reinterpret_cast<char*>(&v), sizeof v);
  if (!in) throw Error(ErrorCode::kParse, path + ": truncated binary matrix");
  return v;
}

}  // namespace

Json domain_to_json(const Domain& domain) {
  Json locs = Json::array();
  for (std::size_t i = 0; i < domain.size(); ++i) {
    const Location& l = domain.location(i);
    locs.push_back({{"id", l.id}, {"x", l.x}, {"y", l.y},
                    {"prior", domain.prior(i)}});
  }
  return {{"units", "km"}, {"locations", std::move(locs)}};
}

Domain domain_from_json(const Json& j) {
  const Json& arr = array(j, "locations", "domain");
  std::vector<Location> locs;
  std::vector<double> prior;
  for (std::size_t r = 0; r < arr.size(); ++r) {
    const std::string where = "domain location " + std::to_string(r);
    const Json& id = field(arr[r], "id", where);
    if (!id.is_number_integer()) schema_error(where + ": id is not an integer");
    locs.push_back({id.get<int>(), number(arr[r], "x", where),
                    number(arr[r], "y", where)});
    prior.push_back(number(arr[r], "prior", where));
  }
  return Domain(std::move(locs), std::move(prior));
}

Json cells_to_json(const PartitionTree& tree, const Domain& domain,
                   std::size_t n0) {
  Json cells = Json::array();
  for (const Cell& c : tree.cells) {
    cells.push_back({{"id", c.id},
                     {"bounds",
                      {{"min_x", c.bounds.min_x},
                       {"min_y", c.bounds.min_y},
                       {"max_x", c.bounds.max_x},
                       {"max_y", c.bounds.max_y}}},
                     {"count", c.members.size()},
                     {"members", ids(c.members, domain)}});
  }
  return {{"n0", n0}, {"levels", tree.levels}, {"cells", std::move(cells)}};
}

Json partition_to_json(const PlsPartition& partition, const Domain& domain,
                       const PrivacyConfig& cfg) {
  Json plss = Json::array();
  for (std::size_t j = 0; j < partition.plss.size(); ++j) {
    const Pls& p = partition.plss[j];
    plss.push_back({{"cell", p.cell},
                    {"members", ids(p.members, domain)},
                    {"center", domain.location(p.center).id},
                    {"epsilon", p.epsilon},
                    {"diameter", p.diameter},
                    {"e_prime", p.e_prime},
                    {"reporting_range",
                     ids(partition.reporting_ranges.at(j), domain)}});
  }
  Json out = {{"units", "km"}, {"epsilon0", cfg.epsilon0}, {"e_m", cfg.e_m}};
  if (partition.objectives) {
    out["objectives"] = {{"qloss", partition.objectives->qloss},
                         {"exp_err", partition.objectives->exp_err}};
  }
  out["plss"] = std::move(plss);
  return out;
}

PlsPartition partition_from_json(const Json& j, const Domain& domain) {
  PlsPartition partition;
  const Json& arr = array(j, "plss", "partition");
  partition.owner.assign(domain.size(), -1);
  for (std::size_t k = 0; k < arr.size(); ++k) {
    const std::string where = "partition PLS " + std::to_string(k);
    Pls p;
    const Json& cell = field(arr[k], "cell", where);
    if (!cell.is_number_integer()) schema_error(where + ": cell is not an integer");
    p.cell = cell.get<int>();
    p.members = sorted_indices(array(arr[k], "members", where), domain, where);
    if (p.members.empty()) schema_error(where + ": no members");
    p.center = index_of_id(field(arr[k], "center", where), domain, where);
    p.epsilon = number(arr[k], "epsilon", where);
    p.diameter = number(arr[k], "diameter", where);
    p.e_prime = number(arr[k], "e_prime", where);
    partition.reporting_ranges.push_back(
        sorted_indices(array(arr[k], "reporting_range", where), domain, where));
    for (std::size_t x : p.members) {
      if (partition.owner[x] != -1) {
        schema_error(where + ": location id " +
                     std::to_string(domain.location(x).id) +
                     " already belongs to another PLS");
      }
      partition.owner[x] = static_cast<int>(k);
    }
    partition.plss.push_back(std::move(p));
  }
  if (j.contains("objectives")) {
    const Json& o = j.at("objectives");
    partition.objectives = ObjectivePair{number(o, "qloss", "objectives"),
                                         number(o, "exp_err", "objectives")};
  }
  return partition;
}

Json matrix_to_json(const ObfuscationMatrix& matrix, const Domain& domain) {
  Json rows = Json::array();
  for (std::size_t x = 0; x < matrix.size(); ++x) {
    const SparseRow& r = matrix.row(x);
    rows.push_back({{"true_id", domain.location(x).id},
                    {"support", ids(r.support, domain)},
                    {"probs", r.probs}});
  }
  return {{"units", "km"}, {"rows", std::move(rows)}};
}

ObfuscationMatrix matrix_from_json(const Json& j, const Domain& domain) {
  const Json& arr = array(j, "rows", "matrix");
  std::vector<SparseRow> rows(domain.size());
  std::vector<bool> seen(domain.size(), false);
  for (std::size_t k = 0; k < arr.size(); ++k) {
    const std::string where = "matrix row " + std::to_string(k);
    const std::size_t x = index_of_id(field(arr[k], "true_id", where), domain, where);
    if (seen[x]) schema_error(where + ": duplicate true_id");
    seen[x] = true;
    const Json& support = array(arr[k], "support", where);
    const Json& probs = array(arr[k], "probs", where);
    if (support.size() != probs.size()) {
      schema_error(where + ": support and probs differ in length");
    }
    std::vector<std::pair<std::size_t, double>> entries;
    for (std::size_t t = 0; t < support.size(); ++t) {
      if (!probs[t].is_number()) schema_error(where + ": probability is not a number");
      entries.emplace_back(index_of_id(support[t], domain, where),
                           probs[t].get<double>());
    }
    std::sort(entries.begin(), entries.end());
    for (std::size_t t = 1; t < entries.size(); ++t) {
      if (entries[t].first == entries[t - 1].first) {
        schema_error(where + ": repeated support id");
      }
    }
    for (const auto& [idx, p] : entries) {
      rows[x].support.push_back(idx);
      rows[x].probs.push_back(p);
    }
  }
  for (std::size_t x = 0; x < domain.size(); ++x) {
    if (!seen[x]) {
      schema_error("matrix: no row for location id " +
                   std::to_string(domain.location(x).id));
    }
  }
  return ObfuscationMatrix(std::move(rows), domain.size());
}

Json front_to_json(const ParetoFront& front, const Domain& domain,
                   const PrivacyConfig& cfg) {
  Json members = Json::array();
  for (const Individual& ind : front.members) {
    members.push_back({{"qloss", ind.objectives.f1},
                       {"exp_err", -ind.objectives.f2},
                       {"partition",
                        partition_to_json(ind.partition, domain, cfg)}});
  }
  Json trace = Json::array();
  for (double hv : front.hv_trace) trace.push_back(hv);
  return {{"units", "km"},
          {"epsilon0", cfg.epsilon0},
          {"e_m", cfg.e_m},
          {"reference",
           {{"qloss", front.reference.f1},
            {"neg_exp_err", front.reference.f2}}},
          {"generations", front.generations},
          {"converged", front.converged},
          {"hv_trace", std::move(trace)},
          {"members", std::move(members)}};
}

void write_matrix_binary(const std::filesystem::path& path,
                         const ObfuscationMatrix& matrix,
                         const Domain& domain) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  out.write(kMagic.data(), kMagic.size());
  put<std::uint32_t>(out, kBinaryVersion);
  put<std::uint32_t>(out, 0);
  put<std::uint64_t>(out, matrix.size());
  for (std::size_t x = 0; x < matrix.size(); ++x) {
    const SparseRow& r = matrix.row(x);
    put<std::int64_t>(out, domain.location(x).id);
    put<std::uint64_t>(out, r.support.size());
    for (std::size_t s : r.support) {
      put<std::int64_t>(out, domain.location(s).id);
    }
    for (double p : r.probs) put<double>(out, p);
  }
  if (!out) throw Error(ErrorCode::kIo, "failed writing " + path.string());
}

ObfuscationMatrix read_matrix_binary(const std::filesystem::path& path,
                                     const Domain& domain) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot read " + path.string());
  const std::string p = path.string();
  std::array<char, 8> magic{};
  in.read(magic.data(), magic.size());
  if (!in || magic != kMagic) {
    throw Error(ErrorCode::kParse, p + ": not a binary matrix file");
  }
  if (get<std::uint32_t>(in, p) != kBinaryVersion) {
    throw Error(ErrorCode::kParse, p + ": unsupported version");
  }
  get<std::uint32_t>(in, p);
  const auto count = get<std::uint64_t>(in, p);
  if (count != domain.size()) {
    throw Error(ErrorCode::kSchema, p + ": row count does not match domain");
  }
  std::vector<SparseRow> rows(domain.size());
  auto to_index = [&](std::int64_t id) {
    try {
      return domain.index_of(static_cast<int>(id));
    } catch (const Error&) {
      throw Error(ErrorCode::kSchema,
                  p + ": unknown location id " + std::to_string(id));
    }
  };
  for (std::uint64_t r = 0; r < count; ++r) {
    const std::size_t x = to_index(get<std::int64_t>(in, p));
    const auto len = get<std::uint64_t>(in, p);
    if (len > domain.size()) throw Error(ErrorCode::kParse, p + ": bad row length");
    SparseRow& row = rows[x];
    row.support.resize(len);
    row.probs.resize(len);
    for (auto& s : row.support) s = to_index(get<std::int64_t>(in, p));
    for (auto& v : row.probs) v = get<double>(in, p);
  }
  return ObfuscationMatrix(std::move(rows), domain.size());
}

Json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot read " + path.string());
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::kParse, path.string() + ": " + e.what());
  }
}

void write_json(const std::filesystem::path& path, const Json& j) {
  write_text(path, j.dump(2) + "\n");
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  out << text;
  if (!out) throw Error(ErrorCode::kIo, "failed writing " + path.string());
}

}  // namespace geomoea
