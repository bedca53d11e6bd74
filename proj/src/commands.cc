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

#include "geomoea/commands.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <sstream>
#include <string>
#include <system_error>
#include <utility>
#include <vector>

#include "CLI11.hpp"

#include "geomoea/adversary.h"
#include "geomoea/config.h"
#include "geomoea/error.h"
#include "geomoea/io.h"
#include "geomoea/mechanism.h"
#include "geomoea/moea.h"
#include "geomoea/parallel.h"
#include "geomoea/sc_sim.h"

namespace geomoea {
namespace {

namespace fs = std::filesystem;

// Shortest text that reads back to the same double.
std::string num(double v) {
  if (std::isnan(v)) return "NA";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

// Flags shared by every subcommand that builds a run.
struct CommonFlags {
  std::string config_path;
  std::uint64_t seed = 0;
  unsigned threads = 0;
  std::string out_dir;
  std::string data_csv;
  bool geo = false;
  double eps0 = 0.0;
  double em = 0.0;
  std::size_t n0 = 0;
  std::vector<CLI::Option*> options;  // seed, threads, out, data, eps0, em, n0

  void attach(CLI::App* app) {
    app->add_option("--config", config_path, "JSON run configuration")
        ->check(CLI::ExistingFile);
    options = {
        app->add_option("--seed", seed, "run seed (else config, else GEOMOEA_SEED)"),
        app->add_option("--threads", threads, "worker thread cap, 0 = all cores"),
        app->add_option("--out", out_dir, "output directory"),
        app->add_option("--data", data_csv, "CSV of locations (id,x,y)"),
        app->add_option("--eps0", eps0, "privacy budget eps0"),
        app->add_option("--em", em, "inference error floor E_m in km"),
        app->add_option("--n0", n0, "minimum locations per cell"),
    };
    app->add_flag("--geo", geo, "CSV columns are id,lon,lat");
  }

  bool given(std::size_t i) const { return options[i]->count() > 0; }

  RunConfig load() const {
    RunConfig cfg;
    if (!config_path.empty()) {
      cfg = config_from_json(read_json(config_path));
    } else {
      cfg.seed = default_seed();
    }
    if (given(0)) cfg.seed = seed;
    if (given(1)) cfg.threads = threads;
    if (given(2)) cfg.output_dir = out_dir;
    if (given(3)) {
      DatasetSpec spec = cfg.dataset ? *cfg.dataset : benchmark_spec(cfg.seed);
      spec.csv_path = data_csv;
      spec.blur_radius_m = cfg.dataset ? spec.blur_radius_m : 0.0;
      cfg.dataset = spec;
    }
    if (geo) {
      if (!cfg.dataset || !cfg.dataset->csv_path) {
        throw Error(ErrorCode::kInvalidConfig, "--geo needs a CSV dataset");
      }
      cfg.dataset->geo = true;
    }
    if (given(4)) cfg.privacy.epsilon0 = eps0;
    if (given(5)) cfg.privacy.e_m = em;
    if (given(6)) cfg.privacy.n0 = n0;
    return cfg;
  }
};

void prepare(RunConfig& cfg) {
  cfg.finalize();
  set_max_threads(cfg.threads);
  fs::create_directories(cfg.output_dir);
  // The resolved configuration, so a run can be repeated with --config.
  write_json(fs::path(cfg.output_dir) / "config.json", config_to_json(cfg));
}

fs::path out_path(const RunConfig& cfg, const char* name) {
  return fs::path(cfg.output_dir) / name;
}

std::string hv_trace_csv(const ParetoFront& front) {
  std::ostringstream s;
  s << "generation,hv\n";
  for (std::size_t g = 0; g < front.hv_trace.size(); ++g) {
    s << g << ',' << num(front.hv_trace[g]) << '\n';
  }
  return s.str();
}

std::string pso_csv(const std::vector<PsoSolution>& sols) {
  std::ostringstream s;
  s << "alpha,fitness,qloss,exp_err\n";
  for (const auto& p : sols) {
    s << num(p.alpha) << ',' << num(p.fitness) << ','
      << num(p.best.objectives.f1) << ',' << num(-p.best.objectives.f2)
      << '\n';
  }
  return s.str();
}

std::string assignments_csv(const SimulationResult& r) {
  std::ostringstream s;
  s << "task_id,worker_id,wtd\n";
  for (const auto& a : r.assignments) {
    s << a.task_id << ',' << a.worker_id << ',' << num(a.wtd) << '\n';
  }
  return s.str();
}

Json evaluation_json(const Evaluation& e) {
  return {{"qloss", e.qloss},
          {"exp_err", e.exp_err},
          {"min_cond_err", e.min_cond_err}};
}

Json sim_json(const SimulationConfig& sim) {
  return {{"workers", sim.workers},
          {"tasks", sim.tasks},
          {"mode", worker_mode_name(sim.mode)},
          {"geocast_k", sim.geocast_k},
          {"distance_weighted", sim.assign.distance_weighted},
          {"shared_workers", sim.assign.shared_workers},
          {"seed", sim.seed}};
}

// Writes front.json and hv_trace.csv, plus whatever the chosen baseline
// produces. Returns the front.
ParetoFront optimize_and_write(const RunConfig& cfg, const Domain& domain,
                               const PartitionPlan& plan, std::ostream& out) {
  const ParetoFront front = evolve(domain, plan, cfg.privacy, cfg.moea);
  write_json(out_path(cfg, "front.json"),
             front_to_json(front, domain, cfg.privacy));
  write_text(out_path(cfg, "hv_trace.csv"), hv_trace_csv(front));
  out << "front: " << front.members.size() << " solutions after "
      << front.generations << " generations"
      << (front.converged ? " (converged)" : "") << ", hv "
      << num(front.hv_trace.back()) << "\n";
  if (cfg.baseline == Baseline::kPso) {
    const auto sols = pso_baseline(domain, plan, cfg.privacy, cfg.pso);
    write_text(out_path(cfg, "pso.csv"), pso_csv(sols));
    out << "pso: " << sols.size() << " scalarized solutions\n";
  } else if (cfg.baseline == Baseline::kDpive) {
    const Individual base = dpive_baseline(domain, plan, cfg.privacy, cfg.dpive);
    write_json(out_path(cfg, "dpive.json"),
               partition_to_json(base.partition, domain, cfg.privacy));
    out << "dpive: qloss " << num(base.objectives.f1) << " km, exp_err "
        << num(-base.objectives.f2) << " km\n";
  }
  return front;
}

struct Loaded {
  Domain domain;
  PartitionPlan plan;
};

Loaded load_and_partition(const RunConfig& cfg) {
  Domain domain = load_domain(cfg.dataset_spec());
  write_json(out_path(cfg, "domain.json"), domain_to_json(domain));
  PartitionTree tree = binary_partition(domain, cfg.privacy.n0);
  write_json(out_path(cfg, "cells.json"),
             cells_to_json(tree, domain, cfg.privacy.n0));
  PartitionPlan plan =
      plan_partition(std::move(tree), domain, cfg.privacy, cfg.seed);
  return {std::move(domain), std::move(plan)};
}

// Writes the matrix as json, bin or both; returns the name the summary cites.
std::string write_matrix(const RunConfig& cfg, const ObfuscationMatrix& matrix,
                         const Domain& domain, const std::string& format) {
  if (format != "json") {
    write_matrix_binary(out_path(cfg, "matrix.bin"), matrix, domain);
  }
  if (format == "bin") return "matrix.bin";
  write_json(out_path(cfg, "matrix.json"), matrix_to_json(matrix, domain));
  return "matrix.json";
}

int cmd_pipeline(RunConfig cfg, const std::string& format, std::ostream& out) {
  prepare(cfg);
  const Loaded l = load_and_partition(cfg);
  const ParetoFront front = optimize_and_write(cfg, l.domain, l.plan, out);
  // The simulation uses the solution with the smallest quality loss.
  const Individual& best = front.members.front();
  write_json(out_path(cfg, "partition.json"),
             partition_to_json(best.partition, l.domain, cfg.privacy));
  const ObfuscationMatrix matrix = build_matrix(best.partition, l.domain);
  const std::string matrix_file = write_matrix(cfg, matrix, l.domain, format);

  const SimulationResult obf = run_simulation(l.domain, &matrix, cfg.sim);
  const SimulationResult plain = run_simulation(l.domain, nullptr, cfg.sim);
  write_text(out_path(cfg, "assignments.csv"), assignments_csv(obf));
  Json summary = {{"sim", sim_json(cfg.sim)},
                  {"matrix", matrix_file},
                  {"mean_wtd", obf.mean_wtd},
                  {"non_privacy_mean_wtd", plain.mean_wtd},
                  {"objectives",
                   evaluation_json(evaluate(l.domain, matrix))}};
  write_json(out_path(cfg, "summary.json"), summary);
  out << "mean WTD " << num(obf.mean_wtd) << " km (non-private "
      << num(plain.mean_wtd) << " km)\n";
  return 0;
}

int cmd_partition(RunConfig cfg, const std::string& format,
                  std::ostream& out) {
  prepare(cfg);
  const Loaded l = load_and_partition(cfg);
  PlsPartition partition = ret_c(l.plan, l.domain, cfg.privacy, cfg.seed);
  const ObfuscationMatrix matrix = build_matrix(partition, l.domain);
  const Evaluation e = evaluate(l.domain, matrix);
  partition.objectives = ObjectivePair{e.qloss, e.exp_err};
  write_json(out_path(cfg, "partition.json"),
             partition_to_json(partition, l.domain, cfg.privacy));
  write_matrix(cfg, matrix, l.domain, format);
  out << l.plan.tree.cells.size() << " cells, " << partition.plss.size()
      << " PLSs, qloss " << num(e.qloss) << " km, exp_err "
      << num(e.exp_err) << " km\n";
  return 0;
}

int cmd_optimize(RunConfig cfg, std::ostream& out) {
  prepare(cfg);
  const Loaded l = load_and_partition(cfg);
  optimize_and_write(cfg, l.domain, l.plan, out);
  return 0;
}

ObfuscationMatrix load_matrix(const std::string& path, const Domain& domain) {
  if (fs::path(path).extension() == ".bin") {
    return read_matrix_binary(path, domain);
  }
  return matrix_from_json(read_json(path), domain);
}

int cmd_evaluate(const std::string& domain_path,
                 const std::vector<std::string>& matrices, unsigned threads,
                 std::ostream& out) {
  set_max_threads(threads);
  const Domain domain = domain_from_json(read_json(domain_path));
  for (const auto& m : matrices) {
    Json j = evaluation_json(evaluate(domain, load_matrix(m, domain)));
    j["matrix"] = m;
    out << j.dump() << "\n";
  }
  return 0;
}

int cmd_simulate(RunConfig cfg, const std::string& domain_path,
                 const std::string& matrix_path, bool non_privacy,
                 std::ostream& out) {
  prepare(cfg);
  if (non_privacy == !matrix_path.empty()) {
    throw Error(ErrorCode::kInvalidConfig,
                "simulate needs exactly one of --matrix and --non-privacy");
  }
  const Domain domain = domain_path.empty()
                            ? load_domain(cfg.dataset_spec())
                            : domain_from_json(read_json(domain_path));
  std::optional<ObfuscationMatrix> matrix;
  if (!non_privacy) matrix = load_matrix(matrix_path, domain);
  const SimulationResult r =
      run_simulation(domain, matrix ? &*matrix : nullptr, cfg.sim);
  write_text(out_path(cfg, "assignments.csv"), assignments_csv(r));
  Json summary = {{"sim", sim_json(cfg.sim)},
                  {"matrix", non_privacy ? Json(nullptr) : Json(matrix_path)},
                  {"mean_wtd", r.mean_wtd}};
  write_json(out_path(cfg, "summary.json"), summary);
  out << "mean WTD " << num(r.mean_wtd) << " km over " << r.assignments.size()
      << " tasks\n";
  return 0;
}

int cmd_sweep(RunConfig cfg, std::ostream& out) {
  prepare(cfg);
  if (cfg.sweep.epsilon0.empty() || cfg.sweep.e_m.empty()) {
    throw Error(ErrorCode::kInvalidConfig, "sweep grid is empty");
  }
  const Domain domain = load_domain(cfg.dataset_spec());
  const PartitionTree tree = binary_partition(domain, cfg.privacy.n0);
  std::ostringstream csv;
  csv << "epsilon0,e_m,hv,mean_wtd,min_qloss,status\n";
  std::size_t feasible = 0;
  for (double eps0 : cfg.sweep.epsilon0) {
    for (double em : cfg.sweep.e_m) {
      PrivacyConfig p = cfg.privacy;
      p.epsilon0 = eps0;
      p.e_m = em;
      csv << num(eps0) << ',' << num(em) << ',';
      try {
        p.validate();
        const PartitionPlan plan = plan_partition(tree, domain, p, cfg.seed);
        const ParetoFront front = evolve(domain, plan, p, cfg.moea);
        const Individual& best = front.members.front();
        const ObfuscationMatrix matrix = build_matrix(best.partition, domain);
        const SimulationResult r = run_simulation(domain, &matrix, cfg.sim);
        csv << num(front.hv_trace.back()) << ',' << num(r.mean_wtd) << ','
            << num(best.objectives.f1) << ",ok\n";
        ++feasible;
      } catch (const Error& e) {
        if (e.code() != ErrorCode::kCellInfeasible &&
            e.code() != ErrorCode::kInvalidConfig) {
          throw;
        }
        csv << "NA,NA,NA," << error_code_name(e.code()) << '\n';
      }
    }
  }
  write_text(out_path(cfg, "surface.csv"), csv.str());
  out << feasible << " of "
      << cfg.sweep.epsilon0.size() * cfg.sweep.e_m.size()
      << " settings feasible\n";
  return 0;
}

int cmd_verify(const std::string& domain_path, const std::string& matrix_path,
               const std::string& partition_path, const CLI::Option* eps0_opt,
               double eps0, const CLI::Option* em_opt, double em,
               unsigned threads, std::ostream& out) {
  set_max_threads(threads);
  const Domain domain = domain_from_json(read_json(domain_path));
  const ObfuscationMatrix matrix = load_matrix(matrix_path, domain);
  const Json pj = read_json(partition_path);
  const PlsPartition partition = partition_from_json(pj, domain);
  PrivacyConfig cfg;
  cfg.epsilon0 = eps0_opt->count() ? eps0 : pj.value("epsilon0", cfg.epsilon0);
  cfg.e_m = em_opt->count() ? em : pj.value("e_m", cfg.e_m);

  bool all = true;
  auto line = [&](bool pass, const std::string& name, const std::string& detail) {
    all = all && pass;
    out << (pass ? "PASS " : "FAIL ") << name << ' ' << detail << '\n';
  };
  auto id = [&](std::size_t i) { return std::to_string(domain.location(i).id); };

  const StochasticityReport st = row_stochasticity(matrix);
  {
    std::string detail = "max_deviation=" + num(st.max_deviation);
    if (st.worst_row) {
      double sum = 0.0;
      for (double p : matrix.row(*st.worst_row).probs) sum += p;
      detail += " worst_row=" + id(*st.worst_row) + " row_sum=" + num(sum);
    }
    if (st.has_nonpositive) detail += " nonpositive_entries";
    line(st.pass, "row_stochasticity", detail);
  }

  const DpReport dp = verify_dp_within_pls(matrix, partition, cfg.epsilon0);
  line(dp.pass, "dp_within_pls",
       "max_ratio=" + num(dp.max_ratio) + " bound=" + num(dp.bound) +
           (dp.pass ? "" : " at x=" + id(dp.x) + " y=" + id(dp.y) +
                               " x'=" + id(dp.x_prime)));

  std::size_t pairs = 0, violations = 0;
  double worst = 0.0;
  for (std::size_t i = 0; i < partition.plss.size(); ++i) {
    for (std::size_t j = 0; j < partition.plss.size(); ++j) {
      if (i == j) continue;
      const CrossPlsReport c =
          verify_cross_pls(matrix, partition, domain, i, j, cfg.epsilon0);
      if (!c.applicable) continue;
      ++pairs;
      if (!c.pass) ++violations;
      worst = std::max(worst, c.observed / c.bound);
    }
  }
  line(violations == 0, "cross_pls",
       "pairs=" + std::to_string(pairs) + " violations=" +
           std::to_string(violations) + " max_observed_over_bound=" + num(worst));

  const Evaluation e = evaluate(domain, matrix);
  line(e.min_cond_err >= cfg.e_m - 1e-9, "error_floor",
       "min_cond_err=" + num(e.min_cond_err) + " e_m=" + num(cfg.e_m));

  const auto violations_list = partition_violations(partition, domain, cfg);
  line(violations_list.empty(), "partition_invariants",
       violations_list.empty() ? std::string("ok") : violations_list.front());
  return all ? 0 : 1;
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidConfig:
    case ErrorCode::kParse:
    case ErrorCode::kIo:
    case ErrorCode::kSchema:
      return 2;
    default:
      return 1;
  }
}

void report(std::ostream& err, std::string_view code, const std::string& msg) {
  err << Json{{"error", code}, {"message", msg}}.dump() << "\n";
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Location obfuscation with Pareto-optimal protection sets",
               "geomoea"};
  app.require_subcommand(1);

  auto* pipeline = app.add_subcommand("pipeline", "load, partition, optimize, simulate");
  auto* partition = app.add_subcommand("partition", "cells and one randomized PLS partition");
  auto* optimize = app.add_subcommand("optimize", "evolve a Pareto front");
  auto* evaluate_cmd = app.add_subcommand("evaluate", "objectives of stored matrices");
  auto* simulate = app.add_subcommand("simulate", "crowdsourcing simulation");
  auto* sweep = app.add_subcommand("sweep", "HV and WTD over an (eps0, E_m) grid");
  auto* verify = app.add_subcommand("verify", "check a stored matrix and partition");

  CommonFlags pipeline_flags, partition_flags, optimize_flags, simulate_flags,
      sweep_flags;
  pipeline_flags.attach(pipeline);
  partition_flags.attach(partition);
  optimize_flags.attach(optimize);
  simulate_flags.attach(simulate);
  sweep_flags.attach(sweep);

  // MOEA flags on the commands that evolve.
  struct MoeaFlags {
    int pop = 0, gens = 0;
    std::string baseline;
    CLI::Option *pop_opt = nullptr, *gens_opt = nullptr, *base_opt = nullptr;
    void attach(CLI::App* a) {
      pop_opt = a->add_option("--pop", pop, "population size (even, >= 4)");
      gens_opt = a->add_option("--gens", gens, "maximum generations");
      base_opt = a->add_option("--baseline", baseline, "dpive, pso or none")
                     ->check(CLI::IsMember({"dpive", "pso", "none"}));
    }
    void apply(RunConfig& cfg) const {
      if (pop_opt->count()) cfg.moea.population = pop;
      if (gens_opt->count()) cfg.moea.max_generations = gens;
      if (base_opt->count()) cfg.baseline = parse_baseline(baseline);
    }
  };
  MoeaFlags pipeline_moea, optimize_moea, sweep_moea;
  pipeline_moea.attach(pipeline);
  optimize_moea.attach(optimize);
  sweep_moea.attach(sweep);

  // Simulation flags.
  struct SimFlags {
    int workers = 0, tasks = 0;
    std::string mode;
    CLI::Option *w = nullptr, *t = nullptr, *m = nullptr;
    void attach(CLI::App* a) {
      w = a->add_option("--workers", workers, "idle workers");
      t = a->add_option("--tasks", tasks, "tasks");
      m = a->add_option("--mode", mode, "uniform or one_to_four")
              ->check(CLI::IsMember({"uniform", "one_to_four"}));
    }
    void apply(RunConfig& cfg) const {
      if (w->count()) cfg.sim.workers = workers;
      if (t->count()) cfg.sim.tasks = tasks;
      if (m->count()) cfg.sim.mode = parse_worker_mode(mode);
    }
  };
  SimFlags pipeline_sim, simulate_sim, sweep_sim;
  pipeline_sim.attach(pipeline);
  simulate_sim.attach(simulate);
  sweep_sim.attach(sweep);

  std::string pipeline_format = "both", partition_format = "json";
  for (auto [sub, fmt] : {std::pair{pipeline, &pipeline_format},
                          std::pair{partition, &partition_format}}) {
    sub->add_option("--format", *fmt, "matrix output: json, bin or both")
        ->check(CLI::IsMember({"json", "bin", "both"}))
        ->capture_default_str();
  }

  std::string sim_domain, sim_matrix;
  bool non_privacy = false;
  simulate->add_option("--domain", sim_domain, "domain.json (else the dataset)")
      ->check(CLI::ExistingFile);
  simulate->add_option("--matrix", sim_matrix, "matrix.json or matrix.bin");
  simulate->add_flag("--non-privacy", non_privacy, "workers report true locations");

  std::vector<double> sweep_eps, sweep_em;
  auto* sweep_eps_opt =
      sweep->add_option("--eps0-list", sweep_eps, "eps0 values")
          ->delimiter(',');
  auto* sweep_em_opt =
      sweep->add_option("--em-list", sweep_em, "E_m values (km)")
          ->delimiter(',');

  std::string eval_domain;
  std::vector<std::string> eval_matrices;
  unsigned eval_threads = 0;
  evaluate_cmd->add_option("--domain", eval_domain, "domain.json")->required();
  evaluate_cmd->add_option("--matrix", eval_matrices, "matrix files")->required();
  evaluate_cmd->add_option("--threads", eval_threads, "worker thread cap");

  std::string v_domain, v_matrix, v_partition;
  double v_eps0 = 0.0, v_em = 0.0;
  unsigned v_threads = 0;
  verify->add_option("--domain", v_domain, "domain.json")->required();
  verify->add_option("--matrix", v_matrix, "matrix.json or matrix.bin")->required();
  verify->add_option("--partition", v_partition, "partition.json")->required();
  auto* v_eps0_opt = verify->add_option("--eps0", v_eps0, "override eps0");
  auto* v_em_opt = verify->add_option("--em", v_em, "override E_m");
  verify->add_option("--threads", v_threads, "worker thread cap");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    std::string help;
    for (auto* sub : app.get_subcommands()) help = sub->help();
    report(err, "usage", e.what());
    if (!help.empty()) err << help;
    return 2;
  }

  try {
    if (pipeline->parsed()) {
      RunConfig cfg = pipeline_flags.load();
      pipeline_moea.apply(cfg);
      pipeline_sim.apply(cfg);
      return cmd_pipeline(std::move(cfg), pipeline_format, out);
    }
    if (partition->parsed()) {
      return cmd_partition(partition_flags.load(), partition_format, out);
    }
    if (optimize->parsed()) {
      RunConfig cfg = optimize_flags.load();
      optimize_moea.apply(cfg);
      return cmd_optimize(std::move(cfg), out);
    }
    if (evaluate_cmd->parsed()) {
      return cmd_evaluate(eval_domain, eval_matrices, eval_threads, out);
    }
    if (simulate->parsed()) {
      RunConfig cfg = simulate_flags.load();
      simulate_sim.apply(cfg);
      return cmd_simulate(std::move(cfg), sim_domain, sim_matrix, non_privacy,
                          out);
    }
    if (sweep->parsed()) {
      RunConfig cfg = sweep_flags.load();
      sweep_moea.apply(cfg);
      sweep_sim.apply(cfg);
      if (sweep_eps_opt->count()) cfg.sweep.epsilon0 = sweep_eps;
      if (sweep_em_opt->count()) cfg.sweep.e_m = sweep_em;
      return cmd_sweep(std::move(cfg), out);
    }
    if (verify->parsed()) {
      return cmd_verify(v_domain, v_matrix, v_partition, v_eps0_opt, v_eps0,
                        v_em_opt, v_em, v_threads, out);
    }
  } catch (const Error& e) {
    report(err, error_code_name(e.code()), e.what());
    return exit_code_for(e.code());
  } catch (const nlohmann::json::exception& e) {
    report(err, error_code_name(ErrorCode::kSchema), e.what());
    return 2;
  } catch (const fs::filesystem_error& e) {
    report(err, error_code_name(ErrorCode::kIo), e.what());
    return 2;
  }
  return 2;
}

}  // namespace geomoea
