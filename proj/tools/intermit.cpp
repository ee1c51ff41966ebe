/*
 * Copyright 2026 The intermit Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Command-line front end: solve, oracle, mc, verify-matroids, sim-field.

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>

#include "intermit/config.hpp"
#include "intermit/envsim.hpp"
#include "intermit/error.hpp"
#include "intermit/harness.hpp"
#include "intermit/oracle.hpp"
#include "intermit/solver.hpp"
#include "intermit/text.hpp"

namespace fs = std::filesystem;
using namespace intermit;

namespace {

constexpr int kAxiomFailure = 1;

fs::path prepare_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory '" + dir.string() + "': " + ec.message());
  return dir;
}

void write_schedule(const fs::path& path, const GroundSet& ground, const DeploymentSet& set) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  out << "t,r,i,x,y,cost\n";
  for (std::size_t k : set) {
    const GroundElement& e = ground[k];
    out << e.time << ',' << e.robot << ',' << e.location << ',' << format_double(e.position.x)
        << ',' << format_double(e.position.y) << ',' << format_double(e.cost) << '\n';
  }
  if (!out) throw IoError("write failed for '" + path.string() + "'");
}

void write_json(const fs::path& path, const nlohmann::ordered_json& doc) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  out << doc.dump(2) << '\n';
  if (!out) throw IoError("write failed for '" + path.string() + "'");
}

nlohmann::ordered_json instance_json(const SampledInstance& s) {
  return {{"T", s.T},
          {"L", s.L},
          {"R", s.R},
          {"P", s.P},
          {"Q", s.Q},
          {"problem_size", static_cast<long long>(s.L) * s.R * s.P * s.Q},
          {"ground_size", s.problem.ground.size()},
          {"p", s.problem.constraints.p()},
          {"l", s.problem.constraints.l()}};
}

int cmd_solve(const std::string& config_path, long long trial, const std::string& out_arg) {
  const ExperimentConfig cfg = load_config(config_path);
  const SampledInstance s = sample_instance(cfg, trial);
  SolverConfig solver;
  solver.eta = cfg.eta;
  solver.execution = Execution::kParallel;
  const SolverResult result = threshold_greedy(s.problem, solver);

  const fs::path dir = prepare_dir(out_arg.empty() ? output_directory(cfg) : fs::path(out_arg));
  write_schedule(dir / "schedule.csv", s.problem.ground, result.best);
  nlohmann::ordered_json doc;
  doc["command"] = "solve";
  doc["trial"] = trial;
  doc["instance"] = instance_json(s);
  doc["objective"] = result.value;
  doc["kind"] = kind_name(result.kind);
  doc["selected"] = result.best.size();
  doc["bound"] = optimality_bound(s.problem.constraints.p(), s.problem.constraints.l(), cfg.eta);
  doc["oracle_calls"] = count_oracle_calls(result);
  doc["rho_iterations"] = result.trace.size();
  doc["candidates"] = result.pool.size();
  doc["wall_seconds"] = result.wall_seconds;
  doc["warnings"] = result.warnings;
  write_json(dir / "summary.json", doc);

  for (const std::string& w : result.warnings) std::cerr << "warning: " << w << '\n';
  std::cout << "objective " << format_double(result.value) << " with " << result.best.size()
            << " deployments (" << kind_name(result.kind) << "), " << count_oracle_calls(result)
            << " oracle calls, schedule in " << (dir / "schedule.csv").string() << '\n';
  return 0;
}

int cmd_oracle(const std::string& config_path, long long trial, const std::string& out_arg,
               bool cold) {
  const ExperimentConfig cfg = load_config(config_path);
  const SampledInstance s = sample_instance(cfg, trial);
  std::optional<DeploymentSet> incumbent;
  if (!cold) {
    SolverConfig solver;
    solver.eta = cfg.eta;
    incumbent = threshold_greedy(s.problem, solver).best;
  }
  const fs::path dir = prepare_dir(out_arg.empty() ? output_directory(cfg) : fs::path(out_arg));

  OracleResult result;
  bool complete = true;
  std::string reason;
  try {
    result = enumerate_optimal(s.problem, cfg.oracle, incumbent);
  } catch (const BudgetExceeded& e) {
    result = e.partial();
    complete = false;
    reason = e.what();
  }
  write_schedule(dir / "schedule.csv", s.problem.ground, result.best);
  nlohmann::ordered_json doc;
  doc["command"] = "oracle";
  doc["trial"] = trial;
  doc["instance"] = instance_json(s);
  doc["complete"] = complete;
  doc["objective"] = result.value;
  doc["selected"] = result.best.size();
  doc["visited"] = result.visited;
  doc["combinations"] = count_combinations(s.T, s.L, s.R, s.P * s.Q).str();
  doc["wall_seconds"] = result.seconds;
  if (!complete) doc["reason"] = reason;
  write_json(dir / "summary.json", doc);

  if (!complete) throw BudgetExceeded(reason, result);
  std::cout << "optimum " << format_double(result.value) << " with " << result.best.size()
            << " deployments after " << result.visited << " feasible sets\n";
  return 0;
}

int cmd_mc(const std::string& config_path, std::optional<long long> trials,
           std::optional<std::uint64_t> seed, const std::string& out_arg) {
  ExperimentConfig cfg = load_config(config_path);
  if (trials) cfg.trials = *trials;
  if (seed) cfg.seed = *seed;
  if (!out_arg.empty()) cfg.output = out_arg;
  cfg.validate();
  const fs::path dir = output_directory(cfg);
  const MonteCarloResult mc = run_monte_carlo(cfg);
  emit_outputs(mc, cfg, dir);

  std::size_t completed = 0;
  std::size_t below = 0;
  for (const TrialRecord& r : mc.records) {
    if (!r.oracle_complete) continue;
    ++completed;
    if (r.ratio < r.bound) ++below;
  }
  std::cout << mc.records.size() << " trials recorded, " << completed << " with exact optimum, "
            << below << " below the guarantee, " << mc.failures.size() << " failed; outputs in "
            << dir.string() << '\n';
  return 0;
}

int cmd_verify(const std::string& config_path) {
  const ExperimentConfig cfg = load_config(config_path);
  const GroundSet ground = verification_ground(cfg);
  std::vector<MatroidTemplate> templates = canonical_matroids();
  templates.insert(templates.end(), cfg.matroids.begin(), cfg.matroids.end());

  bool all_passed = true;
  for (const MatroidTemplate& t : templates) {
    const MatroidSpec spec = t.resolve(cfg.verify_R, cfg.verify_L, cfg.verify_T);
    const MatroidReport report =
        verify_matroid_axioms(spec, ground, kDefaultAxiomCap, Execution::kParallel);
    all_passed = all_passed && report.passed;
    std::cout << (report.passed ? "PASS " : "FAIL ") << variant_name(t.variant) << " limits="
              << t.limits << " |V|=" << ground.size() << ": " << report.describe() << '\n';
  }
  return all_passed ? 0 : kAxiomFailure;
}

int cmd_sim_field(const std::string& config_path, const std::string& out_arg) {
  const ExperimentConfig cfg = load_config(config_path);
  const fs::path dir = prepare_dir(out_arg.empty() ? output_directory(cfg) : fs::path(out_arg));
  const GridSpec grid{static_cast<int>(cfg.P.hi), static_cast<int>(cfg.Q.hi), cfg.width, cfg.height};
  Rng rng(cfg.seed);
  const fs::path path = dir / "field.csv";
  std::ofstream out(path);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  out << "t,i,x,y,value\n";
  FieldState state = initial_state(cfg.environment);
  for (int t = 0; t <= cfg.T.hi; ++t) {
    state = advance_to(std::move(state), cfg.environment, t, rng);
    write_field_csv(out, state, cfg.environment, grid, t);
  }
  if (!out) throw IoError("write failed for '" + path.string() + "'");
  std::cout << "field snapshots t=0.." << cfg.T.hi << " on a " << grid.P << "x" << grid.Q
            << " grid in " << path.string() << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Intermittent multi-robot deployment planning"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  long long trial = 0;

  auto* solve = app.add_subcommand("solve", "Run the threshold greedy on one sampled instance");
  solve->add_option("config", config_path, "Experiment config file")->required();
  solve->add_option("--trial", trial, "Trial index selecting the sampled instance");
  solve->add_option("--out", out_dir, "Output directory");

  auto* oracle = app.add_subcommand("oracle", "Find the exact optimum by enumeration");
  oracle->add_option("config", config_path, "Experiment config file")->required();
  oracle->add_option("--trial", trial, "Trial index selecting the sampled instance");
  oracle->add_option("--out", out_dir, "Output directory");
  bool cold = false;
  oracle->add_flag("--cold", cold, "Do not seed the search with the greedy answer");

  std::optional<long long> trials;
  std::optional<std::uint64_t> seed;
  auto* mc = app.add_subcommand("mc", "Monte Carlo comparison of greedy against the optimum");
  mc->add_option("config", config_path, "Experiment config file")->required();
  mc->add_option("--trials", trials, "Number of trials");
  mc->add_option("--seed", seed, "Master seed");
  mc->add_option("--out", out_dir, "Output directory");

  auto* verify = app.add_subcommand("verify-matroids", "Exhaustively check the matroid axioms");
  verify->add_option("config", config_path, "Experiment config file")->required();

  auto* sim = app.add_subcommand("sim-field", "Write ground-truth field snapshots");
  sim->add_option("config", config_path, "Experiment config file")->required();
  sim->add_option("--out", out_dir, "Output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : static_cast<int>(ErrorCategory::kInvalidInput);
  }

  try {
    if (*solve) return cmd_solve(config_path, trial, out_dir);
    if (*oracle) return cmd_oracle(config_path, trial, out_dir, cold);
    if (*mc) return cmd_mc(config_path, trials, seed, out_dir);
    if (*verify) return cmd_verify(config_path);
    if (*sim) return cmd_sim_field(config_path, out_dir);
  } catch (const Error& e) {
    std::cerr << "error [" << category_name(e.category()) << "]: " << e.what() << '\n';
    return static_cast<int>(e.category());
  } catch (const std::exception& e) {
    std::cerr << "error [internal]: " << e.what() << '\n';
    return 70;
  }
  return 0;
}
