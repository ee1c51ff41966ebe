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

#include "intermit/harness.hpp"

#include <omp.h>

#include <algorithm>
#include <boost/random/uniform_int_distribution.hpp>
#include <boost/random/uniform_real_distribution.hpp>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <limits>
#include <map>
#include <ostream>

#include "intermit/envsim.hpp"
#include "intermit/error.hpp"
#include "intermit/plot.hpp"
#include "intermit/text.hpp"

namespace intermit {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

int draw_int(const IntRange& range, Rng& rng) {
  boost::random::uniform_int_distribution<long long> dist(range.lo, range.hi);
  return static_cast<int>(dist(rng));
}

double draw_real(const RealRange& range, Rng& rng) {
  if (range.lo == range.hi) return range.lo;
  boost::random::uniform_real_distribution<double> dist(range.lo, range.hi);
  return dist(rng);
}

/// Cost weights live in the open interval (0, 1); redraw the endpoints.
double draw_cost_weight(const RealRange& range, Rng& rng) {
  for (int attempt = 0; attempt < 1000; ++attempt) {
    const double w = draw_real(range, rng);
    if (w > 0.0 && w < 1.0) return w;
  }
  throw InvalidInput("cost weight range " + range.str() + " contains no value in (0, 1)");
}

bool same(double a, double b) {
  return (std::isnan(a) && std::isnan(b)) || a == b;
}

std::string csv_field(const std::string& text) {
  if (text.find_first_of(",\"\n") == std::string::npos) return text;
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c == '\n' ? ' ' : c;
  }
  return out + '"';
}

double mean(const std::vector<double>& values) {
  if (values.empty()) return kNaN;
  double sum = 0.0;
  for (double v : values) sum += v;
  return sum / static_cast<double>(values.size());
}

template <typename F>
void write_file(const std::filesystem::path& path, std::vector<std::filesystem::path>& written,
                F&& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  body(out);
  out.flush();
  if (!out) throw IoError("write failed for '" + path.string() + "'");
  written.push_back(path);
}

}  // namespace

SampledInstance sample_instance(const ExperimentConfig& config, long long trial,
                                Execution execution) {
  config.validate();
  Rng rng(config.seed + static_cast<std::uint64_t>(trial));

  const int P = draw_int(config.P, rng);
  const int Q = draw_int(config.Q, rng);
  const int T = draw_int(config.T, rng);
  const int L = draw_int(config.L, rng);
  const int R = draw_int(config.R, rng);

  std::vector<RobotSpec> robots;
  for (int r = 1; r <= R; ++r) {
    RobotSpec robot;
    robot.id = r;
    robot.cost_weight = draw_cost_weight(config.cost_weight, rng);
    robot.noise_variance = {draw_real(config.noise_var, rng)};
    robot.depot = config.depot;
    robots.push_back(std::move(robot));
  }

  const GridSpec grid{P, Q, config.width, config.height};
  std::vector<SpaceTime> probes;
  boost::random::uniform_real_distribution<double> ux(0.0, config.width);
  boost::random::uniform_real_distribution<double> uy(0.0, config.height);
  for (double t : config.train_times) {
    for (long long k = 0; k < config.train_count; ++k) {
      const double x = ux(rng);
      const double y = uy(rng);
      probes.push_back({x, y, t});
    }
  }
  TrainingSet train =
      generate_training_set(config.environment, grid, probes, config.train_noise_var, rng);

  const auto candidates = config.kernel.grid();
  const KernelParams params =
      config.kernel.fit && !train.empty() ? fit_hyperparameters(train, candidates) : candidates.front();

  ConstraintSystem constraints;
  for (const MatroidTemplate& m : config.matroids) constraints.matroids.push_back(m.resolve(R, L, T));
  for (const KnapsackTemplate& k : config.knapsacks) {
    constraints.knapsacks.push_back({k.variant, k.budget});
  }

  GroundSet ground = build_ground_set(grid, T, std::move(robots));
  GpModel model(params, std::move(train));
  return SampledInstance{P, Q, T, L, R,
                         make_problem(std::move(ground), std::move(model), std::move(constraints),
                                      execution)};
}

bool TrialRecord::operator==(const TrialRecord& o) const {
  return trial == o.trial && T == o.T && L == o.L && R == o.R && P == o.P && Q == o.Q &&
         problem_size == o.problem_size && ground_size == o.ground_size &&
         same(greedy_mi, o.greedy_mi) && greedy_size == o.greedy_size &&
         oracle_complete == o.oracle_complete && same(optimal_mi, o.optimal_mi) &&
         optimal_size == o.optimal_size && oracle_visited == o.oracle_visited &&
         same(ratio, o.ratio) && same(bound, o.bound) && oracle_calls == o.oracle_calls;
}

TrialOutcome run_trial(const ExperimentConfig& config, long long trial) {
  const SampledInstance s = sample_instance(config, trial);
  const ProblemInstance& problem = s.problem;

  SolverConfig solver;
  solver.eta = config.eta;
  const SolverResult greedy = threshold_greedy(problem, solver);

  TrialOutcome out;
  TrialRecord& r = out.record;
  r.trial = trial;
  r.T = s.T;
  r.L = s.L;
  r.R = s.R;
  r.P = s.P;
  r.Q = s.Q;
  r.problem_size = static_cast<long long>(s.L) * s.R * s.P * s.Q;
  r.ground_size = static_cast<long long>(problem.ground.size());
  r.greedy_mi = greedy.value;
  r.greedy_size = static_cast<long long>(greedy.best.size());
  r.bound = optimality_bound(problem.constraints.p(), problem.constraints.l(), config.eta);
  r.oracle_calls = count_oracle_calls(greedy);
  out.timing.trial = trial;
  out.timing.greedy_seconds = greedy.wall_seconds;

  try {
    const OracleResult exact = enumerate_optimal(problem, config.oracle, greedy.best);
    r.oracle_complete = true;
    r.optimal_mi = exact.value;
    r.optimal_size = static_cast<long long>(exact.best.size());
    r.oracle_visited = exact.visited;
    r.ratio = optimality_ratio(greedy, exact);
    out.timing.oracle_seconds = exact.seconds;
  } catch (const BudgetExceeded& e) {
    r.oracle_complete = false;
    r.optimal_mi = e.partial().value;
    r.optimal_size = static_cast<long long>(e.partial().best.size());
    r.oracle_visited = e.partial().visited;
    r.ratio = kNaN;
    out.timing.oracle_seconds = e.partial().seconds;
  }
  return out;
}

std::vector<SizeSummary> summarize(const std::vector<TrialRecord>& records) {
  struct Group {
    long long trials = 0;
    std::vector<double> greedy;
    std::vector<double> optimal;
    std::vector<double> ratios;
  };
  std::map<long long, Group> groups;
  for (const TrialRecord& r : records) {
    Group& g = groups[r.problem_size];
    ++g.trials;
    g.greedy.push_back(r.greedy_mi);
    if (r.oracle_complete) {
      g.optimal.push_back(r.optimal_mi);
      g.ratios.push_back(r.ratio);
    }
  }
  std::vector<SizeSummary> out;
  for (const auto& [size, g] : groups) {
    SizeSummary s;
    s.problem_size = size;
    s.trials = g.trials;
    s.completed = static_cast<long long>(g.ratios.size());
    s.mean_greedy_mi = mean(g.greedy);
    s.mean_optimal_mi = mean(g.optimal);
    s.mean_ratio = mean(g.ratios);
    s.min_ratio = g.ratios.empty() ? kNaN : *std::min_element(g.ratios.begin(), g.ratios.end());
    out.push_back(s);
  }
  return out;
}

MonteCarloResult run_monte_carlo(const ExperimentConfig& config) {
  config.validate();
  const long long n = config.trials;
  std::vector<std::optional<TrialOutcome>> outcomes(static_cast<std::size_t>(n));
  std::vector<std::optional<TrialFailure>> failures(static_cast<std::size_t>(n));

#pragma omp parallel for schedule(dynamic, 1)
  for (long long k = 0; k < n; ++k) {
    const auto slot = static_cast<std::size_t>(k);
    try {
      outcomes[slot] = run_trial(config, k);
    } catch (const Error& e) {
      failures[slot] = TrialFailure{k, category_name(e.category()), e.what()};
    } catch (const std::exception& e) {
      failures[slot] = TrialFailure{k, "internal", e.what()};
    }
  }

  MonteCarloResult result;
  for (std::size_t k = 0; k < outcomes.size(); ++k) {
    if (outcomes[k]) {
      result.records.push_back(outcomes[k]->record);
      result.timings.push_back(outcomes[k]->timing);
    }
    if (failures[k]) result.failures.push_back(*failures[k]);
  }
  result.summary = summarize(result.records);
  return result;
}

void write_trials_csv(std::ostream& out, const std::vector<TrialRecord>& records) {
  out << kTrialColumns << '\n';
  for (const TrialRecord& r : records) {
    out << r.trial << ',' << r.T << ',' << r.L << ',' << r.R << ',' << r.P << ',' << r.Q << ','
        << r.problem_size << ',' << r.ground_size << ',' << format_double(r.greedy_mi) << ','
        << r.greedy_size << ',' << (r.oracle_complete ? 1 : 0) << ','
        << format_double(r.optimal_mi) << ',' << r.optimal_size << ',' << r.oracle_visited << ','
        << format_double(r.ratio) << ',' << format_double(r.bound) << ',' << r.oracle_calls
        << '\n';
  }
}

std::vector<TrialRecord> read_trials_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || trim(line) != kTrialColumns) {
    throw InvalidInput("trials CSV header does not match '" + std::string(kTrialColumns) + "'");
  }
  std::vector<TrialRecord> out;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto f = split(trim(line), ',');
    if (f.size() != 17) {
      throw InvalidInput("trials CSV line " + std::to_string(line_no) + " has " +
                         std::to_string(f.size()) + " fields, expected 17");
    }
    TrialRecord r;
    const auto as_int = [&](std::size_t k) { return static_cast<int>(parse_int(f[k])); };
    const auto as_u64 = [&](std::size_t k) {
      const long long v = parse_int(f[k]);
      if (v < 0) throw InvalidInput("negative count in trials CSV line " + std::to_string(line_no));
      return static_cast<std::uint64_t>(v);
    };
    r.trial = parse_int(f[0]);
    r.T = as_int(1);
    r.L = as_int(2);
    r.R = as_int(3);
    r.P = as_int(4);
    r.Q = as_int(5);
    r.problem_size = parse_int(f[6]);
    r.ground_size = parse_int(f[7]);
    r.greedy_mi = parse_double(f[8]);
    r.greedy_size = parse_int(f[9]);
    r.oracle_complete = parse_int(f[10]) != 0;
    r.optimal_mi = parse_double(f[11]);
    r.optimal_size = parse_int(f[12]);
    r.oracle_visited = as_u64(13);
    r.ratio = parse_double(f[14]);
    r.bound = parse_double(f[15]);
    r.oracle_calls = as_u64(16);
    out.push_back(r);
  }
  return out;
}

void write_summary_csv(std::ostream& out, const std::vector<SizeSummary>& summary) {
  out << kSummaryColumns << '\n';
  for (const SizeSummary& s : summary) {
    out << s.problem_size << ',' << s.trials << ',' << s.completed << ','
        << format_double(s.mean_greedy_mi) << ',' << format_double(s.mean_optimal_mi) << ','
        << format_double(s.mean_ratio) << ',' << format_double(s.min_ratio) << '\n';
  }
}

std::vector<std::filesystem::path> emit_outputs(const MonteCarloResult& result,
                                                const ExperimentConfig& config,
                                                const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory '" + dir.string() + "': " + ec.message());

  std::vector<std::filesystem::path> written;
  write_file(dir / "trials.csv", written,
             [&](std::ostream& out) { write_trials_csv(out, result.records); });
  write_file(dir / "summary.csv", written,
             [&](std::ostream& out) { write_summary_csv(out, result.summary); });
  write_file(dir / "timings.csv", written, [&](std::ostream& out) {
    out << kTimingColumns << '\n';
    for (const TrialTiming& t : result.timings) {
      out << t.trial << ',' << format_double(t.greedy_seconds) << ','
          << format_double(t.oracle_seconds) << '\n';
    }
  });
  write_file(dir / "failures.csv", written, [&](std::ostream& out) {
    out << kFailureColumns << '\n';
    for (const TrialFailure& f : result.failures) {
      out << f.trial << ',' << csv_field(f.category) << ',' << csv_field(f.message) << '\n';
    }
  });
  write_file(dir / "config.echo", written, [&](std::ostream& out) { write_config(out, config); });

  const double bound = result.records.empty()
                           ? optimality_bound(config.matroids.size(), config.knapsacks.size(), config.eta)
                           : result.records.front().bound;
  ScatterPlot ratio;
  ratio.title = "Greedy / optimal mutual information";
  ratio.x_label = "problem size (L*R*P*Q)";
  ratio.y_label = "optimality ratio";
  Series points{"trials", {}, {}, "#1f77b4", false};
  for (const TrialRecord& r : result.records) {
    if (!r.oracle_complete) continue;
    points.x.push_back(static_cast<double>(r.problem_size));
    points.y.push_back(r.ratio);
  }
  ratio.series.push_back(std::move(points));
  ratio.reference = bound;
  ratio.reference_label = "guarantee " + format_double(bound);
  ratio.y_min = 0.0;
  ratio.y_max = 1.05;
  write_svg((dir / "ratio.svg").string(), ratio);
  written.push_back(dir / "ratio.svg");

  ScatterPlot util;
  util.title = "Mean mutual information by problem size";
  util.x_label = "problem size (L*R*P*Q)";
  util.y_label = "mean mutual information (nats)";
  Series greedy_mean{"greedy", {}, {}, "#1f77b4", true};
  Series optimal_mean{"optimal", {}, {}, "#ff7f0e", true};
  for (const SizeSummary& s : result.summary) {
    greedy_mean.x.push_back(static_cast<double>(s.problem_size));
    greedy_mean.y.push_back(s.mean_greedy_mi);
    optimal_mean.x.push_back(static_cast<double>(s.problem_size));
    optimal_mean.y.push_back(s.mean_optimal_mi);
  }
  util.series.push_back(std::move(greedy_mean));
  util.series.push_back(std::move(optimal_mean));
  write_svg((dir / "util.svg").string(), util);
  written.push_back(dir / "util.svg");
  return written;
}

GroundSet verification_ground(const ExperimentConfig& config) {
  std::vector<RobotSpec> robots;
  for (int r = 1; r <= config.verify_R; ++r) {
    RobotSpec robot;
    robot.id = r;
    robot.depot = config.depot;
    robots.push_back(robot);
  }
  return build_ground_set({config.verify_P, config.verify_Q, config.width, config.height},
                          config.verify_T, std::move(robots));
}

std::vector<MatroidTemplate> canonical_matroids() {
  return {{MatroidVariant::I21, "1"}, {MatroidVariant::I22, "1"}, {MatroidVariant::I23, "L"},
          {MatroidVariant::I31, "1"}, {MatroidVariant::I32, "1"}, {MatroidVariant::I33, "L"}};
}

std::filesystem::path output_directory(const ExperimentConfig& config) {
  if (const char* env = std::getenv("INTERMIT_OUTPUT"); env != nullptr && *env != '\0') return env;
  return config.output;
}

}  // namespace intermit
