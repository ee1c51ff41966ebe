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

#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "intermit/config.hpp"
#include "intermit/oracle.hpp"
#include "intermit/solver.hpp"

namespace intermit {

/// One sampled problem with the sizes that produced it.
struct SampledInstance {
  int P = 0;
  int Q = 0;
  int T = 0;
  int L = 0;
  int R = 0;
  ProblemInstance problem;
};

/// Draws the instance for `trial` from the stream seeded with seed + trial.
/// Draw order: P, Q, T, L, R, then each robot's cost weight and noise, then
/// training probe positions, then the environment noise.
SampledInstance sample_instance(const ExperimentConfig& config, long long trial,
                                Execution execution = Execution::kSerial);

/// Fixed-column record of one trial. Wall times live in TrialTiming so the
/// records themselves are reproducible byte for byte.
struct TrialRecord {
  long long trial = 0;
  int T = 0;
  int L = 0;
  int R = 0;
  int P = 0;
  int Q = 0;
  long long problem_size = 0;  // L * R * P * Q
  long long ground_size = 0;
  double greedy_mi = 0.0;
  long long greedy_size = 0;
  bool oracle_complete = false;
  double optimal_mi = 0.0;
  long long optimal_size = 0;
  std::uint64_t oracle_visited = 0;
  /// NaN when the oracle did not finish.
  double ratio = 0.0;
  double bound = 0.0;
  std::uint64_t oracle_calls = 0;

  bool operator==(const TrialRecord& other) const;
};

struct TrialTiming {
  long long trial = 0;
  double greedy_seconds = 0.0;
  double oracle_seconds = 0.0;
};

struct TrialFailure {
  long long trial = 0;
  std::string category;
  std::string message;
};

struct TrialOutcome {
  TrialRecord record;
  TrialTiming timing;
};

TrialOutcome run_trial(const ExperimentConfig& config, long long trial);

struct SizeSummary {
  long long problem_size = 0;
  long long trials = 0;
  long long completed = 0;
  double mean_greedy_mi = 0.0;
  /// Over completed trials; NaN when none completed.
  double mean_optimal_mi = 0.0;
  double mean_ratio = 0.0;
  double min_ratio = 0.0;
};

struct MonteCarloResult {
  std::vector<TrialRecord> records;
  std::vector<TrialTiming> timings;
  std::vector<TrialFailure> failures;
  std::vector<SizeSummary> summary;
};

/// Runs trials 0 .. trials-1 across the OpenMP pool. Records are sorted by
/// trial id. A trial that throws is listed in `failures` and skipped.
MonteCarloResult run_monte_carlo(const ExperimentConfig& config);

/// One row per distinct problem size, ascending.
std::vector<SizeSummary> summarize(const std::vector<TrialRecord>& records);

inline constexpr const char* kTrialColumns =
    "trial,T,L,R,P,Q,problem_size,ground_size,greedy_mi,greedy_size,oracle_complete,"
    "optimal_mi,optimal_size,oracle_visited,ratio,bound,oracle_calls";
inline constexpr const char* kSummaryColumns =
    "problem_size,trials,completed,mean_greedy_mi,mean_optimal_mi,mean_ratio,min_ratio";
inline constexpr const char* kTimingColumns = "trial,greedy_seconds,oracle_seconds";
inline constexpr const char* kFailureColumns = "trial,category,message";

void write_trials_csv(std::ostream& out, const std::vector<TrialRecord>& records);
std::vector<TrialRecord> read_trials_csv(std::istream& in);
void write_summary_csv(std::ostream& out, const std::vector<SizeSummary>& summary);

/// Writes trials.csv, timings.csv, summary.csv, failures.csv, ratio.svg,
/// util.svg and config.echo into `dir` (created if missing). Returns the
/// paths written.
std::vector<std::filesystem::path> emit_outputs(const MonteCarloResult& result,
                                                const ExperimentConfig& config,
                                                const std::filesystem::path& dir);

/// Small ground set sized by the [verify] section, for exhaustive matroid
/// checks.
GroundSet verification_ground(const ExperimentConfig& config);

/// One template per matroid variant: unit counts and statuses, and the
/// [verify] L for the active-time variants.
std::vector<MatroidTemplate> canonical_matroids();

/// The configured output directory, unless INTERMIT_OUTPUT overrides it.
std::filesystem::path output_directory(const ExperimentConfig& config);

}  // namespace intermit
