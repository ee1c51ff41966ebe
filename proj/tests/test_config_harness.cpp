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

#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "intermit/config.hpp"
#include "intermit/error.hpp"
#include "intermit/harness.hpp"

using namespace intermit;
namespace fs = std::filesystem;

namespace {

ExperimentConfig parse_text(const std::string& text) {
  std::istringstream in(text);
  return parse_config(in);
}

std::string echo(const ExperimentConfig& c) {
  std::ostringstream out;
  write_config(out, c);
  return out.str();
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

const char* kSmall =
    "[experiment]\nseed = 5\ntrials = 6\n"
    "[problem]\nP = 2..3\nQ = 2\nT = 3..4\nL = 1..2\nR = 1..2\n"
    "[kernel]\nmode = fixed\nspatial_var = 4\nspatial_len = 50\nnoise_var = 0.05\n"
    "[training]\ncount = 6\ntimes = 0, 1\n";

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("intermit_test_" + name);
  fs::remove_all(dir);
  return dir;
}

}  // namespace

TEST_CASE("defaults describe the standard experiment") {
  const ExperimentConfig c;
  CHECK(c.P.lo == 3);
  CHECK(c.P.hi == 5);
  CHECK(c.T.lo == 4);
  CHECK(c.T.hi == 8);
  CHECK(c.L.hi == 4);
  CHECK(c.R.lo == 2);
  CHECK(c.eta == 0.1);
  CHECK(c.matroids.size() == 2);
  CHECK(c.knapsacks.size() == 1);
  CHECK_NOTHROW(c.validate());
}

TEST_CASE("range parsing") {
  CHECK(IntRange::parse("3..5").lo == 3);
  CHECK(IntRange::parse("3..5").hi == 5);
  CHECK(IntRange::parse(" 4 ").hi == 4);
  CHECK(IntRange::parse("2..7").str() == "2..7");
  CHECK(IntRange::parse("6").str() == "6");
  CHECK_THROWS_AS(IntRange::parse("5..3").validate("P", 1), InvalidInput);
  CHECK_THROWS_AS(IntRange::parse("a..3"), InvalidInput);
  CHECK(RealRange::parse("0.05..0.2").hi == 0.2);
}

TEST_CASE("matroid templates resolve symbols and broadcast") {
  const MatroidSpec a = MatroidTemplate{MatroidVariant::I21, "R"}.resolve(3, 2, 4);
  CHECK(a.limits == std::vector<int>{3, 3, 3, 3});
  const MatroidSpec b = MatroidTemplate{MatroidVariant::I23, "L"}.resolve(3, 2, 4);
  CHECK(b.limits == std::vector<int>{2});
  const MatroidSpec c = MatroidTemplate{MatroidVariant::I31, "1,2;T,0"}.resolve(2, 1, 2);
  CHECK(c.limits == std::vector<int>{1, 2, 2, 0});
  const MatroidSpec d = MatroidTemplate{MatroidVariant::I33, "L"}.resolve(3, 2, 4);
  CHECK(d.limits == std::vector<int>{2, 2, 2});
  CHECK_THROWS_AS((MatroidTemplate{MatroidVariant::I21, "1,2"}.resolve(2, 1, 3)), InvalidInput);
  CHECK_THROWS_AS((MatroidTemplate{MatroidVariant::I21, "X"}.resolve(2, 1, 3)), InvalidInput);
}

TEST_CASE("config text round-trips through the echo") {
  const ExperimentConfig c = parse_text(std::string(kSmall) +
                                        "[matroid_1]\nvariant = I22\nlimits = 1\n"
                                        "[matroid_2]\nvariant = I33\nlimits = L\n"
                                        "[knapsack_1]\nvariant = X3\nbudget = 80\n"
                                        "[environment]\ncenters = 10 20; 30 40\nwidths = 5, 6\n"
                                        "weights = 1, 2\ndynamics = -0.5\n"
                                        "[oracle]\nmax_visited = 1000\nbound_pruning = false\n");
  CHECK(c.seed == 5);
  CHECK(c.trials == 6);
  CHECK_FALSE(c.kernel.fit);
  CHECK(c.matroids.size() == 2);
  CHECK(c.matroids[1].variant == MatroidVariant::I33);
  CHECK(c.knapsacks[0].variant == KnapsackVariant::X3);
  CHECK(c.knapsacks[0].budget == 80.0);
  CHECK(c.environment.basis_count() == 2);
  CHECK(c.environment.dynamics(1, 1) == -0.5);
  CHECK(c.environment.dynamics(0, 1) == 0.0);
  CHECK(c.oracle.max_visited == 1000);
  CHECK_FALSE(c.oracle.bound_pruning);
  CHECK(c.train_times == std::vector<double>{0, 1});

  const std::string first = echo(c);
  const ExperimentConfig again = parse_text(first);
  CHECK(echo(again) == first);
}

TEST_CASE("config parsing rejects unknown or malformed input") {
  CHECK_THROWS_AS(parse_text("[experiment]\nsede = 3\n"), InvalidInput);
  CHECK_THROWS_AS(parse_text("[experimentz]\nseed = 3\n"), InvalidInput);
  CHECK_THROWS_AS(parse_text("[experiment]\neta = 0\n"), InvalidInput);
  CHECK_THROWS_AS(parse_text("[experiment]\ntrials = many\n"), InvalidInput);
  CHECK_THROWS_AS(parse_text("[environment]\nrng = minstd\n"), InvalidInput);
  CHECK_THROWS_AS(parse_text("[problem]\nP = 0\n"), InvalidInput);
  CHECK_THROWS_AS(parse_text("[knapsack_1]\nvariant = X9\nbudget = 1\n"), InvalidInput);
  CHECK_THROWS_AS(load_config("/nonexistent/intermit.ini"), IoError);
}

TEST_CASE("kernel grid is the product of candidate lists") {
  KernelSettings k;
  CHECK(k.grid().size() == 3 * 3 * 2);
  CHECK(k.grid().front().spatial_var == 1.0);
  k.fit = false;
  CHECK(k.grid().size() == 1);
}

TEST_CASE("sampled instances are deterministic and within the ranges") {
  const ExperimentConfig c = parse_text(kSmall);
  for (long long trial = 0; trial < 6; ++trial) {
    const SampledInstance a = sample_instance(c, trial);
    const SampledInstance b = sample_instance(c, trial);
    CHECK(a.P == b.P);
    CHECK(a.T == b.T);
    CHECK(a.problem.objective->covariance() == b.problem.objective->covariance());
    CHECK(a.P >= 2);
    CHECK(a.P <= 3);
    CHECK(a.L <= a.T);
    CHECK(a.problem.ground.size() == static_cast<std::size_t>(a.P * a.Q * a.T * a.R));
    for (const RobotSpec& r : a.problem.ground.robots()) {
      CHECK(r.cost_weight > 0.0);
      CHECK(r.cost_weight < 1.0);
    }
  }
}

TEST_CASE("trial records are reproducible and honour the bound") {
  const ExperimentConfig c = parse_text(kSmall);
  for (long long trial = 0; trial < 4; ++trial) {
    const TrialRecord a = run_trial(c, trial).record;
    const TrialRecord b = run_trial(c, trial).record;
    CHECK(a == b);
    CHECK(a.problem_size == static_cast<long long>(a.L) * a.R * a.P * a.Q);
    REQUIRE(a.oracle_complete);
    CHECK(a.ratio >= a.bound);
    CHECK(a.ratio <= 1.0 + 1e-9);
    CHECK(a.optimal_mi >= a.greedy_mi - 1e-12);
    CHECK(a.bound == doctest::Approx(1.0 / 5.5));
  }
}

TEST_CASE("incomplete oracle runs are marked and excluded") {
  ExperimentConfig c = parse_text(kSmall);
  c.oracle.max_visited = 3;
  const TrialRecord r = run_trial(c, 1).record;
  CHECK_FALSE(r.oracle_complete);
  CHECK(std::isnan(r.ratio));
  const auto summary = summarize({r});
  REQUIRE(summary.size() == 1);
  CHECK(summary[0].completed == 0);
  CHECK(std::isnan(summary[0].mean_ratio));
}

TEST_CASE("summary means match the group averages") {
  std::vector<TrialRecord> records;
  const double greedy[] = {1.0, 2.0, 4.5, 0.25, 3.0};
  const long long sizes[] = {36, 24, 36, 24, 36};
  for (int k = 0; k < 5; ++k) {
    TrialRecord r;
    r.trial = k;
    r.problem_size = sizes[k];
    r.greedy_mi = greedy[k];
    r.optimal_mi = greedy[k] * 1.25;
    r.oracle_complete = true;
    r.ratio = 0.8;
    records.push_back(r);
  }
  records[2].oracle_complete = false;
  records[2].ratio = std::nan("");
  const auto s = summarize(records);
  REQUIRE(s.size() == 2);
  CHECK(s[0].problem_size == 24);
  CHECK(s[1].problem_size == 36);
  CHECK(s[1].trials == 3);
  CHECK(s[1].completed == 2);
  CHECK(std::abs(s[1].mean_greedy_mi - (1.0 + 4.5 + 3.0) / 3) <= 1e-12);
  CHECK(std::abs(s[1].mean_optimal_mi - (1.25 + 3.75) / 2) <= 1e-12);
  CHECK(std::abs(s[0].mean_greedy_mi - 1.125) <= 1e-12);
  CHECK(s[0].min_ratio == 0.8);
}

TEST_CASE("trials CSV round-trips") {
  const ExperimentConfig c = parse_text(kSmall);
  std::vector<TrialRecord> records;
  for (long long t = 0; t < 3; ++t) records.push_back(run_trial(c, t).record);
  TrialRecord partial = records[0];
  partial.trial = 9;
  partial.oracle_complete = false;
  partial.ratio = std::nan("");
  records.push_back(partial);

  std::stringstream buf;
  write_trials_csv(buf, records);
  CHECK(buf.str().rfind(std::string(kTrialColumns) + "\n", 0) == 0);
  const auto back = read_trials_csv(buf);
  CHECK(back == records);

  std::istringstream bad("trial,T\n1,2\n");
  CHECK_THROWS_AS(read_trials_csv(bad), InvalidInput);
}

TEST_CASE("zero trials emit header-only files") {
  ExperimentConfig c = parse_text(kSmall);
  c.trials = 0;
  const MonteCarloResult r = run_monte_carlo(c);
  CHECK(r.records.empty());
  const fs::path dir = scratch("empty");
  emit_outputs(r, c, dir);
  CHECK(slurp(dir / "trials.csv") == std::string(kTrialColumns) + "\n");
  CHECK(slurp(dir / "summary.csv") == std::string(kSummaryColumns) + "\n");
  CHECK(slurp(dir / "failures.csv") == std::string(kFailureColumns) + "\n");
  CHECK(fs::exists(dir / "ratio.svg"));
  CHECK(fs::exists(dir / "config.echo"));
  fs::remove_all(dir);
}

TEST_CASE("echoed config reproduces the trials file byte for byte") {
  const ExperimentConfig c = parse_text(kSmall);
  const fs::path first = scratch("first");
  const fs::path second = scratch("second");
  emit_outputs(run_monte_carlo(c), c, first);
  const ExperimentConfig replay = load_config((first / "config.echo").string());
  emit_outputs(run_monte_carlo(replay), replay, second);
  CHECK(slurp(first / "trials.csv") == slurp(second / "trials.csv"));
  CHECK(slurp(first / "summary.csv") == slurp(second / "summary.csv"));
  CHECK(slurp(first / "config.echo") == slurp(second / "config.echo"));
  fs::remove_all(first);
  fs::remove_all(second);
}

TEST_CASE("the smallest standard configuration completes within the oracle budget") {
  ExperimentConfig c = parse_text(
      "[experiment]\nseed = 3\ntrials = 3\n"
      "[problem]\nP = 3\nQ = 3\nT = 4\nL = 2\nR = 2\n");
  const MonteCarloResult r = run_monte_carlo(c);
  REQUIRE(r.records.size() == 3);
  CHECK(r.failures.empty());
  for (const TrialRecord& rec : r.records) {
    CHECK(rec.oracle_complete);
    CHECK(rec.ratio >= rec.bound);
  }
}

TEST_CASE("output directory override") {
  ExperimentConfig c;
  c.output = "from_config";
  ::unsetenv("INTERMIT_OUTPUT");
  CHECK(output_directory(c) == fs::path("from_config"));
  ::setenv("INTERMIT_OUTPUT", "/tmp/elsewhere", 1);
  CHECK(output_directory(c) == fs::path("/tmp/elsewhere"));
  ::unsetenv("INTERMIT_OUTPUT");
}

TEST_CASE("verification ground set and canonical matroids") {
  const ExperimentConfig c;
  const GroundSet g = verification_ground(c);
  CHECK(g.size() == 2 * 1 * 2 * 3);
  const auto canon = canonical_matroids();
  CHECK(canon.size() == 6);
  for (const auto& m : canon) CHECK_NOTHROW(m.resolve(c.verify_R, c.verify_L, c.verify_T).validate(g));
}
