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
#include <iosfwd>
#include <string>
#include <vector>

#include "intermit/constraints.hpp"
#include "intermit/envsim.hpp"
#include "intermit/oracle.hpp"
#include "intermit/stgp.hpp"

namespace intermit {

/// Inclusive integer range written "lo..hi", or a single value.
struct IntRange {
  long long lo = 0;
  long long hi = 0;

  static IntRange parse(const std::string& text);
  std::string str() const;
  void validate(const char* name, long long min_value) const;
};

/// Real interval written "lo..hi", or a single value.
struct RealRange {
  double lo = 0.0;
  double hi = 0.0;

  static RealRange parse(const std::string& text);
  std::string str() const;
};

/// A matroid whose limits may refer to the sampled sizes: each limit is an
/// integer or one of the symbols R, L, T. A single limit is broadcast to
/// every slot; I31/I32 matrices separate robot rows with ';'.
struct MatroidTemplate {
  MatroidVariant variant = MatroidVariant::I21;
  std::string limits = "R";

  MatroidSpec resolve(int R, int L, int T) const;
};

struct KnapsackTemplate {
  KnapsackVariant variant = KnapsackVariant::X2;
  double budget = 0.0;
};

struct KernelSettings {
  /// Pick the best candidate by log marginal likelihood, or use the first.
  bool fit = true;
  std::vector<double> spatial_var{1.0, 4.0, 16.0};
  std::vector<double> spatial_len{30.0, 50.0, 80.0};
  std::vector<double> temporal_var{1.0};
  std::vector<double> temporal_len{3.0};
  std::vector<double> noise_var{0.01, 0.1};

  std::vector<KernelParams> grid() const;
};

/// Fully resolved experiment description. Every field has a default, and
/// write_config() emits every field, so an echoed config replays exactly.
struct ExperimentConfig {
  // [experiment]
  std::uint64_t seed = 1;
  long long trials = 100;
  double eta = 0.1;
  std::string output = "out";

  // [problem]
  IntRange P{3, 5};
  IntRange Q{3, 5};
  IntRange T{4, 8};
  IntRange L{2, 4};
  IntRange R{2, 4};
  double width = 200.0;
  double height = 200.0;

  // [robots]
  RealRange cost_weight{0.0, 1.0};
  RealRange noise_var{0.05, 0.2};
  Point2 depot{0.0, 0.0};

  KernelSettings kernel;

  // [training]
  long long train_count = 20;
  std::vector<double> train_times{0.0};
  double train_noise_var = 0.01;

  // [environment]
  GmmConfig environment = GmmConfig::standard();

  // [matroid_k], [knapsack_k]
  std::vector<MatroidTemplate> matroids{{MatroidVariant::I21, "R"}, {MatroidVariant::I23, "L"}};
  std::vector<KnapsackTemplate> knapsacks{{KnapsackVariant::X2, 235.0}};

  // [oracle]
  EnumerationBudget oracle;

  // [verify]: small ground set for exhaustive matroid checks
  int verify_P = 2;
  int verify_Q = 1;
  int verify_R = 2;
  int verify_T = 3;
  int verify_L = 2;

  void validate() const;
};

ExperimentConfig parse_config(std::istream& in);
ExperimentConfig load_config(const std::string& path);
void write_config(std::ostream& out, const ExperimentConfig& config);

}  // namespace intermit
