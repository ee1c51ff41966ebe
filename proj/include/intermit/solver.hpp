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

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "intermit/constraints.hpp"
#include "intermit/execution.hpp"
#include "intermit/groundset.hpp"
#include "intermit/stgp.hpp"

namespace intermit {

/// Ground set, trained GP, constraint system and the derived MI objective.
struct ProblemInstance {
  GroundSet ground;
  GpModel model;
  ConstraintSystem constraints;
  std::shared_ptr<const MiObjective> objective;
};

ProblemInstance make_problem(GroundSet ground, GpModel model, ConstraintSystem constraints,
                             Execution execution = Execution::kSerial);

struct SolverConfig {
  double eta = 0.1;
  /// Run independent rho iterations on the OpenMP pool. Results are merged
  /// in rho order and are identical to the serial sweep.
  Execution execution = Execution::kSerial;

  void validate() const;
};

enum class CandidateKind { kFinal, kPrefix, kSingleton };

struct Candidate {
  DeploymentSet set;
  double value = 0.0;
  CandidateKind kind = CandidateKind::kFinal;
  double rho = 0.0;
};

struct RhoTrace {
  double rho = 0.0;
  /// Largest singleton value with density >= rho; 0 when skipped.
  double anchor = 0.0;
  bool skipped = false;
  double tau_first = 0.0;
  double tau_last = 0.0;
  std::size_t tau_steps = 0;
  /// Knapsack violation ended this iteration early.
  bool restarted = false;
  std::vector<double> candidate_values;
  std::uint64_t oracle_calls = 0;
};

struct SolverResult {
  DeploymentSet best;
  double value = 0.0;
  CandidateKind kind = CandidateKind::kFinal;
  std::vector<Candidate> pool;
  std::vector<RhoTrace> trace;
  /// Largest singleton value over elements that are feasible on their own.
  double max_singleton = 0.0;
  double wall_seconds = 0.0;
  std::uint64_t oracle_calls = 0;
  std::vector<std::string> warnings;
};

/// Threshold greedy for M(S) subject to p matroids and l knapsacks.
///
/// d is the largest singleton value; rho sweeps d/(p+l) .. 2d|V|/(p+l) by
/// factors of (1+eta). For each rho, tau descends from the anchor M_rho to
/// (eta/|V|) M_rho by factors of (1+eta), and each tau pass scans V in index
/// order, adding e when S+e is independent, its gain clears tau, its
/// gain over its budget-normalized cost (sum of cost/B_j) clears rho and
/// every budget still holds. A budget
/// violation records {e} and the current S and moves on to the next rho.
/// The answer is the best candidate recorded.
SolverResult threshold_greedy(const ProblemInstance& instance, const SolverConfig& config);

/// 1 / ((1+eta)(p + 2l + 1)).
double optimality_bound(std::size_t p, std::size_t l, double eta);

/// Number of marginal-gain evaluations (singleton values included).
std::uint64_t count_oracle_calls(const SolverResult& result);

/// (|V|/eta^2) log^2(|V|/eta).
double oracle_call_envelope(std::size_t ground_size, double eta);

const char* kind_name(CandidateKind kind);

}  // namespace intermit
