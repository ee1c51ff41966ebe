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

#include <boost/multiprecision/cpp_int.hpp>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>

#include "intermit/error.hpp"
#include "intermit/solver.hpp"

namespace intermit {

struct EnumerationBudget {
  std::uint64_t max_visited = 20'000'000;
  /// Wall-clock limit in seconds; 0 disables it. Leave it at 0 where the
  /// outcome must be reproducible.
  double max_seconds = 0.0;
  std::size_t max_ground = 1024;
  std::size_t max_cardinality = 16;
  /// Skip subtrees whose submodular upper bound cannot beat the incumbent.
  /// Off gives plain enumeration with feasibility pruning only.
  bool bound_pruning = true;

  void validate() const;
};

struct OracleResult {
  DeploymentSet best;
  double value = 0.0;
  /// Feasible sets evaluated, the empty set included.
  std::uint64_t visited = 0;
  double seconds = 0.0;
  bool complete = true;
};

/// Thrown when an enumeration is refused or runs out of budget. Carries the
/// best set seen so far, which is not known to be optimal.
class BudgetExceeded : public Error {
 public:
  BudgetExceeded(const std::string& what, OracleResult partial)
      : Error(ErrorCategory::kBudgetExceeded, what), partial_(std::move(partial)) {}

  const OracleResult& partial() const { return partial_; }

 private:
  OracleResult partial_;
};

/// Depth-first walk over every feasible subset, growing each set only with
/// elements that keep it feasible (feasibility is downward closed). Visits
/// each feasible set exactly once, the empty set first.
void for_each_feasible(const ConstraintSystem& system, const GroundSet& ground,
                       const std::function<void(std::span<const std::size_t>)>& visit);

/// Exact maximizer of M over the feasible sets. A feasible `incumbent`
/// (typically the greedy answer) only tightens pruning; the optimum found is
/// the same with or without it, though ties may resolve to a different set.
OracleResult enumerate_optimal(const ProblemInstance& instance, const EnumerationBudget& budget,
                               const std::optional<DeploymentSet>& incumbent = std::nullopt);

/// sum_{l=1..L} C(T, l) * C(R(N+1), R)^l, exactly.
boost::multiprecision::cpp_int count_combinations(long long T, long long L, long long R,
                                                  long long N);

/// M(D_greedy) / M(D*), reported in [0, 1 + 1e-9]; 1 when both are zero.
double optimality_ratio(const SolverResult& greedy, const OracleResult& exact);

}  // namespace intermit
