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
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "intermit/execution.hpp"
#include "intermit/groundset.hpp"

namespace intermit {

/// Homogeneous (I21-I23) and heterogeneous (I31-I33) deployment constraints.
///
/// Limit layouts:
///   I21, I22  one entry per time step (size T)
///   I23       a single entry L
///   I31, I32  robot-major R x T matrix, entry (r-1)*T + (t-1)
///   I33       one entry per robot (size R)
/// I22 and I32 limits are deployment statuses and must be 0 or 1.
enum class MatroidVariant { I21, I22, I23, I31, I32, I33 };

struct MatroidSpec {
  MatroidVariant variant = MatroidVariant::I21;
  std::vector<int> limits;

  static MatroidSpec per_time_count(std::vector<int> limits);
  static MatroidSpec per_time_status(std::vector<int> statuses);
  static MatroidSpec active_times(int limit);
  static MatroidSpec robot_time_count(std::vector<int> limits);
  static MatroidSpec robot_time_status(std::vector<int> statuses);
  static MatroidSpec robot_active_times(std::vector<int> limits);

  void validate(const GroundSet& ground) const;
};

/// Per-group budget: X1 groups by robot, X2 by time, X3 by location.
enum class KnapsackVariant { X1, X2, X3 };

struct KnapsackSpec {
  KnapsackVariant variant = KnapsackVariant::X2;
  double budget = 0.0;

  void validate() const;
};

struct ConstraintSystem {
  std::vector<MatroidSpec> matroids;
  std::vector<KnapsackSpec> knapsacks;

  std::size_t p() const { return matroids.size(); }
  std::size_t l() const { return knapsacks.size(); }
  void validate(const GroundSet& ground) const;
};

const char* variant_name(MatroidVariant variant);
const char* variant_name(KnapsackVariant variant);
MatroidVariant parse_matroid_variant(const std::string& name);
KnapsackVariant parse_knapsack_variant(const std::string& name);

/// Budget comparison shared by every knapsack check: sum <= B up to 1e-9 relative.
bool fits_budget(double total, double budget);

bool is_independent(const MatroidSpec& spec, const GroundSet& ground, const DeploymentSet& set);
bool within_budget(const KnapsackSpec& spec, const GroundSet& ground, const DeploymentSet& set);
bool feasible(const ConstraintSystem& system, const GroundSet& ground, const DeploymentSet& set);

/// Upper bound on |S| for any S independent in every matroid of `system`,
/// combining per-cell, per-time and active-time limits.
std::size_t max_cardinality_bound(const ConstraintSystem& system, const GroundSet& ground);

/// Counters for a growing/shrinking set so that feasibility of S + e is an
/// O(p + l) query. Solver-local.
class FeasibilityTracker {
 public:
  FeasibilityTracker(const ConstraintSystem& system, const GroundSet& ground);

  bool matroids_allow(std::size_t element) const;
  bool knapsacks_allow(std::size_t element) const;
  bool can_add(std::size_t element) const {
    return matroids_allow(element) && knapsacks_allow(element);
  }

  void add(std::size_t element);
  void remove(std::size_t element);
  void clear();

  /// Upper bound on sum_{x in X} weight(x) over every X drawn from
  /// `candidates` such that S + X stays feasible, given nonnegative weights
  /// aligned with `candidates`. Each constraint is relaxed on its own
  /// (top-k per slice, fractional knapsack per group); slice-local
  /// constraints are combined per time step before I23 picks active steps.
  double extension_upper_bound(std::span<const std::size_t> candidates,
                               std::span<const double> weights) const;

 private:
  struct MatroidState {
    const MatroidSpec* spec;
    std::vector<int> count;   // per time, or per (robot, time)
    std::vector<int> active;  // I23: [0] = non-empty times; I33: per robot
  };
  struct KnapsackState {
    const KnapsackSpec* spec;
    std::vector<double> spent;
  };

  std::size_t knapsack_group(const KnapsackState& k, std::size_t element) const;

  const ConstraintSystem* system_;
  const GroundSet* ground_;
  std::vector<MatroidState> matroids_;
  std::vector<KnapsackState> knapsacks_;
};

/// Outcome of an exhaustive check of the three matroid axioms.
struct MatroidReport {
  bool passed = true;
  /// "empty", "downward-closure" or "exchange" when a check failed.
  std::string failed_axiom;
  /// Counterexample: for downward-closure A subset of independent B with A
  /// dependent; for exchange independent A, B with |B| < |A| and no e in
  /// A \ B keeping B + e independent.
  std::vector<std::size_t> set_a;
  std::vector<std::size_t> set_b;
  std::size_t independent_sets = 0;

  std::string describe() const;
};

using IndependenceOracle = std::function<bool(std::span<const std::size_t>)>;

inline constexpr std::size_t kDefaultAxiomCap = 16;

/// Exhaustive over all 2^n subsets. Exchange is checked for |A| = |B| + 1,
/// which together with downward closure implies the general axiom.
/// Refuses (InvalidInput) when n > cap; cap itself may not exceed 24.
MatroidReport verify_matroid_axioms(const IndependenceOracle& oracle, std::size_t ground_size,
                                    std::size_t cap = kDefaultAxiomCap,
                                    Execution execution = Execution::kSerial);
MatroidReport verify_matroid_axioms(const MatroidSpec& spec, const GroundSet& ground,
                                    std::size_t cap = kDefaultAxiomCap,
                                    Execution execution = Execution::kSerial);

}  // namespace intermit
