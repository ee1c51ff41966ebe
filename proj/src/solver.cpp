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

#include "intermit/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <limits>

#include "intermit/error.hpp"

namespace intermit {

namespace {

constexpr double kScheduleSlack = 1e-12;
constexpr double kZeroGain = 1e-12;

struct RhoOutcome {
  RhoTrace trace;
  std::vector<Candidate> candidates;
};

class RhoSweep {
 public:
  RhoSweep(const ProblemInstance& instance, const SolverConfig& config,
           const std::vector<double>& singletons, const std::vector<char>& admissible)
      : instance_(instance), config_(config), singletons_(singletons), admissible_(admissible) {
    // Each knapsack counts the element cost in units of its own budget, so
    // every budget becomes 1 and the rho sweep is scale free.
    cost_sum_.assign(instance.ground.size(), 0.0);
    for (std::size_t e = 0; e < cost_sum_.size(); ++e) {
      const double cost = instance.ground[e].cost;
      if (cost <= 0.0) continue;
      for (const KnapsackSpec& k : instance.constraints.knapsacks) {
        cost_sum_[e] += k.budget > 0.0 ? cost / k.budget : std::numeric_limits<double>::infinity();
      }
    }
  }

  // Gain-to-cost density; free elements always clear the rho test and
  // elements priced above a zero budget never do.
  double density(double gain, std::size_t e) const {
    if (cost_sum_[e] == 0.0) return std::numeric_limits<double>::infinity();
    return gain / cost_sum_[e];
  }

  RhoOutcome run(double rho, bool degenerate) const {
    RhoOutcome out;
    out.trace.rho = rho;
    const std::size_t n = instance_.ground.size();

    double anchor = -std::numeric_limits<double>::infinity();
    for (std::size_t e = 0; e < n; ++e) {
      if (admissible_[e] && density(singletons_[e], e) >= rho) anchor = std::max(anchor, singletons_[e]);
    }
    if (!(anchor > 0.0) && !degenerate) {
      out.trace.skipped = true;
      return out;
    }
    out.trace.anchor = degenerate ? 0.0 : anchor;

    IncrementalMi current(*instance_.objective);
    FeasibilityTracker tracker(instance_.constraints, instance_.ground);
    std::vector<char> chosen(n, 0);
    const double tau_floor = config_.eta / static_cast<double>(n) * out.trace.anchor;

    for (std::size_t step = 0;; ++step) {
      const double tau =
          degenerate ? 0.0 : out.trace.anchor / std::pow(1.0 + config_.eta, static_cast<double>(step));
      if (degenerate ? step > 0 : tau < tau_floor * (1.0 - kScheduleSlack)) break;
      if (step == 0) out.trace.tau_first = tau;
      out.trace.tau_last = tau;
      ++out.trace.tau_steps;

      for (std::size_t e = 0; e < n; ++e) {
        if (chosen[e] || !admissible_[e] || !tracker.matroids_allow(e)) continue;
        double gain = current.gain(e);
        ++out.trace.oracle_calls;
        // Rounding can leave an exact zero gain slightly negative.
        if (degenerate && std::abs(gain) <= kZeroGain) gain = 0.0;
        if (gain < tau || density(gain, e) < rho) continue;
        if (tracker.knapsacks_allow(e)) {
          current.push(e);
          tracker.add(e);
          chosen[e] = 1;
          continue;
        }
        // Budget violation: keep {e}, which is feasible on its own, and the
        // current prefix, then restart with the next rho.
        out.candidates.push_back({DeploymentSet({e}), singletons_[e], CandidateKind::kSingleton, rho});
        out.trace.candidate_values.push_back(singletons_[e]);
        out.candidates.push_back({current.to_set(), current.value(), CandidateKind::kPrefix, rho});
        out.trace.candidate_values.push_back(current.value());
        out.trace.restarted = true;
        return out;
      }
    }
    out.candidates.push_back({current.to_set(), current.value(), CandidateKind::kFinal, rho});
    out.trace.candidate_values.push_back(current.value());
    return out;
  }

 private:
  const ProblemInstance& instance_;
  const SolverConfig& config_;
  const std::vector<double>& singletons_;
  const std::vector<char>& admissible_;
  std::vector<double> cost_sum_;
};

}  // namespace

ProblemInstance make_problem(GroundSet ground, GpModel model, ConstraintSystem constraints,
                             Execution execution) {
  constraints.validate(ground);
  auto objective = std::make_shared<const MiObjective>(ground_set_covariance(ground, model, execution));
  return ProblemInstance{std::move(ground), std::move(model), std::move(constraints),
                         std::move(objective)};
}

void SolverConfig::validate() const {
  if (!(eta > 0.0 && eta <= 1.0)) throw InvalidInput("eta must lie in (0, 1]");
}

SolverResult threshold_greedy(const ProblemInstance& instance, const SolverConfig& config) {
  config.validate();
  if (!instance.objective) throw InvalidInput("problem instance has no objective");
  const auto started = std::chrono::steady_clock::now();
  const std::size_t n = instance.ground.size();

  SolverResult result;
  const std::size_t cardinality = max_cardinality_bound(instance.constraints, instance.ground);
  if (2 * cardinality > n) {
    result.warnings.push_back("constraints admit solutions with up to " + std::to_string(cardinality) +
                              " of " + std::to_string(n) +
                              " elements; mutual information may decrease beyond |V|/2");
  }

  const std::vector<double> singletons = instance.objective->singleton_values(config.execution);
  result.oracle_calls = n;
  // Elements that break a constraint on their own belong to no feasible set;
  // they are left out of d, the anchors and every scan.
  std::vector<char> admissible(n, 0);
  for (std::size_t e = 0; e < n; ++e) {
    admissible[e] = feasible(instance.constraints, instance.ground, DeploymentSet({e})) ? 1 : 0;
    if (admissible[e]) result.max_singleton = std::max(result.max_singleton, singletons[e]);
  }
  const double d = result.max_singleton;

  // With no constraints at all the sweep anchors on d itself.
  const double groups = static_cast<double>(std::max<std::size_t>(1, instance.constraints.p() + instance.constraints.l()));
  std::vector<double> rhos;
  const bool degenerate = !(d > 0.0);
  if (degenerate) {
    rhos.push_back(0.0);
  } else {
    const double upper = 2.0 * d * static_cast<double>(n) / groups;
    for (std::size_t j = 0;; ++j) {
      const double rho = d / groups * std::pow(1.0 + config.eta, static_cast<double>(j));
      if (rho > upper * (1.0 + kScheduleSlack)) break;
      rhos.push_back(rho);
    }
  }

  const RhoSweep sweep(instance, config, singletons, admissible);
  std::vector<RhoOutcome> outcomes(rhos.size());
  const auto count = static_cast<long>(rhos.size());
  if (config.execution == Execution::kParallel) {
    std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 1)
    for (long j = 0; j < count; ++j) {
      try {
        outcomes[j] = sweep.run(rhos[j], degenerate);
      } catch (...) {
#pragma omp critical(intermit_solver_failure)
        if (!failure) failure = std::current_exception();
      }
    }
    if (failure) std::rethrow_exception(failure);
  } else {
    for (long j = 0; j < count; ++j) outcomes[j] = sweep.run(rhos[j], degenerate);
  }

  for (RhoOutcome& o : outcomes) {
    result.oracle_calls += o.trace.oracle_calls;
    for (Candidate& c : o.candidates) result.pool.push_back(std::move(c));
    result.trace.push_back(std::move(o.trace));
  }
  // Lowest pool position wins ties.
  std::size_t best = result.pool.size();
  for (std::size_t c = 0; c < result.pool.size(); ++c) {
    if (best == result.pool.size() || result.pool[c].value > result.pool[best].value) best = c;
  }
  if (best < result.pool.size()) {
    result.best = result.pool[best].set;
    result.value = result.pool[best].value;
    result.kind = result.pool[best].kind;
  }
  result.best.cached_value = result.value;
  result.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return result;
}

double optimality_bound(std::size_t p, std::size_t l, double eta) {
  if (!(eta > 0.0 && eta <= 1.0)) throw InvalidInput("eta must lie in (0, 1]");
  return 1.0 / ((1.0 + eta) * static_cast<double>(p + 2 * l + 1));
}

std::uint64_t count_oracle_calls(const SolverResult& result) { return result.oracle_calls; }

double oracle_call_envelope(std::size_t ground_size, double eta) {
  const double n = static_cast<double>(ground_size);
  const double lg = std::log(n / eta);
  return n / (eta * eta) * lg * lg;
}

const char* kind_name(CandidateKind kind) {
  switch (kind) {
    case CandidateKind::kFinal: return "final";
    case CandidateKind::kPrefix: return "prefix";
    case CandidateKind::kSingleton: return "singleton";
  }
  return "?";
}

}  // namespace intermit
