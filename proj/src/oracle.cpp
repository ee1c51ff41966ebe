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

#include "intermit/oracle.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <numeric>
#include <vector>

namespace intermit {

namespace {

using Clock = std::chrono::steady_clock;

// Depth-first search over feasible sets. Gains come from forward
// substitution against the Cholesky factors of Sigma_SS and Lambda_SS, as in
// IncrementalMi, but each candidate keeps its partial solution per depth, so
// pushing one element costs O(|S|) per remaining candidate instead of
// O(|S|^2).
class Enumerator {
 public:
  Enumerator(const ProblemInstance& instance, const EnumerationBudget& budget,
             std::size_t max_size)
      : instance_(instance),
        budget_(budget),
        max_size_(max_size),
        cov_(instance.objective->covariance()),
        prec_(instance.objective->precision()),
        tracker_(instance.constraints, instance.ground),
        started_(Clock::now()) {
    const std::size_t n = instance.ground.size();
    const std::size_t depth = max_size + 1;
    ycov_.assign(depth, std::vector<double>(n, 0.0));
    yprec_.assign(depth, std::vector<double>(n, 0.0));
    sscov_.assign(depth + 1, std::vector<double>(n, 0.0));
    ssprec_.assign(depth + 1, std::vector<double>(n, 0.0));
  }

  void seed(const DeploymentSet& incumbent) {
    result_.best = incumbent;
    result_.value = instance_.objective->value(incumbent);
  }

  OracleResult run() {
    std::vector<std::size_t> roots;
    for (std::size_t e = 0; e < instance_.ground.size(); ++e) {
      if (tracker_.can_add(e)) roots.push_back(e);
    }
    visit(roots, 0.0);
    result_.seconds = elapsed();
    result_.best.cached_value = result_.value;
    return result_;
  }

 private:
  double elapsed() const { return std::chrono::duration<double>(Clock::now() - started_).count(); }

  void check_budget() {
    const bool over_count = result_.visited > budget_.max_visited;
    const bool over_time = budget_.max_seconds > 0.0 && (result_.visited & 0xFFF) == 0 &&
                           elapsed() > budget_.max_seconds;
    if (!over_count && !over_time) return;
    OracleResult partial = result_;
    partial.complete = false;
    partial.seconds = elapsed();
    throw BudgetExceeded(over_count ? "enumeration exceeded " + std::to_string(budget_.max_visited) +
                                          " visited sets"
                                    : "enumeration exceeded the wall-time budget",
                         std::move(partial));
  }

  // M({e} | S) from the cached sums of squares at depth |S|.
  double gain(std::size_t e) const {
    const std::size_t k = members_.size();
    const auto i = static_cast<Eigen::Index>(e);
    const double given_set = cov_(i, i) - sscov_[k][e];
    const double given_rest_prec = prec_(i, i) - ssprec_[k][e];
    if (!(given_set > 0.0) || !(given_rest_prec > 0.0)) {
      throw NumericalError("nonpositive conditional variance for element " + std::to_string(e));
    }
    return 0.5 * std::log(given_set * given_rest_prec);
  }

  // Appends `s` at depth k and extends the partial solutions of `targets`.
  void push(std::size_t s, std::span<const std::size_t> targets) {
    const std::size_t k = members_.size();
    if (k + 1 >= sscov_.size()) throw NumericalError("search deeper than the cardinality bound");
    const auto si = static_cast<Eigen::Index>(s);
    const double dcov = std::sqrt(cov_(si, si) - sscov_[k][s]);
    const double dprec = std::sqrt(prec_(si, si) - ssprec_[k][s]);
    for (std::size_t e : targets) {
      const auto ei = static_cast<Eigen::Index>(e);
      double yc = cov_(si, ei);
      double yp = prec_(si, ei);
      for (std::size_t j = 0; j < k; ++j) {
        yc -= ycov_[j][s] * ycov_[j][e];
        yp -= yprec_[j][s] * yprec_[j][e];
      }
      yc /= dcov;
      yp /= dprec;
      ycov_[k][e] = yc;
      yprec_[k][e] = yp;
      sscov_[k + 1][e] = sscov_[k][e] + yc * yc;
      ssprec_[k + 1][e] = ssprec_[k][e] + yp * yp;
    }
    members_.push_back(s);
  }

  double top_gain_sum(const std::vector<double>& gains, std::size_t room) {
    scratch_.assign(gains.begin(), gains.end());
    if (room < scratch_.size()) {
      std::nth_element(scratch_.begin(), scratch_.begin() + static_cast<std::ptrdiff_t>(room),
                       scratch_.end(), std::greater<>());
      scratch_.resize(room);
    }
    double sum = 0.0;
    for (double g : scratch_) sum += std::max(0.0, g);
    return sum;
  }

  void visit(std::vector<std::size_t>& candidates, double here) {
    ++result_.visited;
    check_budget();
    if (here > result_.value) {
      result_.value = here;
      result_.best = DeploymentSet(members_);
    }
    if (candidates.empty()) return;

    std::vector<double> gains(candidates.size());
    for (std::size_t c = 0; c < candidates.size(); ++c) gains[c] = gain(candidates[c]);
    const std::size_t room = max_size_ > members_.size() ? max_size_ - members_.size() : 0;
    std::vector<double> suffix;
    if (budget_.bound_pruning) {
      // Cheap bound first: at most `room` more elements, each adding at most
      // its current gain.
      if (here + top_gain_sum(gains, room) <= result_.value) return;
      if (here + tracker_.extension_upper_bound(candidates, gains) <= result_.value) return;

      // Explore high-gain branches first so the incumbent improves early.
      std::vector<std::size_t> order(candidates.size());
      std::iota(order.begin(), order.end(), std::size_t{0});
      std::stable_sort(order.begin(), order.end(),
                       [&](std::size_t a, std::size_t b) { return gains[a] > gains[b]; });
      std::vector<std::size_t> sorted(candidates.size());
      std::vector<double> sorted_gains(candidates.size());
      for (std::size_t k = 0; k < order.size(); ++k) {
        sorted[k] = candidates[order[k]];
        sorted_gains[k] = gains[order[k]];
      }
      candidates.swap(sorted);
      gains.swap(sorted_gains);

      // With gains sorted, the best a child from position k on can add is
      // the sum of the next `room` gains.
      suffix.assign(candidates.size() + 1, 0.0);
      for (std::size_t k = candidates.size(); k-- > 0;) {
        suffix[k] = suffix[k + 1] + std::max(0.0, gains[k]);
      }
    }

    std::vector<std::size_t> next;
    for (std::size_t k = 0; k < candidates.size(); ++k) {
      if (budget_.bound_pruning) {
        const std::size_t stop = std::min(candidates.size(), k + room);
        if (here + (suffix[k] - suffix[stop]) <= result_.value) break;
      }
      const std::size_t e = candidates[k];
      tracker_.add(e);
      next.clear();
      for (std::size_t j = k + 1; j < candidates.size(); ++j) {
        if (tracker_.can_add(candidates[j])) next.push_back(candidates[j]);
      }
      std::vector<std::size_t> child = next;
      push(e, child);
      visit(child, here + gains[k]);
      members_.pop_back();
      tracker_.remove(e);
    }
  }

  const ProblemInstance& instance_;
  const EnumerationBudget& budget_;
  std::size_t max_size_;
  const Eigen::MatrixXd& cov_;
  const Eigen::MatrixXd& prec_;
  FeasibilityTracker tracker_;
  Clock::time_point started_;
  OracleResult result_;
  std::vector<std::size_t> members_;
  // Row j holds the j-th forward-substitution component per element; row k
  // of the sums is the squared norm over the first k components.
  std::vector<std::vector<double>> ycov_;
  std::vector<std::vector<double>> yprec_;
  std::vector<std::vector<double>> sscov_;
  std::vector<std::vector<double>> ssprec_;
  std::vector<double> scratch_;
};

void walk(FeasibilityTracker& tracker, std::vector<std::size_t>& members,
          std::span<const std::size_t> candidates,
          const std::function<void(std::span<const std::size_t>)>& visit) {
  visit(members);
  std::vector<std::size_t> next;
  for (std::size_t k = 0; k < candidates.size(); ++k) {
    const std::size_t e = candidates[k];
    tracker.add(e);
    members.push_back(e);
    next.clear();
    for (std::size_t j = k + 1; j < candidates.size(); ++j) {
      if (tracker.can_add(candidates[j])) next.push_back(candidates[j]);
    }
    const std::vector<std::size_t> child = next;
    walk(tracker, members, child, visit);
    members.pop_back();
    tracker.remove(e);
  }
}

boost::multiprecision::cpp_int binomial(long long n, long long k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  boost::multiprecision::cpp_int out = 1;
  for (long long j = 1; j <= k; ++j) {
    out *= n - k + j;
    out /= j;
  }
  return out;
}

}  // namespace

void EnumerationBudget::validate() const {
  if (max_visited == 0 || max_ground == 0 || max_cardinality == 0 || max_seconds < 0.0) {
    throw InvalidInput("enumeration budget caps must be positive");
  }
}

void for_each_feasible(const ConstraintSystem& system, const GroundSet& ground,
                       const std::function<void(std::span<const std::size_t>)>& visit) {
  FeasibilityTracker tracker(system, ground);
  std::vector<std::size_t> roots;
  for (std::size_t e = 0; e < ground.size(); ++e) {
    if (tracker.can_add(e)) roots.push_back(e);
  }
  std::vector<std::size_t> members;
  walk(tracker, members, roots, visit);
}

OracleResult enumerate_optimal(const ProblemInstance& instance, const EnumerationBudget& budget,
                               const std::optional<DeploymentSet>& incumbent) {
  budget.validate();
  if (!instance.objective) throw InvalidInput("problem instance has no objective");
  const std::size_t n = instance.ground.size();
  if (n > budget.max_ground) {
    throw BudgetExceeded("ground set of size " + std::to_string(n) + " exceeds the enumeration cap " +
                             std::to_string(budget.max_ground),
                         OracleResult{{}, 0.0, 0, 0.0, false});
  }
  const std::size_t card = max_cardinality_bound(instance.constraints, instance.ground);
  if (card > budget.max_cardinality) {
    throw BudgetExceeded("constraints admit solutions of size " + std::to_string(card) +
                             ", above the enumeration cap " + std::to_string(budget.max_cardinality),
                         OracleResult{{}, 0.0, 0, 0.0, false});
  }
  Enumerator enumerator(instance, budget, card);
  if (incumbent) {
    incumbent->validate(instance.ground);
    if (!feasible(instance.constraints, instance.ground, *incumbent)) {
      throw InvalidInput("warm-start set is not feasible");
    }
    enumerator.seed(*incumbent);
  }
  return enumerator.run();
}

boost::multiprecision::cpp_int count_combinations(long long T, long long L, long long R,
                                                  long long N) {
  if (T < 0 || L < 0 || R < 0 || N < 0) throw InvalidInput("counting arguments must be >= 0");
  if (L > T) throw InvalidInput("non-zero deployment limit L cannot exceed T");
  const boost::multiprecision::cpp_int per_time = binomial(R * (N + 1), R);
  boost::multiprecision::cpp_int total = 0;
  boost::multiprecision::cpp_int power = 1;
  for (long long l = 1; l <= L; ++l) {
    power *= per_time;
    total += binomial(T, l) * power;
  }
  return total;
}

double optimality_ratio(const SolverResult& greedy, const OracleResult& exact) {
  constexpr double kSlack = 1e-9;
  if (!exact.complete) throw InvalidInput("optimality ratio needs a complete oracle result");
  if (exact.value <= 0.0) {
    if (greedy.value <= 0.0) return 1.0;
    throw NumericalError("oracle optimum is zero while the greedy value is positive");
  }
  const double ratio = greedy.value / exact.value;
  if (ratio > 1.0 + 1e-6) {
    throw NumericalError("greedy value exceeds the oracle optimum (ratio " + std::to_string(ratio) + ")");
  }
  return std::clamp(ratio, 0.0, 1.0 + kSlack);
}

}  // namespace intermit
