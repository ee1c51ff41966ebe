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

#include "intermit/constraints.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <sstream>

#include "intermit/error.hpp"

namespace intermit {

namespace {

bool is_status(MatroidVariant v) { return v == MatroidVariant::I22 || v == MatroidVariant::I32; }

bool is_robot_time(MatroidVariant v) {
  return v == MatroidVariant::I31 || v == MatroidVariant::I32 || v == MatroidVariant::I33;
}

std::size_t expected_limits(MatroidVariant v, const GroundSet& g) {
  const auto T = static_cast<std::size_t>(g.horizon());
  const auto R = static_cast<std::size_t>(g.robot_count());
  switch (v) {
    case MatroidVariant::I21:
    case MatroidVariant::I22:
      return T;
    case MatroidVariant::I23:
      return 1;
    case MatroidVariant::I31:
    case MatroidVariant::I32:
      return R * T;
    case MatroidVariant::I33:
      return R;
  }
  return 0;
}

// Counter slot of an element: time index, or (robot, time) index.
std::size_t count_key(MatroidVariant v, const GroundElement& e, int horizon) {
  if (is_robot_time(v)) return static_cast<std::size_t>(e.robot - 1) * horizon + (e.time - 1);
  return static_cast<std::size_t>(e.time - 1);
}

double top_k_sum(std::vector<double>& w, long k) {
  if (k <= 0) return 0.0;
  if (static_cast<std::size_t>(k) >= w.size()) return std::accumulate(w.begin(), w.end(), 0.0);
  std::nth_element(w.begin(), w.begin() + (k - 1), w.end(), std::greater<>());
  return std::accumulate(w.begin(), w.begin() + k, 0.0);
}

struct Item {
  double weight;
  double cost;
};

// LP relaxation of a single 0/1 knapsack.
double fractional_knapsack(std::vector<Item>& items, double capacity) {
  capacity = std::max(0.0, capacity);
  std::sort(items.begin(), items.end(), [](const Item& a, const Item& b) {
    return a.weight * b.cost > b.weight * a.cost;  // density order, zero cost first
  });
  double total = 0.0;
  for (const Item& it : items) {
    if (it.cost <= capacity) {
      total += it.weight;
      capacity -= it.cost;
    } else {
      total += it.weight * (capacity / it.cost);
      break;
    }
  }
  return total;
}

}  // namespace

MatroidSpec MatroidSpec::per_time_count(std::vector<int> limits) {
  return {MatroidVariant::I21, std::move(limits)};
}
MatroidSpec MatroidSpec::per_time_status(std::vector<int> statuses) {
  return {MatroidVariant::I22, std::move(statuses)};
}
MatroidSpec MatroidSpec::active_times(int limit) { return {MatroidVariant::I23, {limit}}; }
MatroidSpec MatroidSpec::robot_time_count(std::vector<int> limits) {
  return {MatroidVariant::I31, std::move(limits)};
}
MatroidSpec MatroidSpec::robot_time_status(std::vector<int> statuses) {
  return {MatroidVariant::I32, std::move(statuses)};
}
MatroidSpec MatroidSpec::robot_active_times(std::vector<int> limits) {
  return {MatroidVariant::I33, std::move(limits)};
}

void MatroidSpec::validate(const GroundSet& ground) const {
  const std::size_t expected = expected_limits(variant, ground);
  if (limits.size() != expected) {
    throw InvalidInput(std::string(variant_name(variant)) + " needs " + std::to_string(expected) +
                       " limits, got " + std::to_string(limits.size()));
  }
  for (int v : limits) {
    if (v < 0) throw InvalidInput(std::string(variant_name(variant)) + " limits must be >= 0");
    if (is_status(variant) && v > 1) {
      throw InvalidInput(std::string(variant_name(variant)) + " status limits must be 0 or 1");
    }
  }
}

void KnapsackSpec::validate() const {
  if (!(budget >= 0.0)) throw InvalidInput("knapsack budget must be >= 0");
}

void ConstraintSystem::validate(const GroundSet& ground) const {
  for (const auto& m : matroids) m.validate(ground);
  for (const auto& k : knapsacks) k.validate();
}

const char* variant_name(MatroidVariant variant) {
  switch (variant) {
    case MatroidVariant::I21: return "I21";
    case MatroidVariant::I22: return "I22";
    case MatroidVariant::I23: return "I23";
    case MatroidVariant::I31: return "I31";
    case MatroidVariant::I32: return "I32";
    case MatroidVariant::I33: return "I33";
  }
  return "?";
}

const char* variant_name(KnapsackVariant variant) {
  switch (variant) {
    case KnapsackVariant::X1: return "X1";
    case KnapsackVariant::X2: return "X2";
    case KnapsackVariant::X3: return "X3";
  }
  return "?";
}

MatroidVariant parse_matroid_variant(const std::string& name) {
  for (auto v : {MatroidVariant::I21, MatroidVariant::I22, MatroidVariant::I23, MatroidVariant::I31,
                 MatroidVariant::I32, MatroidVariant::I33}) {
    if (name == variant_name(v)) return v;
  }
  throw InvalidInput("unknown matroid variant '" + name + "'");
}

KnapsackVariant parse_knapsack_variant(const std::string& name) {
  for (auto v : {KnapsackVariant::X1, KnapsackVariant::X2, KnapsackVariant::X3}) {
    if (name == variant_name(v)) return v;
  }
  throw InvalidInput("unknown knapsack variant '" + name + "'");
}

bool fits_budget(double total, double budget) {
  return total <= budget + 1e-9 * std::max(1.0, std::abs(budget));
}

bool is_independent(const MatroidSpec& spec, const GroundSet& ground, const DeploymentSet& set) {
  const int T = ground.horizon();
  const int R = ground.robot_count();
  std::vector<int> count(is_robot_time(spec.variant) ? static_cast<std::size_t>(R) * T : T, 0);
  for (std::size_t idx : set) ++count[count_key(spec.variant, ground[idx], T)];

  switch (spec.variant) {
    case MatroidVariant::I21:
    case MatroidVariant::I31:
      for (std::size_t k = 0; k < count.size(); ++k) {
        if (count[k] > spec.limits[k]) return false;
      }
      return true;
    case MatroidVariant::I22:
    case MatroidVariant::I32:
      for (std::size_t k = 0; k < count.size(); ++k) {
        if ((count[k] > 0 ? 1 : 0) > spec.limits[k]) return false;
      }
      return true;
    case MatroidVariant::I23:
      return std::count_if(count.begin(), count.end(), [](int c) { return c > 0; }) <=
             spec.limits[0];
    case MatroidVariant::I33:
      for (int r = 0; r < R; ++r) {
        const auto begin = count.begin() + static_cast<std::ptrdiff_t>(r) * T;
        if (std::count_if(begin, begin + T, [](int c) { return c > 0; }) > spec.limits[r]) {
          return false;
        }
      }
      return true;
  }
  return false;
}

bool within_budget(const KnapsackSpec& spec, const GroundSet& ground, const DeploymentSet& set) {
  std::vector<double> spent;
  switch (spec.variant) {
    case KnapsackVariant::X1: spent.assign(ground.robot_count(), 0.0); break;
    case KnapsackVariant::X2: spent.assign(ground.horizon(), 0.0); break;
    case KnapsackVariant::X3: spent.assign(ground.location_count(), 0.0); break;
  }
  for (std::size_t idx : set) {
    const GroundElement& e = ground[idx];
    const int key = spec.variant == KnapsackVariant::X1   ? e.robot
                    : spec.variant == KnapsackVariant::X2 ? e.time
                                                          : e.location;
    spent[key - 1] += e.cost;
  }
  return std::all_of(spent.begin(), spent.end(), [&](double s) { return fits_budget(s, spec.budget); });
}

bool feasible(const ConstraintSystem& system, const GroundSet& ground, const DeploymentSet& set) {
  for (const auto& m : system.matroids) {
    if (!is_independent(m, ground, set)) return false;
  }
  for (const auto& k : system.knapsacks) {
    if (!within_budget(k, ground, set)) return false;
  }
  return true;
}

std::size_t max_cardinality_bound(const ConstraintSystem& system, const GroundSet& ground) {
  const auto T = static_cast<std::size_t>(ground.horizon());
  const auto R = static_cast<std::size_t>(ground.robot_count());
  const auto N = static_cast<std::size_t>(ground.location_count());

  // Largest |S| per (robot, time) cell, then per time step, under the
  // slice-local limits; the active-time limits then pick the best steps.
  std::vector<std::size_t> cell(R * T, N);
  std::vector<std::size_t> per_time(T, N * R);
  for (const auto& m : system.matroids) {
    const auto lim = [&](std::size_t k) { return static_cast<std::size_t>(m.limits[k]); };
    switch (m.variant) {
      case MatroidVariant::I31:
        for (std::size_t k = 0; k < R * T; ++k) cell[k] = std::min(cell[k], lim(k));
        break;
      case MatroidVariant::I32:
        for (std::size_t k = 0; k < R * T; ++k) {
          if (lim(k) == 0) cell[k] = 0;
        }
        break;
      default:
        break;
    }
  }
  for (std::size_t t = 0; t < T; ++t) {
    std::size_t sum = 0;
    for (std::size_t r = 0; r < R; ++r) sum += cell[r * T + t];
    per_time[t] = std::min(per_time[t], sum);
  }
  for (const auto& m : system.matroids) {
    const auto lim = [&](std::size_t k) { return static_cast<std::size_t>(m.limits[k]); };
    if (m.variant == MatroidVariant::I21) {
      for (std::size_t t = 0; t < T; ++t) per_time[t] = std::min(per_time[t], lim(t));
    } else if (m.variant == MatroidVariant::I22) {
      for (std::size_t t = 0; t < T; ++t) {
        if (lim(t) == 0) per_time[t] = 0;
      }
    }
  }

  const auto top_sum = [](std::vector<std::size_t> values, std::size_t k) {
    std::sort(values.begin(), values.end(), std::greater<>());
    values.resize(std::min(k, values.size()));
    return std::accumulate(values.begin(), values.end(), std::size_t{0});
  };
  std::size_t bound = std::accumulate(per_time.begin(), per_time.end(), std::size_t{0});
  for (const auto& m : system.matroids) {
    if (m.variant == MatroidVariant::I23) {
      bound = std::min(bound, top_sum(per_time, static_cast<std::size_t>(m.limits[0])));
    } else if (m.variant == MatroidVariant::I33) {
      std::size_t b = 0;
      for (std::size_t r = 0; r < R; ++r) {
        std::vector<std::size_t> row(cell.begin() + static_cast<std::ptrdiff_t>(r * T),
                                     cell.begin() + static_cast<std::ptrdiff_t>((r + 1) * T));
        b += top_sum(std::move(row), static_cast<std::size_t>(m.limits[r]));
      }
      bound = std::min(bound, b);
    }
  }
  return std::min(bound, ground.size());
}

FeasibilityTracker::FeasibilityTracker(const ConstraintSystem& system, const GroundSet& ground)
    : system_(&system), ground_(&ground) {
  system.validate(ground);
  const auto T = static_cast<std::size_t>(ground.horizon());
  const auto R = static_cast<std::size_t>(ground.robot_count());
  for (const auto& m : system.matroids) {
    MatroidState s{&m, {}, {}};
    s.count.assign(is_robot_time(m.variant) ? R * T : T, 0);
    if (m.variant == MatroidVariant::I23) s.active.assign(1, 0);
    if (m.variant == MatroidVariant::I33) s.active.assign(R, 0);
    matroids_.push_back(std::move(s));
  }
  for (const auto& k : system.knapsacks) {
    KnapsackState s{&k, {}};
    switch (k.variant) {
      case KnapsackVariant::X1: s.spent.assign(R, 0.0); break;
      case KnapsackVariant::X2: s.spent.assign(T, 0.0); break;
      case KnapsackVariant::X3: s.spent.assign(ground.location_count(), 0.0); break;
    }
    knapsacks_.push_back(std::move(s));
  }
}

std::size_t FeasibilityTracker::knapsack_group(const KnapsackState& k, std::size_t element) const {
  const GroundElement& e = (*ground_)[element];
  switch (k.spec->variant) {
    case KnapsackVariant::X1: return static_cast<std::size_t>(e.robot - 1);
    case KnapsackVariant::X2: return static_cast<std::size_t>(e.time - 1);
    case KnapsackVariant::X3: return static_cast<std::size_t>(e.location - 1);
  }
  return 0;
}

bool FeasibilityTracker::matroids_allow(std::size_t element) const {
  const GroundElement& e = (*ground_)[element];
  const int T = ground_->horizon();
  for (const MatroidState& m : matroids_) {
    const std::size_t key = count_key(m.spec->variant, e, T);
    const auto& lim = m.spec->limits;
    switch (m.spec->variant) {
      case MatroidVariant::I21:
      case MatroidVariant::I31:
        if (m.count[key] + 1 > lim[key]) return false;
        break;
      case MatroidVariant::I22:
      case MatroidVariant::I32:
        if (lim[key] < 1) return false;
        break;
      case MatroidVariant::I23:
        if (m.count[key] == 0 && m.active[0] + 1 > lim[0]) return false;
        break;
      case MatroidVariant::I33:
        if (m.count[key] == 0 && m.active[e.robot - 1] + 1 > lim[e.robot - 1]) return false;
        break;
    }
  }
  return true;
}

bool FeasibilityTracker::knapsacks_allow(std::size_t element) const {
  const double cost = (*ground_)[element].cost;
  for (const KnapsackState& k : knapsacks_) {
    if (!fits_budget(k.spent[knapsack_group(k, element)] + cost, k.spec->budget)) return false;
  }
  return true;
}

void FeasibilityTracker::add(std::size_t element) {
  const GroundElement& e = (*ground_)[element];
  for (MatroidState& m : matroids_) {
    const std::size_t key = count_key(m.spec->variant, e, ground_->horizon());
    if (m.count[key]++ == 0) {
      if (m.spec->variant == MatroidVariant::I23) ++m.active[0];
      if (m.spec->variant == MatroidVariant::I33) ++m.active[e.robot - 1];
    }
  }
  for (KnapsackState& k : knapsacks_) k.spent[knapsack_group(k, element)] += e.cost;
}

void FeasibilityTracker::remove(std::size_t element) {
  const GroundElement& e = (*ground_)[element];
  for (MatroidState& m : matroids_) {
    const std::size_t key = count_key(m.spec->variant, e, ground_->horizon());
    if (m.count[key] == 0) throw InvalidInput("removing an element that was never added");
    if (--m.count[key] == 0) {
      if (m.spec->variant == MatroidVariant::I23) --m.active[0];
      if (m.spec->variant == MatroidVariant::I33) --m.active[e.robot - 1];
    }
  }
  for (KnapsackState& k : knapsacks_) k.spent[knapsack_group(k, element)] -= e.cost;
}

void FeasibilityTracker::clear() {
  for (MatroidState& m : matroids_) {
    std::fill(m.count.begin(), m.count.end(), 0);
    std::fill(m.active.begin(), m.active.end(), 0);
  }
  for (KnapsackState& k : knapsacks_) std::fill(k.spent.begin(), k.spent.end(), 0.0);
}

double FeasibilityTracker::extension_upper_bound(std::span<const std::size_t> candidates,
                                                 std::span<const double> weights) const {
  const GroundSet& g = *ground_;
  const auto T = static_cast<std::size_t>(g.horizon());
  const auto R = static_cast<std::size_t>(g.robot_count());

  std::vector<std::vector<std::size_t>> by_time(T);
  double total = 0.0;
  for (std::size_t c = 0; c < candidates.size(); ++c) {
    if (weights[c] <= 0.0) continue;
    by_time[g[candidates[c]].time - 1].push_back(c);
    total += weights[c];
  }
  const auto w = [&](std::size_t c) { return std::max(0.0, weights[c]); };

  // Per-time bound from the constraints that act inside a single time step.
  std::vector<double> slice_bound(T, 0.0);
  std::vector<bool> slice_active(T, false);
  std::vector<double> buf;
  std::vector<std::vector<double>> per_robot(R);
  std::vector<Item> items;
  for (std::size_t t = 0; t < T; ++t) {
    const auto& members = by_time[t];
    double bound = 0.0;
    for (std::size_t c : members) bound += w(c);
    for (auto& v : per_robot) v.clear();
    for (std::size_t c : members) per_robot[g[candidates[c]].robot - 1].push_back(w(c));

    for (const MatroidState& m : matroids_) {
      const auto& lim = m.spec->limits;
      switch (m.spec->variant) {
        case MatroidVariant::I21: {
          buf.clear();
          for (std::size_t c : members) buf.push_back(w(c));
          bound = std::min(bound, top_k_sum(buf, lim[t] - m.count[t]));
          if (m.count[t] > 0) slice_active[t] = true;
          break;
        }
        case MatroidVariant::I22:
          if (lim[t] < 1) bound = 0.0;
          if (m.count[t] > 0) slice_active[t] = true;
          break;
        case MatroidVariant::I23:
          if (m.count[t] > 0) slice_active[t] = true;
          break;
        case MatroidVariant::I31:
        case MatroidVariant::I32:
        case MatroidVariant::I33: {
          double b = 0.0;
          for (std::size_t r = 0; r < R; ++r) {
            const std::size_t key = r * T + t;
            auto& v = per_robot[r];
            if (m.count[key] > 0) slice_active[t] = true;
            if (m.spec->variant == MatroidVariant::I31) {
              buf = v;
              b += top_k_sum(buf, lim[key] - m.count[key]);
            } else if (m.spec->variant == MatroidVariant::I32) {
              if (lim[key] >= 1) b += std::accumulate(v.begin(), v.end(), 0.0);
            } else if (m.count[key] > 0 || m.active[r] < lim[r]) {
              b += std::accumulate(v.begin(), v.end(), 0.0);
            }
          }
          bound = std::min(bound, b);
          break;
        }
      }
    }
    for (const KnapsackState& k : knapsacks_) {
      if (k.spec->variant != KnapsackVariant::X2) continue;
      items.clear();
      for (std::size_t c : members) items.push_back({w(c), g[candidates[c]].cost});
      bound = std::min(bound, fractional_knapsack(items, k.spec->budget - k.spent[t]));
    }
    slice_bound[t] = bound;
  }

  // I23 couples time steps: active steps plus the best remaining inactive ones.
  long new_times = std::numeric_limits<long>::max();
  for (const MatroidState& m : matroids_) {
    if (m.spec->variant == MatroidVariant::I23) {
      new_times = std::min<long>(new_times, m.spec->limits[0] - m.active[0]);
    }
  }
  double combined = 0.0;
  buf.clear();
  for (std::size_t t = 0; t < T; ++t) {
    if (slice_active[t]) {
      combined += slice_bound[t];
    } else {
      buf.push_back(slice_bound[t]);
    }
  }
  combined += new_times == std::numeric_limits<long>::max()
                  ? std::accumulate(buf.begin(), buf.end(), 0.0)
                  : top_k_sum(buf, new_times);
  double best = std::min(total, combined);

  // Constraints that do not decompose by time step.
  for (const KnapsackState& k : knapsacks_) {
    if (k.spec->variant == KnapsackVariant::X2) continue;
    std::vector<std::vector<Item>> groups(k.spent.size());
    for (std::size_t c = 0; c < candidates.size(); ++c) {
      if (weights[c] > 0.0) {
        groups[knapsack_group(k, candidates[c])].push_back({w(c), g[candidates[c]].cost});
      }
    }
    double b = 0.0;
    for (std::size_t grp = 0; grp < groups.size(); ++grp) {
      if (!groups[grp].empty()) b += fractional_knapsack(groups[grp], k.spec->budget - k.spent[grp]);
    }
    best = std::min(best, b);
  }
  for (const MatroidState& m : matroids_) {
    if (m.spec->variant != MatroidVariant::I33) continue;
    std::vector<double> cell(R * T, 0.0);
    for (std::size_t c = 0; c < candidates.size(); ++c) {
      const GroundElement& e = g[candidates[c]];
      cell[static_cast<std::size_t>(e.robot - 1) * T + (e.time - 1)] += w(c);
    }
    double b = 0.0;
    for (std::size_t r = 0; r < R; ++r) {
      buf.clear();
      for (std::size_t t = 0; t < T; ++t) {
        if (m.count[r * T + t] > 0) {
          b += cell[r * T + t];
        } else {
          buf.push_back(cell[r * T + t]);
        }
      }
      b += top_k_sum(buf, m.spec->limits[r] - m.active[r]);
    }
    best = std::min(best, b);
  }
  return best;
}

std::string MatroidReport::describe() const {
  std::ostringstream out;
  if (passed) {
    out << "pass (" << independent_sets << " independent sets)";
    return out.str();
  }
  const auto list = [&](const std::vector<std::size_t>& s) {
    out << '{';
    for (std::size_t k = 0; k < s.size(); ++k) out << (k ? "," : "") << s[k];
    out << '}';
  };
  out << "fail: " << failed_axiom << " A=";
  list(set_a);
  out << " B=";
  list(set_b);
  return out.str();
}

MatroidReport verify_matroid_axioms(const IndependenceOracle& oracle, std::size_t ground_size,
                                    std::size_t cap, Execution execution) {
  if (cap > 24) throw InvalidInput("exhaustive axiom check is limited to 24 elements");
  if (ground_size > cap) {
    throw InvalidInput("ground set of size " + std::to_string(ground_size) +
                       " exceeds the exhaustive-check cap " + std::to_string(cap));
  }
  using Mask = std::uint32_t;
  const Mask full = Mask{1} << ground_size;
  const auto members = [](Mask m) {
    std::vector<std::size_t> out;
    for (std::size_t b = 0; m; ++b, m >>= 1) {
      if (m & 1u) out.push_back(b);
    }
    return out;
  };

  std::vector<char> indep(full);
  for (Mask m = 0; m < full; ++m) indep[m] = oracle(members(m)) ? 1 : 0;

  MatroidReport report;
  report.independent_sets = static_cast<std::size_t>(std::count(indep.begin(), indep.end(), 1));
  if (!indep[0]) {
    report.passed = false;
    report.failed_axiom = "empty";
    return report;
  }
  // Removing one element at a time covers every subset by induction.
  for (Mask b = 0; b < full; ++b) {
    if (!indep[b]) continue;
    for (Mask rest = b; rest; rest &= rest - 1) {
      const Mask a = b & ~(rest & (~rest + 1));
      if (!indep[a]) {
        report.passed = false;
        report.failed_axiom = "downward-closure";
        report.set_a = members(a);
        report.set_b = members(b);
        return report;
      }
    }
  }

  std::vector<std::vector<Mask>> level(ground_size + 1);
  for (Mask m = 0; m < full; ++m) {
    if (indep[m]) level[std::popcount(m)].push_back(m);
  }
  const auto exchange_fails = [&](Mask a, Mask b) {
    for (Mask diff = a & ~b; diff; diff &= diff - 1) {
      if (indep[b | (diff & (~diff + 1))]) return false;
    }
    return true;
  };
  for (std::size_t k = 1; k <= ground_size; ++k) {
    const auto& as = level[k];
    const auto& bs = level[k - 1];
    const auto n_a = static_cast<long>(as.size());
    long first_bad = n_a;
    if (execution == Execution::kParallel) {
#pragma omp parallel for schedule(dynamic, 16) reduction(min : first_bad)
      for (long ia = 0; ia < n_a; ++ia) {
        for (Mask b : bs) {
          if (exchange_fails(as[ia], b)) {
            first_bad = std::min(first_bad, ia);
            break;
          }
        }
      }
    } else {
      for (long ia = 0; ia < n_a && first_bad == n_a; ++ia) {
        for (Mask b : bs) {
          if (exchange_fails(as[ia], b)) {
            first_bad = ia;
            break;
          }
        }
      }
    }
    if (first_bad < n_a) {
      const Mask a = as[first_bad];
      for (Mask b : bs) {
        if (exchange_fails(a, b)) {
          report.passed = false;
          report.failed_axiom = "exchange";
          report.set_a = members(a);
          report.set_b = members(b);
          return report;
        }
      }
    }
  }
  return report;
}

MatroidReport verify_matroid_axioms(const MatroidSpec& spec, const GroundSet& ground,
                                    std::size_t cap, Execution execution) {
  spec.validate(ground);
  if (ground.size() > cap) {
    throw InvalidInput("ground set of size " + std::to_string(ground.size()) +
                       " exceeds the exhaustive-check cap " + std::to_string(cap));
  }
  return verify_matroid_axioms(
      [&](std::span<const std::size_t> s) {
        return is_independent(spec, ground, DeploymentSet({s.begin(), s.end()}));
      },
      ground.size(), cap, execution);
}

}  // namespace intermit
