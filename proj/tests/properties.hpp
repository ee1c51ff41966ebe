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

// Randomized checks of the mutual-information objective shared by the unit
// tests and the acceptance runner.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "support.hpp"

namespace testsupport {

struct PropertyStats {
  std::size_t checks = 0;
  /// Largest amount by which the inequality or identity was broken.
  double worst = 0.0;
};

/// Diminishing returns: M(A+e) - M(A) >= M(B+e) - M(B) for A subset B, e outside B.
inline PropertyStats check_submodular(const intermit::MiObjective& f, intermit::Rng& rng,
                                      std::size_t triples) {
  PropertyStats s;
  const std::size_t n = f.size();
  for (std::size_t attempt = 0; s.checks < triples && attempt < 20 * triples; ++attempt) {
    const auto b = random_subset(rng, n, uniform(rng, 0.1, 0.8));
    if (b.size() >= n) continue;
    std::vector<std::size_t> a;
    for (std::size_t x : b) {
      if (uniform(rng, 0, 1) < 0.5) a.push_back(x);
    }
    std::vector<std::size_t> outside;
    for (std::size_t e = 0; e < n; ++e) {
      if (!std::binary_search(b.begin(), b.end(), e)) outside.push_back(e);
    }
    const std::size_t e = outside[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<int>(outside.size()) - 1))];
    const intermit::DeploymentSet A(a), B(b);
    const double da = f.value(A.with(e)) - f.value(A);
    const double db = f.value(B.with(e)) - f.value(B);
    s.worst = std::max(s.worst, db - da);
    ++s.checks;
  }
  return s;
}

/// Greedy chain by largest marginal gain up to |V|/2; reports the largest drop.
inline PropertyStats check_greedy_chain(const intermit::MiObjective& f) {
  PropertyStats s;
  const std::size_t n = f.size();
  intermit::IncrementalMi inc(f, n);
  std::vector<bool> used(n, false);
  double prev = 0.0;
  while (inc.size() < n / 2) {
    std::size_t best = n;
    double best_gain = -1e300;
    for (std::size_t e = 0; e < n; ++e) {
      if (used[e]) continue;
      const double g = inc.gain(e);
      if (g > best_gain) {
        best_gain = g;
        best = e;
      }
    }
    used[best] = true;
    inc.push(best);
    const double now = f.value(inc.to_set());
    s.worst = std::max(s.worst, prev - now);
    prev = now;
    ++s.checks;
  }
  return s;
}

/// |M(D) - M(V \ D)| over random D.
inline PropertyStats check_symmetry(const intermit::MiObjective& f, intermit::Rng& rng,
                                    std::size_t samples) {
  PropertyStats s;
  for (std::size_t k = 0; k < samples; ++k) {
    const intermit::DeploymentSet d(random_subset(rng, f.size(), uniform(rng, 0, 1)));
    s.worst = std::max(s.worst, std::abs(f.value(d) - f.value(d.complement(f.size()))));
    ++s.checks;
  }
  return s;
}

/// Incremental gains against direct differences M(S+e) - M(S).
inline PropertyStats check_incremental_gains(const intermit::MiObjective& f, intermit::Rng& rng,
                                             std::size_t samples) {
  PropertyStats s;
  const std::size_t n = f.size();
  for (std::size_t k = 0; k < samples; ++k) {
    const auto members = random_subset(rng, n, uniform(rng, 0, 0.7));
    if (members.size() >= n) continue;
    intermit::IncrementalMi inc(f);
    for (std::size_t x : members) inc.push(x);
    const intermit::DeploymentSet set(members);
    for (std::size_t e = 0; e < n; ++e) {
      if (set.contains(e)) continue;
      const double direct = f.value(set.with(e)) - f.value(set);
      s.worst = std::max(s.worst, std::abs(inc.gain(e) - direct));
      s.worst = std::max(s.worst, std::abs(f.marginal_gain(e, set) - direct));
      ++s.checks;
    }
  }
  return s;
}

}  // namespace testsupport
