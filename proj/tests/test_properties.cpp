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

#include "properties.hpp"

using namespace intermit;
using namespace testsupport;

namespace {

SmallSpec spec_for(Rng& rng) {
  SmallSpec s;
  s.P = uniform_int(rng, 1, 3);
  s.Q = uniform_int(rng, 1, 2);
  s.R = uniform_int(rng, 1, 2);
  s.T = uniform_int(rng, 1, 3);
  while (s.P * s.Q * s.R * s.T > 20) --s.T;
  s.train = static_cast<std::size_t>(uniform_int(rng, 0, 10));
  s.kernel.spatial_len = uniform(rng, 20, 120);
  s.kernel.temporal_len = uniform(rng, 0.5, 5);
  return s;
}

}  // namespace

TEST_CASE("mutual information is symmetric under complement") {
  Rng rng(1);
  for (std::uint64_t seed = 1; seed <= 12; ++seed) {
    const auto inst = random_instance(seed, spec_for(rng));
    const PropertyStats s = check_symmetry(*inst.objective, rng, 30);
    CHECK(s.worst <= 1e-6);
  }
}

TEST_CASE("mutual information has diminishing returns") {
  Rng rng(2);
  for (std::uint64_t seed = 1; seed <= 12; ++seed) {
    const auto inst = random_instance(seed, spec_for(rng));
    if (inst.ground.size() < 2) continue;
    const PropertyStats s = check_submodular(*inst.objective, rng, 60);
    CHECK(s.checks >= 50);
    CHECK(s.worst <= 1e-6);
  }
}

TEST_CASE("singleton values are nonnegative") {
  Rng rng(3);
  for (std::uint64_t seed = 1; seed <= 12; ++seed) {
    const auto inst = random_instance(seed, spec_for(rng));
    for (double v : inst.objective->singleton_values()) CHECK(v >= -1e-12);
  }
}

// Monotonicity up to |V|/2 does not hold in general: on this 9-element
// instance every remaining element has a negative gain once the greedy
// chain holds 4 elements.
TEST_CASE("greedy chains can decrease before half the ground set") {
  SmallSpec spec{3, 1, 1, 3, 5, {}};
  spec.kernel.spatial_len = 50;
  spec.kernel.temporal_len = 4;
  const auto inst = random_instance(5, spec);
  REQUIRE(inst.ground.size() == 9);
  const PropertyStats chain = check_greedy_chain(*inst.objective);
  CHECK(chain.checks == 4);
  CHECK(chain.worst == doctest::Approx(0.157122).epsilon(1e-4));
}

TEST_CASE("incremental and direct marginal gains agree") {
  Rng rng(4);
  for (std::uint64_t seed = 1; seed <= 12; ++seed) {
    const auto inst = random_instance(seed, spec_for(rng));
    CHECK(check_incremental_gains(*inst.objective, rng, 5).worst <= 1e-8);
  }
}
