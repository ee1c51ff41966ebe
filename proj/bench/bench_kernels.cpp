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

// Serial reference against the OpenMP path for each parallel kernel. The
// benchmark argument selects the path: 0 serial, 1 parallel.

#include <benchmark/benchmark.h>

#include <boost/random/uniform_real_distribution.hpp>

#include "intermit/constraints.hpp"
#include "intermit/envsim.hpp"
#include "intermit/solver.hpp"
#include "intermit/stgp.hpp"

using namespace intermit;

namespace {

Execution path(const benchmark::State& state) {
  return state.range(0) == 0 ? Execution::kSerial : Execution::kParallel;
}

std::vector<SpaceTime> random_points(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  boost::random::uniform_real_distribution<double> xy(0.0, 200.0), t(0.0, 8.0);
  std::vector<SpaceTime> out(n);
  for (SpaceTime& p : out) p = {xy(rng), xy(rng), t(rng)};
  return out;
}

ProblemInstance bench_instance(int P, int Q, int R, int T) {
  std::vector<RobotSpec> robots(static_cast<std::size_t>(R));
  for (int r = 0; r < R; ++r) {
    robots[static_cast<std::size_t>(r)].id = r + 1;
    robots[static_cast<std::size_t>(r)].cost_weight = 0.2 + 0.15 * r;
  }
  GroundSet ground = build_ground_set({P, Q, 200, 200}, T, robots);
  TrainingSet train;
  const auto probes = random_points(40, 3);
  for (const SpaceTime& p : probes) train.add(p, std::sin(p.x / 40) + std::cos(p.y / 60));
  ConstraintSystem sys{{MatroidSpec::per_time_count(std::vector<int>(static_cast<std::size_t>(T), R)),
                        MatroidSpec::active_times(2)},
                       {{KnapsackVariant::X2, 235.0}}};
  return make_problem(std::move(ground), GpModel(KernelParams{}, std::move(train)), std::move(sys));
}

void BM_CrossCovariance(benchmark::State& state) {
  const auto a = random_points(400, 1);
  const auto b = random_points(400, 2);
  const KernelParams params;
  for (auto _ : state) benchmark::DoNotOptimize(cross_covariance(a, b, params, path(state)));
}
BENCHMARK(BM_CrossCovariance)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_SingletonValues(benchmark::State& state) {
  const auto inst = bench_instance(5, 5, 3, 6);
  for (auto _ : state) benchmark::DoNotOptimize(inst.objective->singleton_values(path(state)));
}
BENCHMARK(BM_SingletonValues)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_ThresholdGreedy(benchmark::State& state) {
  const auto inst = bench_instance(4, 4, 3, 6);
  for (auto _ : state) benchmark::DoNotOptimize(threshold_greedy(inst, {0.1, path(state)}));
}
BENCHMARK(BM_ThresholdGreedy)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_MatroidVerifier(benchmark::State& state) {
  std::vector<RobotSpec> robots(2);
  robots[1].id = 2;
  const GroundSet ground = build_ground_set({2, 1, 200, 200}, 3, robots);
  const MatroidSpec spec = MatroidSpec::robot_time_count({1, 2, 1, 2, 1, 1});
  for (auto _ : state) benchmark::DoNotOptimize(verify_matroid_axioms(spec, ground, kDefaultAxiomCap, path(state)));
}
BENCHMARK(BM_MatroidVerifier)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
