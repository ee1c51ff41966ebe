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

#include <boost/random/normal_distribution.hpp>
#include <cmath>
#include <numbers>

#include "intermit/error.hpp"
#include "intermit/stgp.hpp"
#include "support.hpp"

using namespace intermit;
using testsupport::Matrix;

TEST_CASE("SE kernel values") {
  CHECK(kernel_se(0.0, 2.5, 7.0) == 2.5);
  CHECK(kernel_se(1e6, 2.5, 7.0) == doctest::Approx(0.0));
  CHECK(kernel_se(3.0, 1.0, 3.0) == doctest::Approx(std::exp(-0.5)).epsilon(1e-14));
  CHECK_THROWS_AS(kernel_se(1.0, 0.0, 1.0), InvalidInput);
  CHECK_THROWS_AS(kernel_se(1.0, 1.0, -1.0), InvalidInput);
}

TEST_CASE("composite kernel adds the nugget only at identical inputs") {
  const KernelParams p{2.0, 10.0, 3.0, 2.0, 0.25};
  const SpaceTime a{1.0, 2.0, 3.0};
  CHECK(composite_kernel(a, a, p) == doctest::Approx(2.0 * 3.0 + 0.25));
  CHECK(composite_kernel(a, {1.0, 2.0, 3e6}, p) == doctest::Approx(0.0));
  const KernelParams unit{1.0, 5.0, 1.0, 4.0, 0.1};
  CHECK(composite_kernel({0, 0, 0}, {3, 4, 4}, unit) == doctest::Approx(std::exp(-1.0)).epsilon(1e-14));
  CHECK(product_kernel(a, a, p) == doctest::Approx(6.0));
  CHECK_THROWS_AS(composite_kernel(a, a, KernelParams{1, 1, 1, 1, 0.0}), InvalidInput);
}

TEST_CASE("cross covariance is identical on the serial and parallel paths") {
  Rng rng(5);
  const auto train = testsupport::random_training(rng, 40, 200, 200, 5);
  const KernelParams p{};
  const Eigen::MatrixXd s = cross_covariance(train.inputs, train.inputs, p, Execution::kSerial);
  const Eigen::MatrixXd q = cross_covariance(train.inputs, train.inputs, p, Execution::kParallel);
  CHECK((s - q).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("posterior matches a dense-solve reference") {
  Rng rng(2024);
  for (int problem = 0; problem < 10; ++problem) {
    const KernelParams p{testsupport::uniform(rng, 0.5, 3.0), testsupport::uniform(rng, 20, 90),
                         testsupport::uniform(rng, 0.5, 2.0), testsupport::uniform(rng, 1, 5),
                         testsupport::uniform(rng, 0.01, 0.2)};
    const auto train = testsupport::random_training(rng, 5, 200, 200, 4);
    const auto test = testsupport::random_training(rng, 4, 200, 200, 4).inputs;
    const GpModel model(p, train);
    const Posterior got = model.posterior(test);
    const auto want = testsupport::reference_posterior(train, test, p);
    for (std::size_t a = 0; a < test.size(); ++a) {
      CHECK(std::abs(got.mean(a) - static_cast<double>(want.mean[a])) <= 1e-8);
      for (std::size_t b = 0; b < test.size(); ++b) {
        CHECK(std::abs(got.cov(a, b) - static_cast<double>(want.cov[a][b])) <= 1e-8);
      }
    }
  }
}

TEST_CASE("two training points and one test point") {
  TrainingSet train;
  train.add({0, 0, 0}, 1.0);
  train.add({10, 0, 0}, 3.0);
  const KernelParams p{1.0, 10.0, 1.0, 1.0, 0.1};
  const SpaceTime x{5, 0, 0};
  const GpModel model(p, train);
  const Posterior post = model.posterior(std::vector<SpaceTime>{x});
  // Hand-solved 2x2 system: K = [[1.1, e], [e, 1.1]] with e = exp(-1/2).
  const double e = std::exp(-0.5);
  const double k = std::exp(-0.125);
  const double det = 1.1 * 1.1 - e * e;
  const double w = k * (1.1 - e) / det;  // both weights equal by symmetry
  CHECK(post.mean(0) == doctest::Approx(2.0 + w * (-1.0) + w * 1.0));
  CHECK(post.cov(0, 0) == doctest::Approx(1.0 - 2.0 * k * w));
}

TEST_CASE("posterior interpolates a noise-free training input") {
  Rng rng(8);
  auto train = testsupport::random_training(rng, 6, 200, 200, 3);
  const KernelParams p{1.0, 40.0, 1.0, 2.0, 1e-12};
  const GpModel model(p, train);
  const Posterior post = model.posterior(train.inputs);
  for (Eigen::Index i = 0; i < post.cov.rows(); ++i) {
    CHECK(post.cov(i, i) <= kMaxJitter);
    CHECK(post.mean(i) == doctest::Approx(train.outputs[i]).epsilon(1e-4));
  }
}

TEST_CASE("empty training set gives the prior") {
  const KernelParams p{2.0, 30.0, 1.5, 2.0, 0.1};
  const GpModel model(p, TrainingSet{});
  const std::vector<SpaceTime> test{{0, 0, 0}, {10, 5, 1}, {40, 40, 2}};
  const Posterior post = model.posterior(test);
  CHECK(post.mean.cwiseAbs().maxCoeff() == 0.0);
  const Eigen::MatrixXd gram = cross_covariance(test, test, p);
  CHECK((post.cov - gram).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("posterior variance never exceeds the prior variance") {
  Rng rng(99);
  const auto train = testsupport::random_training(rng, 12, 200, 200, 4);
  const auto test = testsupport::random_training(rng, 15, 200, 200, 4).inputs;
  const KernelParams p{};
  const Posterior post = GpModel(p, train).posterior(test);
  for (std::size_t i = 0; i < test.size(); ++i) {
    CHECK(post.cov(i, i) <= product_kernel(test[i], test[i], p) + 1e-12);
  }
}

TEST_CASE("jittered Cholesky retries and then gives up") {
  Eigen::MatrixXd ok = Eigen::MatrixXd::Identity(3, 3);
  CHECK(factorize_spd(ok, "identity").jitter == 0.0);

  Eigen::MatrixXd singular = Eigen::MatrixXd::Ones(3, 3);
  const JitteredCholesky j = factorize_spd(singular, "rank one");
  CHECK(j.jitter > 0.0);
  CHECK(j.jitter <= kMaxJitter);

  Eigen::MatrixXd negative = -Eigen::MatrixXd::Identity(2, 2);
  CHECK_THROWS_AS(factorize_spd(negative, "negative"), NumericalError);
}

TEST_CASE("entropy closed forms") {
  const double c = 2.0 * std::numbers::pi * std::numbers::e;
  Eigen::MatrixXd one(1, 1);
  one << 0.7;
  CHECK(entropy(one) == doctest::Approx(0.5 * std::log(c * 0.7)).epsilon(1e-14));

  Eigen::MatrixXd diag = Eigen::Vector3d(0.5, 2.0, 3.0).asDiagonal();
  const double sum = 0.5 * (std::log(c * 0.5) + std::log(c * 2.0) + std::log(c * 3.0));
  CHECK(entropy(diag) == doctest::Approx(sum).epsilon(1e-14));

  const double s2 = 1.7;
  const double rho = 0.6;
  Eigen::MatrixXd corr(2, 2);
  corr << s2, rho * s2, rho * s2, s2;
  CHECK(entropy(corr) == doctest::Approx(0.5 * std::log(c * c * s2 * s2 * (1 - rho * rho))).epsilon(1e-13));
  CHECK(entropy(Eigen::MatrixXd(0, 0)) == 0.0);
}

TEST_CASE("hyperparameter fit picks the best likelihood, first on ties") {
  Rng rng(17);
  const KernelParams truth{2.0, 40.0, 1.0, 2.0, 0.05};
  // Draw outputs from the true GP.
  std::vector<SpaceTime> xs;
  for (int k = 0; k < 40; ++k) {
    xs.push_back({testsupport::uniform(rng, 0, 200), testsupport::uniform(rng, 0, 200),
                  testsupport::uniform(rng, 0, 3)});
  }
  Eigen::MatrixXd k = cross_covariance(xs, xs, truth);
  k.diagonal().array() += truth.noise_var;
  const Eigen::MatrixXd l = Eigen::LLT<Eigen::MatrixXd>(k).matrixL();
  boost::random::normal_distribution<double> normal;
  Eigen::VectorXd u(40);
  for (int i = 0; i < 40; ++i) u(i) = normal(rng);
  const Eigen::VectorXd z = l * u;
  TrainingSet train;
  for (int i = 0; i < 40; ++i) train.add(xs[i], z(i));

  std::vector<KernelParams> grid;
  for (double sv : {0.5, 2.0, 8.0}) {
    for (double sl : {10.0, 40.0, 120.0}) grid.push_back({sv, sl, 1.0, 2.0, 0.05});
  }
  const KernelParams best = fit_hyperparameters(train, grid);
  const double best_lml = GpModel(best, train).log_marginal_likelihood();
  for (const KernelParams& c : grid) {
    CHECK(best_lml >= GpModel(c, train).log_marginal_likelihood());
  }
  CHECK(best_lml >= GpModel(truth, train).log_marginal_likelihood() - 1e-9);

  CHECK(fit_hyperparameters(train, std::vector<KernelParams>{grid[4]}) == grid[4]);
  const std::vector<KernelParams> same{truth, truth, truth};
  CHECK(fit_hyperparameters(train, same) == truth);
  CHECK_THROWS_AS(fit_hyperparameters(train, std::vector<KernelParams>{}), InvalidInput);
  CHECK_THROWS_AS(fit_hyperparameters(TrainingSet{}, grid), InvalidInput);
}

TEST_CASE("mutual information matches the log-determinant identity") {
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    const auto inst = testsupport::random_instance(seed, {2, 2, 1, 2, 6});
    const Matrix cov = testsupport::to_matrix(inst.objective->covariance());
    Rng rng(seed + 100);
    for (int k = 0; k < 10; ++k) {
      const auto subset = testsupport::random_subset(rng, inst.ground.size(), 0.4);
      const double got = inst.objective->value(DeploymentSet(subset));
      const double want = static_cast<double>(testsupport::reference_mi(cov, subset));
      CHECK(std::abs(got - want) <= 1e-8);
    }
  }
}

TEST_CASE("empty and full sets carry no information") {
  const auto inst = testsupport::random_instance(3, {2, 2, 2, 2, 6});
  CHECK(inst.objective->value(DeploymentSet{}) == 0.0);
  std::vector<std::size_t> all(inst.ground.size());
  for (std::size_t e = 0; e < all.size(); ++e) all[e] = e;
  CHECK(inst.objective->value(DeploymentSet(all)) == 0.0);
  CHECK(mutual_information(inst.ground, DeploymentSet{}, inst.model) == 0.0);
}

TEST_CASE("a lone element has zero gain") {
  RobotSpec r;
  const GroundSet g = build_ground_set({1, 1, 200, 200}, 1, {r});
  const GpModel model(KernelParams{}, TrainingSet{});
  CHECK(marginal_gain(0, DeploymentSet{}, g, model) == doctest::Approx(0.0));
}

TEST_CASE("marginal gain equals the direct difference") {
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    const auto inst = testsupport::random_instance(seed, {3, 2, 2, 2, 8});
    const MiObjective& mi = *inst.objective;
    Rng rng(seed);
    for (int k = 0; k < 10; ++k) {
      DeploymentSet d(testsupport::random_subset(rng, inst.ground.size(), 0.3));
      for (std::size_t e = 0; e < inst.ground.size(); e += 3) {
        if (d.contains(e)) {
          CHECK_THROWS_AS(mi.marginal_gain(e, d), InvalidInput);
          continue;
        }
        const double direct = mi.value(d.with(e)) - mi.value(d);
        CHECK(std::abs(mi.marginal_gain(e, d) - direct) <= 1e-8);
      }
    }
  }
}

TEST_CASE("a co-located element gains less than a distant one") {
  std::vector<RobotSpec> robots(2);
  robots[0].id = 1;
  robots[1].id = 2;
  robots[0].noise_variance = {0.05};
  robots[1].noise_variance = {0.08};
  const GroundSet g = build_ground_set({2, 1, 200, 200}, 1, robots);
  const GpModel model(KernelParams{1.0, 30.0, 1.0, 3.0, 0.01}, TrainingSet{});
  const MiObjective mi(ground_set_covariance(g, model));
  const DeploymentSet d({g.index_of(1, 1, 1)});
  const double twin = mi.marginal_gain(g.index_of(2, 1, 1), d);
  const double far = mi.marginal_gain(g.index_of(1, 2, 1), d);
  CHECK(twin < far);
}

TEST_CASE("incremental gains match from-scratch gains") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto inst = testsupport::random_instance(seed, {3, 3, 2, 2, 10});
    const MiObjective& mi = *inst.objective;
    IncrementalMi inc(mi, 2);
    Rng rng(seed * 7);
    DeploymentSet d;
    for (int step = 0; step < 12; ++step) {
      for (std::size_t e = 0; e < inst.ground.size(); ++e) {
        if (d.contains(e)) continue;
        CHECK(std::abs(inc.gain(e) - mi.marginal_gain(e, d)) <= 1e-8);
      }
      std::size_t pick = 0;
      do {
        pick = static_cast<std::size_t>(testsupport::uniform_int(rng, 0, static_cast<int>(inst.ground.size()) - 1));
      } while (d.contains(pick));
      inc.push(pick);
      d.insert(pick);
      CHECK(std::abs(inc.value() - mi.value(d)) <= 1e-8);
    }
    inc.pop();
    CHECK(inc.size() == 11);
    inc.clear();
    CHECK(inc.value() == 0.0);
    CHECK_THROWS_AS(inc.pop(), InvalidInput);
  }
}

TEST_CASE("singleton values agree across execution paths and with the direct value") {
  const auto inst = testsupport::random_instance(4, {3, 3, 2, 3, 10});
  const auto serial = inst.objective->singleton_values(Execution::kSerial);
  const auto parallel = inst.objective->singleton_values(Execution::kParallel);
  CHECK(serial == parallel);
  for (std::size_t e = 0; e < serial.size(); e += 5) {
    CHECK(std::abs(serial[e] - inst.objective->value(DeploymentSet({e}))) <= 1e-8);
  }
}

TEST_CASE("ground-set covariance adds robot noise on the diagonal") {
  const auto inst = testsupport::random_instance(6, {2, 2, 2, 2, 6});
  const Eigen::MatrixXd& cov = inst.objective->covariance();
  for (std::size_t a = 0; a < inst.ground.size(); ++a) {
    for (std::size_t b = 0; b < inst.ground.size(); ++b) {
      const auto& ea = inst.ground[a];
      const auto& eb = inst.ground[b];
      if (a != b && ea.location == eb.location && ea.time == eb.time) {
        // Same latent point, different robots: share the latent variance.
        CHECK(cov(a, a) - ea.noise_var == doctest::Approx(cov(a, b)).epsilon(1e-12));
      }
    }
  }
  CHECK((cov - cov.transpose()).cwiseAbs().maxCoeff() == 0.0);
}
