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

// Shared fixtures and reference implementations for the test suites. The
// references use plain nested vectors and long double elimination, sharing
// nothing with the library's Eigen code paths.

#pragma once

#include <boost/random/uniform_int_distribution.hpp>
#include <boost/random/uniform_real_distribution.hpp>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "intermit/envsim.hpp"
#include "intermit/groundset.hpp"
#include "intermit/solver.hpp"
#include "intermit/stgp.hpp"

namespace testsupport {

using Matrix = std::vector<std::vector<long double>>;

inline Matrix to_matrix(const Eigen::MatrixXd& m) {
  Matrix out(static_cast<std::size_t>(m.rows()), std::vector<long double>(static_cast<std::size_t>(m.cols())));
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) out[i][j] = m(i, j);
  }
  return out;
}

inline Matrix submatrix(const Matrix& m, const std::vector<std::size_t>& rows,
                        const std::vector<std::size_t>& cols) {
  Matrix out(rows.size(), std::vector<long double>(cols.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < cols.size(); ++j) out[i][j] = m[rows[i]][cols[j]];
  }
  return out;
}

/// log det by Gaussian elimination with partial pivoting.
inline long double log_det(Matrix a) {
  const std::size_t n = a.size();
  long double total = 0.0L;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t pivot = c;
    for (std::size_t r = c + 1; r < n; ++r) {
      if (std::fabs(a[r][c]) > std::fabs(a[pivot][c])) pivot = r;
    }
    std::swap(a[c], a[pivot]);
    if (a[c][c] == 0.0L) {
      throw std::runtime_error("singular matrix in reference log_det");
    }
    total += std::log(std::fabs(a[c][c]));
    for (std::size_t r = c + 1; r < n; ++r) {
      const long double f = a[r][c] / a[c][c];
      for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
    }
  }
  return total;
}

/// Solves A X = B for X by Gauss-Jordan elimination.
inline Matrix solve(Matrix a, Matrix b) {
  const std::size_t n = a.size();
  const std::size_t m = b.empty() ? 0 : b[0].size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t pivot = c;
    for (std::size_t r = c + 1; r < n; ++r) {
      if (std::fabs(a[r][c]) > std::fabs(a[pivot][c])) pivot = r;
    }
    std::swap(a[c], a[pivot]);
    std::swap(b[c], b[pivot]);
    const long double d = a[c][c];
    for (std::size_t k = 0; k < n; ++k) a[c][k] /= d;
    for (std::size_t k = 0; k < m; ++k) b[c][k] /= d;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c) continue;
      const long double f = a[r][c];
      if (f == 0.0L) continue;
      for (std::size_t k = 0; k < n; ++k) a[r][k] -= f * a[c][k];
      for (std::size_t k = 0; k < m; ++k) b[r][k] -= f * b[c][k];
    }
  }
  return b;
}

/// M(D) = 0.5 [log det S_DD + log det S_AA - log det S_VV], A = V \ D.
inline long double reference_mi(const Matrix& cov, const std::vector<std::size_t>& set) {
  const std::size_t n = cov.size();
  std::vector<bool> in(n, false);
  for (std::size_t e : set) in[e] = true;
  std::vector<std::size_t> rest;
  std::vector<std::size_t> all;
  for (std::size_t e = 0; e < n; ++e) {
    all.push_back(e);
    if (!in[e]) rest.push_back(e);
  }
  const long double a = set.empty() ? 0.0L : log_det(submatrix(cov, set, set));
  const long double b = rest.empty() ? 0.0L : log_det(submatrix(cov, rest, rest));
  return 0.5L * (a + b - log_det(submatrix(cov, all, all)));
}

struct DensePosterior {
  std::vector<long double> mean;
  Matrix cov;
};

/// Textbook GP posterior with the prior mean set to the training average:
/// mu = m + K*X (K_XX + s2 I)^-1 (z - m), C = K** - K*X (K_XX + s2 I)^-1 KX*.
inline DensePosterior reference_posterior(const intermit::TrainingSet& train,
                                          const std::vector<intermit::SpaceTime>& test,
                                          const intermit::KernelParams& p) {
  const auto k = [&](const intermit::SpaceTime& a, const intermit::SpaceTime& b) {
    const long double dx = a.x - b.x;
    const long double dy = a.y - b.y;
    const long double dt = a.t - b.t;
    const long double ks = p.spatial_var * std::exp(-(dx * dx + dy * dy) / (2.0L * p.spatial_len * p.spatial_len));
    const long double kt = p.temporal_var * std::exp(-(dt * dt) / (2.0L * p.temporal_len * p.temporal_len));
    return ks * kt;
  };
  const std::size_t n = train.size();
  const std::size_t m = test.size();
  long double avg = 0.0L;
  for (double z : train.outputs) avg += z;
  if (n > 0) avg /= static_cast<long double>(n);

  Matrix kxx(n, std::vector<long double>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) kxx[i][j] = k(train.inputs[i], train.inputs[j]);
    kxx[i][i] += p.noise_var + (train.noise_var.empty() ? 0.0 : train.noise_var[i]);
  }
  Matrix kxs(n, std::vector<long double>(m));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) kxs[i][j] = k(train.inputs[i], test[j]);
  }
  Matrix rhs = kxs;
  for (std::size_t i = 0; i < n; ++i) rhs[i].push_back(train.outputs[i] - avg);
  const Matrix sol = n > 0 ? solve(kxx, rhs) : rhs;

  DensePosterior out;
  out.mean.assign(m, avg);
  out.cov.assign(m, std::vector<long double>(m));
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t i = 0; i < n; ++i) out.mean[a] += kxs[i][a] * sol[i][m];
    for (std::size_t b = 0; b < m; ++b) {
      long double v = k(test[a], test[b]);
      for (std::size_t i = 0; i < n; ++i) v -= kxs[i][a] * sol[i][b];
      out.cov[a][b] = v;
    }
  }
  return out;
}

inline double uniform(intermit::Rng& rng, double lo, double hi) {
  return boost::random::uniform_real_distribution<double>(lo, hi)(rng);
}

inline int uniform_int(intermit::Rng& rng, int lo, int hi) {
  return boost::random::uniform_int_distribution<int>(lo, hi)(rng);
}

inline intermit::TrainingSet random_training(intermit::Rng& rng, std::size_t n, double width,
                                             double height, double max_time) {
  intermit::TrainingSet train;
  for (std::size_t k = 0; k < n; ++k) {
    const double x = uniform(rng, 0.0, width);
    const double y = uniform(rng, 0.0, height);
    const double t = uniform(rng, 0.0, max_time);
    train.add({x, y, t}, std::sin(x / 40.0) + std::cos(y / 60.0) + 0.1 * t);
  }
  return train;
}

inline std::vector<intermit::RobotSpec> random_robots(intermit::Rng& rng, int R) {
  std::vector<intermit::RobotSpec> robots;
  for (int r = 1; r <= R; ++r) {
    intermit::RobotSpec robot;
    robot.id = r;
    robot.cost_weight = uniform(rng, 0.05, 0.95);
    robot.noise_variance = {uniform(rng, 0.05, 0.2)};
    robots.push_back(robot);
  }
  return robots;
}

struct SmallSpec {
  int P = 2;
  int Q = 2;
  int R = 2;
  int T = 2;
  std::size_t train = 8;
  intermit::KernelParams kernel{};
};

/// Random small instance with its own training data and robots.
inline intermit::ProblemInstance random_instance(std::uint64_t seed, const SmallSpec& spec,
                                                 intermit::ConstraintSystem constraints = {}) {
  intermit::Rng rng(seed);
  auto robots = random_robots(rng, spec.R);
  auto train = random_training(rng, spec.train, 200.0, 200.0, spec.T);
  intermit::GroundSet ground =
      intermit::build_ground_set({spec.P, spec.Q, 200.0, 200.0}, spec.T, std::move(robots));
  intermit::GpModel model(spec.kernel, std::move(train));
  return intermit::make_problem(std::move(ground), std::move(model), std::move(constraints));
}

inline std::vector<std::size_t> random_subset(intermit::Rng& rng, std::size_t n, double p) {
  std::vector<std::size_t> out;
  for (std::size_t e = 0; e < n; ++e) {
    if (uniform(rng, 0.0, 1.0) < p) out.push_back(e);
  }
  return out;
}

}  // namespace testsupport
