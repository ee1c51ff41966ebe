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

#include <Eigen/Dense>
#include <cstddef>
#include <span>
#include <vector>

#include "intermit/execution.hpp"
#include "intermit/groundset.hpp"

namespace intermit {

/// Separable space-time SE kernel hyperparameters plus the observation nugget.
struct KernelParams {
  double spatial_var = 1.0;
  double spatial_len = 50.0;
  double temporal_var = 1.0;
  double temporal_len = 3.0;
  double noise_var = 0.01;

  void validate() const;
  friend bool operator==(const KernelParams&, const KernelParams&) = default;
};

struct SpaceTime {
  double x = 0.0;
  double y = 0.0;
  double t = 0.0;
  friend bool operator==(const SpaceTime&, const SpaceTime&) = default;
};

struct TrainingSet {
  std::vector<SpaceTime> inputs;
  std::vector<double> outputs;
  /// Extra per-sample noise on top of the nugget; zero for most data.
  std::vector<double> noise_var;

  std::size_t size() const { return inputs.size(); }
  bool empty() const { return inputs.empty(); }
  void add(SpaceTime x, double z, double extra_noise = 0.0);
  void validate() const;
};

double kernel_se(double distance, double variance, double length_scale);

/// kappa_p(p, p') * kappa_t(t, t'), without any noise term.
double product_kernel(const SpaceTime& a, const SpaceTime& b, const KernelParams& params);

/// Product kernel plus the nugget, the latter only when a and b are the same
/// input point.
double composite_kernel(const SpaceTime& a, const SpaceTime& b, const KernelParams& params);

/// Product-kernel matrix K(a_i, b_j). The parallel path splits rows across
/// threads; entries are computed identically on both paths.
Eigen::MatrixXd cross_covariance(std::span<const SpaceTime> a, std::span<const SpaceTime> b,
                                 const KernelParams& params,
                                 Execution execution = Execution::kSerial);

/// Cholesky factor of an SPD matrix, retried with diagonal jitter
/// 0, 1e-10, 1e-9, ..., 1e-6. Throws NumericalError when all attempts fail.
struct JitteredCholesky {
  Eigen::LLT<Eigen::MatrixXd> llt;
  double jitter = 0.0;

  double log_det() const;
};

JitteredCholesky factorize_spd(const Eigen::MatrixXd& matrix, const char* what);

inline constexpr double kMaxJitter = 1e-6;

struct Posterior {
  Eigen::VectorXd mean;
  Eigen::MatrixXd cov;
};

/// GP conditioned on a training set. Immutable after construction.
class GpModel {
 public:
  GpModel(KernelParams params, TrainingSet train);

  const KernelParams& params() const { return params_; }
  const TrainingSet& training() const { return train_; }
  double prior_mean() const { return mean_; }
  double jitter() const { return jitter_; }
  double log_marginal_likelihood() const { return lml_; }

  /// Latent posterior (no observation noise on the test points).
  Posterior posterior(std::span<const SpaceTime> test,
                      Execution execution = Execution::kSerial) const;

 private:
  KernelParams params_;
  TrainingSet train_;
  double mean_ = 0.0;
  double jitter_ = 0.0;
  double lml_ = 0.0;
  Eigen::MatrixXd chol_;  // lower factor of K_XX + nugget
  Eigen::VectorXd alpha_;
};

Posterior posterior(const GpModel& model, std::span<const SpaceTime> test);

/// Candidate with the highest log marginal likelihood; first wins ties.
KernelParams fit_hyperparameters(const TrainingSet& train, std::span<const KernelParams> grid);

/// Covariance of ground-set observations: GP posterior at each element's
/// (x, y, t) plus that element's robot noise on the diagonal.
struct PosteriorCov {
  Eigen::MatrixXd matrix;

  std::size_t size() const { return static_cast<std::size_t>(matrix.rows()); }
  void validate() const;
};

PosteriorCov ground_set_covariance(const GroundSet& ground, const GpModel& model,
                                   Execution execution = Execution::kSerial);

/// 0.5 * log det(2 pi e Sigma); zero for an empty matrix.
double entropy(const Eigen::MatrixXd& cov);

/// Mutual information M(D) = H(D) + H(V\D) - H(V) over a fixed ground-set
/// covariance. Caches the precision matrix so conditional variances given a
/// complement reduce to small Schur complements.
class MiObjective {
 public:
  explicit MiObjective(PosteriorCov cov);

  std::size_t size() const { return cov_.size(); }
  const Eigen::MatrixXd& covariance() const { return cov_.matrix; }
  const Eigen::MatrixXd& precision() const { return precision_; }

  /// Direct evaluation from log-determinants of Sigma_DD, Sigma_AA, Sigma_VV.
  double value(const DeploymentSet& set) const;

  /// M({e} | D) = 0.5 log(var(e | D) / var(e | V \ (D+e))), from scratch.
  double marginal_gain(std::size_t element, const DeploymentSet& set) const;

  /// M({e}) for every element. Parallel path splits elements across threads.
  std::vector<double> singleton_values(Execution execution = Execution::kSerial) const;

 private:
  PosteriorCov cov_;
  Eigen::MatrixXd precision_;
  double log_det_all_ = 0.0;
};

double mutual_information(const GroundSet& ground, const DeploymentSet& set, const GpModel& model);
double marginal_gain(std::size_t element, const DeploymentSet& set, const GroundSet& ground,
                     const GpModel& model);

/// Growing set with rank-one Cholesky updates of Sigma_SS and Lambda_SS, so a
/// marginal gain costs O(|S|^2). Not thread-safe; one per solver worker.
class IncrementalMi {
 public:
  explicit IncrementalMi(const MiObjective& objective, std::size_t capacity = 0);

  double gain(std::size_t element) const;
  /// Adds `element` and returns its gain.
  double push(std::size_t element);
  void pop();
  void clear();

  double value() const { return values_.back(); }
  std::size_t size() const { return members_.size(); }
  std::span<const std::size_t> members() const { return members_; }
  DeploymentSet to_set() const { return DeploymentSet(members_); }

 private:
  struct Conditionals {
    double given_set;        // var(e | S)
    double given_rest_prec;  // 1 / var(e | V \ (S+e))
  };
  Conditionals conditionals(std::size_t element) const;
  void ensure_capacity(std::size_t k);

  const MiObjective* objective_;
  std::vector<std::size_t> members_;
  std::vector<double> values_{0.0};
  using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  RowMatrix chol_cov_;
  RowMatrix chol_prec_;
  mutable Eigen::VectorXd scratch_cov_;
  mutable Eigen::VectorXd scratch_prec_;
};

}  // namespace intermit
