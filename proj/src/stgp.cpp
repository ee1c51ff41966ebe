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

#include "intermit/stgp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "intermit/error.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace intermit {

namespace {

constexpr double kLogTwoPiE = 2.8378770664093453;  // log(2 pi e)

Eigen::MatrixXd principal_submatrix(const Eigen::MatrixXd& m, std::span<const std::size_t> idx) {
  const auto k = static_cast<Eigen::Index>(idx.size());
  Eigen::MatrixXd out(k, k);
  for (Eigen::Index j = 0; j < k; ++j) {
    for (Eigen::Index i = 0; i < k; ++i) {
      out(i, j) = m(static_cast<Eigen::Index>(idx[i]), static_cast<Eigen::Index>(idx[j]));
    }
  }
  return out;
}

Eigen::VectorXd gather(const Eigen::MatrixXd& m, std::size_t row, std::span<const std::size_t> idx) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(idx.size()));
  for (std::size_t j = 0; j < idx.size(); ++j) {
    out(static_cast<Eigen::Index>(j)) =
        m(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(idx[j]));
  }
  return out;
}

// x^T A^{-1} x for SPD A.
double quadratic_inverse(const Eigen::MatrixXd& a, const Eigen::VectorXd& x, const char* what) {
  if (x.size() == 0) return 0.0;
  const JitteredCholesky chol = factorize_spd(a, what);
  const Eigen::VectorXd y = chol.llt.matrixL().solve(x);
  return y.squaredNorm();
}

}  // namespace

int available_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

void KernelParams::validate() const {
  if (!(spatial_var > 0.0) || !(spatial_len > 0.0) || !(temporal_var > 0.0) ||
      !(temporal_len > 0.0) || !(noise_var > 0.0)) {
    throw InvalidInput("kernel hyperparameters must all be strictly positive");
  }
}

void TrainingSet::add(SpaceTime x, double z, double extra_noise) {
  inputs.push_back(x);
  outputs.push_back(z);
  noise_var.push_back(extra_noise);
}

void TrainingSet::validate() const {
  if (outputs.size() != inputs.size() || noise_var.size() != inputs.size()) {
    throw InvalidInput("training inputs, outputs and noise variances are misaligned");
  }
  for (double v : noise_var) {
    if (!(v >= 0.0)) throw InvalidInput("training noise variance must be >= 0");
  }
}

double kernel_se(double distance, double variance, double length_scale) {
  if (!(variance > 0.0) || !(length_scale > 0.0)) {
    throw InvalidInput("SE kernel needs positive variance and length-scale");
  }
  return variance * std::exp(-distance * distance / (2.0 * length_scale * length_scale));
}

double product_kernel(const SpaceTime& a, const SpaceTime& b, const KernelParams& p) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  const double dt = a.t - b.t;
  const double spatial = p.spatial_var * std::exp(-(dx * dx + dy * dy) / (2.0 * p.spatial_len * p.spatial_len));
  const double temporal = p.temporal_var * std::exp(-(dt * dt) / (2.0 * p.temporal_len * p.temporal_len));
  return spatial * temporal;
}

double composite_kernel(const SpaceTime& a, const SpaceTime& b, const KernelParams& params) {
  params.validate();
  return product_kernel(a, b, params) + (a == b ? params.noise_var : 0.0);
}

Eigen::MatrixXd cross_covariance(std::span<const SpaceTime> a, std::span<const SpaceTime> b,
                                 const KernelParams& params, Execution execution) {
  params.validate();
  const auto rows = static_cast<Eigen::Index>(a.size());
  const auto cols = static_cast<Eigen::Index>(b.size());
  Eigen::MatrixXd k(rows, cols);
  if (execution == Execution::kParallel) {
#pragma omp parallel for schedule(static)
    for (Eigen::Index i = 0; i < rows; ++i) {
      for (Eigen::Index j = 0; j < cols; ++j) k(i, j) = product_kernel(a[i], b[j], params);
    }
  } else {
    for (Eigen::Index i = 0; i < rows; ++i) {
      for (Eigen::Index j = 0; j < cols; ++j) k(i, j) = product_kernel(a[i], b[j], params);
    }
  }
  return k;
}

double JitteredCholesky::log_det() const {
  const auto& lu = llt.matrixLLT();
  double sum = 0.0;
  for (Eigen::Index i = 0; i < lu.rows(); ++i) sum += std::log(lu(i, i));
  return 2.0 * sum;
}

JitteredCholesky factorize_spd(const Eigen::MatrixXd& matrix, const char* what) {
  JitteredCholesky out;
  double jitter = 0.0;
  while (true) {
    Eigen::MatrixXd a = matrix;
    if (jitter > 0.0) a.diagonal().array() += jitter;
    out.llt.compute(a);
    bool ok = out.llt.info() == Eigen::Success;
    if (ok) {
      const auto& l = out.llt.matrixLLT();
      for (Eigen::Index i = 0; i < l.rows() && ok; ++i) ok = std::isfinite(l(i, i)) && l(i, i) > 0.0;
    }
    if (ok) {
      out.jitter = jitter;
      return out;
    }
    if (jitter >= kMaxJitter) break;
    jitter = jitter == 0.0 ? 1e-10 : jitter * 10.0;
  }
  throw NumericalError(std::string(what) + ": matrix of size " + std::to_string(matrix.rows()) +
                       " is not positive definite even with jitter " +
                       std::to_string(kMaxJitter) + " (min diagonal " +
                       std::to_string(matrix.rows() ? matrix.diagonal().minCoeff() : 0.0) + ")");
}

GpModel::GpModel(KernelParams params, TrainingSet train)
    : params_(params), train_(std::move(train)) {
  params_.validate();
  train_.validate();
  const auto n = static_cast<Eigen::Index>(train_.size());
  if (n == 0) return;

  Eigen::Map<const Eigen::VectorXd> z(train_.outputs.data(), n);
  mean_ = z.mean();
  Eigen::MatrixXd k = cross_covariance(train_.inputs, train_.inputs, params_);
  for (Eigen::Index i = 0; i < n; ++i) k(i, i) += params_.noise_var + train_.noise_var[i];
  const JitteredCholesky chol = factorize_spd(k, "training Gram matrix");
  jitter_ = chol.jitter;
  chol_ = chol.llt.matrixL();
  const Eigen::VectorXd centered = z.array() - mean_;
  alpha_ = chol.llt.solve(centered);
  lml_ = -0.5 * centered.dot(alpha_) - 0.5 * chol.log_det() -
         0.5 * static_cast<double>(n) * std::log(2.0 * std::numbers::pi);
}

Posterior GpModel::posterior(std::span<const SpaceTime> test, Execution execution) const {
  Posterior out;
  out.cov = cross_covariance(test, test, params_, execution);
  out.mean = Eigen::VectorXd::Constant(static_cast<Eigen::Index>(test.size()), mean_);
  if (train_.empty()) return out;

  const Eigen::MatrixXd ks = cross_covariance(train_.inputs, test, params_, execution);
  out.mean.noalias() += ks.transpose() * alpha_;
  const Eigen::MatrixXd v = chol_.triangularView<Eigen::Lower>().solve(ks);
  out.cov.noalias() -= v.transpose() * v;
  out.cov = 0.5 * (out.cov + out.cov.transpose()).eval();
  return out;
}

Posterior posterior(const GpModel& model, std::span<const SpaceTime> test) {
  return model.posterior(test);
}

KernelParams fit_hyperparameters(const TrainingSet& train, std::span<const KernelParams> grid) {
  if (grid.empty()) throw InvalidInput("hyperparameter grid is empty");
  if (train.empty()) throw InvalidInput("cannot fit hyperparameters without training data");
  std::size_t best = grid.size();
  double best_lml = -std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < grid.size(); ++c) {
    double lml = -std::numeric_limits<double>::infinity();
    try {
      lml = GpModel(grid[c], train).log_marginal_likelihood();
    } catch (const NumericalError&) {
      continue;
    }
    if (best == grid.size() || lml > best_lml) {
      best = c;
      best_lml = lml;
    }
  }
  if (best == grid.size()) throw NumericalError("no hyperparameter candidate could be factorized");
  return grid[best];
}

void PosteriorCov::validate() const {
  if (matrix.rows() != matrix.cols()) throw NumericalError("posterior covariance is not square");
  const double scale = matrix.size() ? matrix.cwiseAbs().maxCoeff() : 0.0;
  if ((matrix - matrix.transpose()).cwiseAbs().maxCoeff() > 1e-9 * std::max(1.0, scale)) {
    throw NumericalError("posterior covariance is not symmetric");
  }
  for (Eigen::Index i = 0; i < matrix.rows(); ++i) {
    if (!(matrix(i, i) > 0.0)) throw NumericalError("posterior covariance has a nonpositive diagonal");
  }
}

PosteriorCov ground_set_covariance(const GroundSet& ground, const GpModel& model,
                                   Execution execution) {
  // Robots sharing (location, time) share the latent posterior; only the
  // noise term differs. Points are laid out as (t-1)*N + (i-1).
  const int n_loc = ground.location_count();
  std::vector<SpaceTime> points;
  points.reserve(static_cast<std::size_t>(n_loc) * ground.horizon());
  for (int t = 1; t <= ground.horizon(); ++t) {
    for (int i = 1; i <= n_loc; ++i) {
      const Point2 p = ground.grid().cell_center(i);
      points.push_back({p.x, p.y, static_cast<double>(t)});
    }
  }
  const Posterior latent = model.posterior(points, execution);

  const auto v = static_cast<Eigen::Index>(ground.size());
  std::vector<Eigen::Index> point_of(ground.size());
  for (std::size_t e = 0; e < ground.size(); ++e) {
    point_of[e] = static_cast<Eigen::Index>(ground[e].time - 1) * n_loc + (ground[e].location - 1);
  }
  PosteriorCov out;
  out.matrix.resize(v, v);
  for (Eigen::Index b = 0; b < v; ++b) {
    for (Eigen::Index a = 0; a < v; ++a) out.matrix(a, b) = latent.cov(point_of[a], point_of[b]);
    out.matrix(b, b) += ground[static_cast<std::size_t>(b)].noise_var;
  }
  out.validate();
  return out;
}

double entropy(const Eigen::MatrixXd& cov) {
  if (cov.rows() == 0) return 0.0;
  const JitteredCholesky chol = factorize_spd(cov, "entropy covariance");
  return 0.5 * (static_cast<double>(cov.rows()) * kLogTwoPiE + chol.log_det());
}

MiObjective::MiObjective(PosteriorCov cov) : cov_(std::move(cov)) {
  cov_.validate();
  const auto n = static_cast<Eigen::Index>(cov_.size());
  if (n == 0) return;
  const JitteredCholesky chol = factorize_spd(cov_.matrix, "ground-set covariance");
  log_det_all_ = chol.log_det();
  precision_ = chol.llt.solve(Eigen::MatrixXd::Identity(n, n));
  precision_ = 0.5 * (precision_ + precision_.transpose()).eval();
}

double MiObjective::value(const DeploymentSet& set) const {
  if (set.empty() || set.size() >= size()) return 0.0;
  const DeploymentSet rest = set.complement(size());
  const double ld_set = factorize_spd(principal_submatrix(cov_.matrix, set.indices()), "Sigma_DD").log_det();
  const double ld_rest = factorize_spd(principal_submatrix(cov_.matrix, rest.indices()), "Sigma_AA").log_det();
  return 0.5 * (ld_set + ld_rest - log_det_all_);
}

double MiObjective::marginal_gain(std::size_t element, const DeploymentSet& set) const {
  if (element >= size()) throw InvalidInput("element outside the ground set");
  if (set.contains(element)) throw InvalidInput("element already in the deployment set");
  const auto e = static_cast<Eigen::Index>(element);
  const auto idx = set.indices();
  const double var_given_set =
      cov_.matrix(e, e) - quadratic_inverse(principal_submatrix(cov_.matrix, idx),
                                            gather(cov_.matrix, element, idx), "Sigma_DD");
  const double prec_given_rest =
      precision_(e, e) - quadratic_inverse(principal_submatrix(precision_, idx),
                                           gather(precision_, element, idx), "Lambda_DD");
  if (!(var_given_set > 0.0) || !(prec_given_rest > 0.0)) {
    throw NumericalError("nonpositive conditional variance for element " + std::to_string(element));
  }
  return 0.5 * std::log(var_given_set * prec_given_rest);
}

std::vector<double> MiObjective::singleton_values(Execution execution) const {
  const auto n = static_cast<Eigen::Index>(size());
  std::vector<double> out(size());
  if (execution == Execution::kParallel) {
#pragma omp parallel for schedule(static)
    for (Eigen::Index e = 0; e < n; ++e) {
      out[e] = 0.5 * std::log(cov_.matrix(e, e) * precision_(e, e));
    }
  } else {
    for (Eigen::Index e = 0; e < n; ++e) {
      out[e] = 0.5 * std::log(cov_.matrix(e, e) * precision_(e, e));
    }
  }
  return out;
}

double mutual_information(const GroundSet& ground, const DeploymentSet& set, const GpModel& model) {
  set.validate(ground);
  return MiObjective(ground_set_covariance(ground, model)).value(set);
}

double marginal_gain(std::size_t element, const DeploymentSet& set, const GroundSet& ground,
                     const GpModel& model) {
  set.validate(ground);
  return MiObjective(ground_set_covariance(ground, model)).marginal_gain(element, set);
}

IncrementalMi::IncrementalMi(const MiObjective& objective, std::size_t capacity)
    : objective_(&objective) {
  ensure_capacity(std::max<std::size_t>(capacity, 8));
}

void IncrementalMi::ensure_capacity(std::size_t k) {
  if (static_cast<Eigen::Index>(k) <= chol_cov_.rows()) return;
  const auto cap = static_cast<Eigen::Index>(std::max<std::size_t>(k, 2 * chol_cov_.rows()));
  chol_cov_.conservativeResize(cap, cap);
  chol_prec_.conservativeResize(cap, cap);
  scratch_cov_.resize(cap);
  scratch_prec_.resize(cap);
}

IncrementalMi::Conditionals IncrementalMi::conditionals(std::size_t element) const {
  const Eigen::MatrixXd& cov = objective_->covariance();
  const Eigen::MatrixXd& prec = objective_->precision();
  const auto e = static_cast<Eigen::Index>(element);
  const auto k = static_cast<Eigen::Index>(members_.size());
  double ss_cov = 0.0;
  double ss_prec = 0.0;
  // Forward substitution against both lower factors, row by row.
  for (Eigen::Index i = 0; i < k; ++i) {
    const auto m = static_cast<Eigen::Index>(members_[i]);
    double yc = cov(m, e);
    double yp = prec(m, e);
    for (Eigen::Index j = 0; j < i; ++j) {
      yc -= chol_cov_(i, j) * scratch_cov_(j);
      yp -= chol_prec_(i, j) * scratch_prec_(j);
    }
    yc /= chol_cov_(i, i);
    yp /= chol_prec_(i, i);
    scratch_cov_(i) = yc;
    scratch_prec_(i) = yp;
    ss_cov += yc * yc;
    ss_prec += yp * yp;
  }
  return {cov(e, e) - ss_cov, prec(e, e) - ss_prec};
}

double IncrementalMi::gain(std::size_t element) const {
  const Conditionals c = conditionals(element);
  if (!(c.given_set > 0.0) || !(c.given_rest_prec > 0.0)) {
    throw NumericalError("nonpositive conditional variance for element " + std::to_string(element));
  }
  return 0.5 * std::log(c.given_set * c.given_rest_prec);
}

double IncrementalMi::push(std::size_t element) {
  const auto k = static_cast<Eigen::Index>(members_.size());
  ensure_capacity(members_.size() + 1);
  const Conditionals c = conditionals(element);
  if (!(c.given_set > 0.0) || !(c.given_rest_prec > 0.0)) {
    throw NumericalError("nonpositive conditional variance for element " + std::to_string(element));
  }
  for (Eigen::Index j = 0; j < k; ++j) {
    chol_cov_(k, j) = scratch_cov_(j);
    chol_prec_(k, j) = scratch_prec_(j);
  }
  chol_cov_(k, k) = std::sqrt(c.given_set);
  chol_prec_(k, k) = std::sqrt(c.given_rest_prec);
  const double g = 0.5 * std::log(c.given_set * c.given_rest_prec);
  members_.push_back(element);
  values_.push_back(values_.back() + g);
  return g;
}

void IncrementalMi::pop() {
  if (members_.empty()) throw InvalidInput("pop on an empty incremental set");
  members_.pop_back();
  values_.pop_back();
}

void IncrementalMi::clear() {
  members_.clear();
  values_.assign(1, 0.0);
}

}  // namespace intermit
