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
#include <boost/random/mersenne_twister.hpp>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "intermit/groundset.hpp"
#include "intermit/stgp.hpp"

namespace intermit {

/// The only generator used anywhere; seeded runs reproduce bit for bit.
using Rng = boost::random::mt19937_64;

inline constexpr const char* kRngName = "mt19937_64";

/// Gaussian-mixture ground truth: fixed Gaussian bumps with weights obeying
/// dw/dt = A w + noise, integrated by explicit Euler.
struct GmmConfig {
  std::vector<Point2> centers;
  std::vector<double> widths;
  std::vector<double> initial_weights;
  Eigen::MatrixXd dynamics;
  double process_noise_std = 0.05;
  /// Euler step; 1/dt steps make one unit of deployment time.
  double dt = 0.1;

  /// Five bumps, weights {5,5,3,8,4}, A = -I, width 40 and noise 0.05.
  static GmmConfig standard();
  std::size_t basis_count() const { return centers.size(); }
  void validate() const;
};

struct FieldState {
  Eigen::VectorXd weights;
  double time = 0.0;
};

FieldState initial_state(const GmmConfig& config);

double basis_value(Point2 center, double width, Point2 point);

/// One Euler step: w + dt A w + sqrt(dt) * N(0, sigma^2 I).
FieldState step_weights(const FieldState& state, const GmmConfig& config, Rng& rng);

/// Steps until the state time reaches `time` (within half a step).
FieldState advance_to(FieldState state, const GmmConfig& config, double time, Rng& rng);

double field_value(const FieldState& state, const GmmConfig& config, Point2 point);

double sample_measurement(const FieldState& state, const GmmConfig& config, Point2 point,
                          double noise_var, Rng& rng);

/// Simulates one weight trajectory from t = 0 and measures every probe at
/// its time. Probes are visited in time order; the returned set keeps the
/// caller's probe order.
TrainingSet generate_training_set(const GmmConfig& config, const GridSpec& field,
                                  std::span<const SpaceTime> probes, double noise_var, Rng& rng);

/// Columns: t,i,x,y,value over every grid cell.
void write_field_csv(std::ostream& out, const FieldState& state, const GmmConfig& config,
                     const GridSpec& grid, int time_label);

}  // namespace intermit
