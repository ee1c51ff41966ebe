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

#include "intermit/envsim.hpp"

#include <algorithm>
#include <boost/random/normal_distribution.hpp>
#include <cmath>
#include <numeric>
#include <ostream>

#include "intermit/error.hpp"
#include "intermit/text.hpp"

namespace intermit {

GmmConfig GmmConfig::standard() {
  GmmConfig c;
  c.centers = {{100, 100}, {60, 80}, {40, 30}, {160, 160}, {160, 30}};
  c.widths.assign(5, 40.0);
  c.initial_weights = {5, 5, 3, 8, 4};
  c.dynamics = -Eigen::MatrixXd::Identity(5, 5);
  return c;
}

void GmmConfig::validate() const {
  const std::size_t k = centers.size();
  if (widths.size() != k || initial_weights.size() != k) {
    throw InvalidInput("GMM centers, widths and weights must have the same length");
  }
  if (dynamics.rows() != static_cast<Eigen::Index>(k) || dynamics.cols() != static_cast<Eigen::Index>(k)) {
    throw InvalidInput("GMM dynamics matrix must be " + std::to_string(k) + "x" + std::to_string(k));
  }
  for (double w : widths) {
    if (!(w > 0.0)) throw InvalidInput("GMM basis widths must be > 0");
  }
  if (!(dt > 0.0)) throw InvalidInput("GMM integration step must be > 0");
  if (!(process_noise_std >= 0.0)) throw InvalidInput("GMM process noise must be >= 0");
}

FieldState initial_state(const GmmConfig& config) {
  config.validate();
  FieldState s;
  s.weights = Eigen::Map<const Eigen::VectorXd>(config.initial_weights.data(),
                                                static_cast<Eigen::Index>(config.initial_weights.size()));
  return s;
}

double basis_value(Point2 center, double width, Point2 point) {
  const double dx = point.x - center.x;
  const double dy = point.y - center.y;
  return std::exp(-(dx * dx + dy * dy) / (2.0 * width * width));
}

FieldState step_weights(const FieldState& state, const GmmConfig& config, Rng& rng) {
  FieldState next;
  next.weights = state.weights + config.dt * (config.dynamics * state.weights);
  if (config.process_noise_std > 0.0) {
    boost::random::normal_distribution<double> noise(0.0, config.process_noise_std);
    const double scale = std::sqrt(config.dt);
    for (Eigen::Index k = 0; k < next.weights.size(); ++k) next.weights(k) += scale * noise(rng);
  }
  next.time = state.time + config.dt;
  return next;
}

FieldState advance_to(FieldState state, const GmmConfig& config, double time, Rng& rng) {
  while (state.time + 0.5 * config.dt < time) state = step_weights(state, config, rng);
  return state;
}

double field_value(const FieldState& state, const GmmConfig& config, Point2 point) {
  double sum = 0.0;
  for (std::size_t k = 0; k < config.centers.size(); ++k) {
    sum += state.weights(static_cast<Eigen::Index>(k)) *
           basis_value(config.centers[k], config.widths[k], point);
  }
  return sum;
}

double sample_measurement(const FieldState& state, const GmmConfig& config, Point2 point,
                          double noise_var, Rng& rng) {
  if (!(noise_var >= 0.0)) throw InvalidInput("measurement noise variance must be >= 0");
  const double clean = field_value(state, config, point);
  if (noise_var == 0.0) return clean;
  boost::random::normal_distribution<double> noise(0.0, std::sqrt(noise_var));
  return clean + noise(rng);
}

TrainingSet generate_training_set(const GmmConfig& config, const GridSpec& field,
                                  std::span<const SpaceTime> probes, double noise_var, Rng& rng) {
  config.validate();
  for (const SpaceTime& p : probes) {
    if (p.x < 0.0 || p.x > field.width || p.y < 0.0 || p.y > field.height) {
      throw InvalidInput("training probe (" + format_double(p.x) + ", " + format_double(p.y) +
                         ") lies outside the field");
    }
    if (p.t < 0.0) throw InvalidInput("training probes must have t >= 0");
  }
  std::vector<std::size_t> order(probes.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return probes[a].t < probes[b].t; });

  std::vector<double> z(probes.size());
  FieldState state = initial_state(config);
  for (std::size_t k : order) {
    state = advance_to(std::move(state), config, probes[k].t, rng);
    z[k] = sample_measurement(state, config, {probes[k].x, probes[k].y}, noise_var, rng);
  }
  TrainingSet out;
  for (std::size_t k = 0; k < probes.size(); ++k) out.add(probes[k], z[k]);
  return out;
}

void write_field_csv(std::ostream& out, const FieldState& state, const GmmConfig& config,
                     const GridSpec& grid, int time_label) {
  for (int i = 1; i <= grid.cells(); ++i) {
    const Point2 p = grid.cell_center(i);
    out << time_label << ',' << i << ',' << format_double(p.x) << ',' << format_double(p.y) << ','
        << format_double(field_value(state, config, p)) << '\n';
  }
}

}  // namespace intermit
