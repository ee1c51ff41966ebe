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

#include "intermit/groundset.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <string>

#include "intermit/error.hpp"
#include "intermit/text.hpp"

namespace intermit {

double distance(Point2 a, Point2 b) { return std::hypot(a.x - b.x, a.y - b.y); }

Point2 GridSpec::cell_center(int location) const {
  if (location < 1 || location > cells()) {
    throw InvalidInput("location index " + std::to_string(location) + " outside 1.." +
                       std::to_string(cells()));
  }
  const int col = (location - 1) % P;
  const int row = (location - 1) / P;
  return {(col + 0.5) * width / P, (row + 0.5) * height / Q};
}

void GridSpec::validate() const {
  if (P < 1 || Q < 1) throw InvalidInput("grid needs P >= 1 and Q >= 1");
  if (!(width > 0.0) || !(height > 0.0)) throw InvalidInput("field extent must be positive");
}

double RobotSpec::noise(int time) const {
  if (noise_variance.size() == 1) return noise_variance.front();
  return noise_variance.at(static_cast<std::size_t>(time - 1));
}

void RobotSpec::validate(int horizon) const {
  if (noise_variance.empty() ||
      (noise_variance.size() != 1 && noise_variance.size() != static_cast<std::size_t>(horizon))) {
    throw InvalidInput("robot " + std::to_string(id) +
                       ": noise variance needs one entry or one per time step");
  }
  for (double v : noise_variance) {
    if (!(v > 0.0)) throw InvalidInput("robot " + std::to_string(id) + ": noise variance must be > 0");
  }
  if (!(cost_weight > 0.0 && cost_weight < 1.0)) {
    throw InvalidInput("robot " + std::to_string(id) + ": cost weight must lie in (0,1)");
  }
}

double travel_cost(const RobotSpec& robot, Point2 position, int /*time*/) {
  return robot.cost_weight * distance(robot.depot, position);
}

GroundSet::GroundSet(GridSpec grid, int horizon, std::vector<RobotSpec> robots,
                     const CostModel& cost_model)
    : grid_(grid), horizon_(horizon), robots_(std::move(robots)) {
  grid_.validate();
  if (horizon_ < 1) throw InvalidInput("horizon T must be >= 1");
  if (robots_.empty()) throw InvalidInput("robot roster is empty");
  for (std::size_t r = 0; r < robots_.size(); ++r) {
    if (robots_[r].id != static_cast<int>(r) + 1) {
      throw InvalidInput("robot ids must be 1..R in order");
    }
    robots_[r].validate(horizon_);
  }

  const int n = grid_.cells();
  const int R = robot_count();
  elements_.reserve(static_cast<std::size_t>(n) * R * horizon_);
  by_time_.resize(horizon_);
  by_robot_.resize(R);
  by_location_.resize(n);
  for (int t = 1; t <= horizon_; ++t) {
    for (int r = 1; r <= R; ++r) {
      const RobotSpec& robot = robots_[r - 1];
      for (int i = 1; i <= n; ++i) {
        GroundElement e;
        e.robot = r;
        e.location = i;
        e.time = t;
        e.position = grid_.cell_center(i);
        e.cost = cost_model(robot, e.position, t);
        e.noise_var = robot.noise(t);
        if (!(e.cost >= 0.0)) throw InvalidInput("cost model returned a negative cost");
        const std::size_t index = elements_.size();
        by_time_[t - 1].push_back(index);
        by_robot_[r - 1].push_back(index);
        by_location_[i - 1].push_back(index);
        elements_.push_back(e);
      }
    }
  }
}

std::size_t GroundSet::index_of(int robot, int location, int time) const {
  if (robot < 1 || robot > robot_count() || location < 1 || location > location_count() ||
      time < 1 || time > horizon_) {
    throw InvalidInput("(r,i,t) triple outside the ground set");
  }
  const auto n = static_cast<std::size_t>(location_count());
  return (static_cast<std::size_t>(time - 1) * robot_count() + (robot - 1)) * n + (location - 1);
}

GroundSet build_ground_set(const GridSpec& grid, int horizon, std::vector<RobotSpec> robots,
                           const CostModel& cost_model) {
  return GroundSet(grid, horizon, std::move(robots), cost_model);
}

double element_cost(const GroundElement& element, const RobotSpec& robot,
                    const CostModel& cost_model) {
  return cost_model(robot, element.position, element.time);
}

DeploymentSet::DeploymentSet(std::vector<std::size_t> indices) : indices_(std::move(indices)) {
  std::sort(indices_.begin(), indices_.end());
  if (std::adjacent_find(indices_.begin(), indices_.end()) != indices_.end()) {
    throw InvalidInput("deployment set contains duplicate elements");
  }
}

bool DeploymentSet::contains(std::size_t index) const {
  return std::binary_search(indices_.begin(), indices_.end(), index);
}

bool DeploymentSet::insert(std::size_t index) {
  auto it = std::lower_bound(indices_.begin(), indices_.end(), index);
  if (it != indices_.end() && *it == index) return false;
  indices_.insert(it, index);
  cached_value.reset();
  return true;
}

DeploymentSet DeploymentSet::with(std::size_t index) const {
  DeploymentSet out = *this;
  out.insert(index);
  return out;
}

DeploymentSet DeploymentSet::complement(std::size_t ground_size) const {
  std::vector<std::size_t> rest;
  rest.reserve(ground_size - std::min(ground_size, indices_.size()));
  std::size_t k = 0;
  for (std::size_t e = 0; e < ground_size; ++e) {
    if (k < indices_.size() && indices_[k] == e) {
      ++k;
    } else {
      rest.push_back(e);
    }
  }
  DeploymentSet out;
  out.indices_ = std::move(rest);
  return out;
}

void DeploymentSet::validate(const GroundSet& ground) const {
  if (!indices_.empty() && indices_.back() >= ground.size()) {
    throw InvalidInput("deployment set references element " + std::to_string(indices_.back()) +
                       " outside a ground set of size " + std::to_string(ground.size()));
  }
}

DeploymentSet slice(const DeploymentSet& set, const GroundSet& ground, const SliceSelector& by) {
  std::vector<std::size_t> kept;
  for (std::size_t index : set) {
    const GroundElement& e = ground[index];
    const bool match = std::visit(
        [&](const auto& sel) {
          using T = std::decay_t<decltype(sel)>;
          if constexpr (std::is_same_v<T, ByRobot>) return e.robot == sel.robot;
          if constexpr (std::is_same_v<T, ByTime>) return e.time == sel.time;
          if constexpr (std::is_same_v<T, ByLocation>) return e.location == sel.location;
        },
        by);
    if (match) kept.push_back(index);
  }
  return DeploymentSet(std::move(kept));
}

void write_ground_set_csv(std::ostream& out, const GroundSet& ground) {
  out << "r,i,t,x,y,cost,noise_var\n";
  for (const GroundElement& e : ground.elements()) {
    out << e.robot << ',' << e.location << ',' << e.time << ',' << format_double(e.position.x)
        << ',' << format_double(e.position.y) << ',' << format_double(e.cost) << ','
        << format_double(e.noise_var) << '\n';
  }
}

}  // namespace intermit
