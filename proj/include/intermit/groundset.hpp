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

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <variant>
#include <vector>

namespace intermit {

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

double distance(Point2 a, Point2 b);

/// Uniform P x Q discretization of a width x height field. Location indices
/// are 1-based and row-major: index i maps to column (i-1) % P and row
/// (i-1) / P, and cell_center() returns the center of that cell.
struct GridSpec {
  int P = 1;
  int Q = 1;
  double width = 200.0;
  double height = 200.0;

  int cells() const { return P * Q; }
  Point2 cell_center(int location) const;
  void validate() const;
};

struct RobotSpec {
  int id = 1;
  /// Sensing noise variance per deployment time (index t-1). A single entry
  /// is broadcast over the whole horizon.
  std::vector<double> noise_variance{0.1};
  double cost_weight = 0.5;
  Point2 depot{};

  double noise(int time) const;
  void validate(int horizon) const;
};

/// Cost of robot `robot` sensing `position` at deployment time `time`.
using CostModel = std::function<double(const RobotSpec& robot, Point2 position, int time)>;

/// Weighted Euclidean distance from the robot depot. Time-invariant.
double travel_cost(const RobotSpec& robot, Point2 position, int time);

struct GroundElement {
  int robot = 1;
  int location = 1;
  int time = 1;
  Point2 position{};
  double cost = 0.0;
  double noise_var = 0.0;
};

/// All (robot, location, time) decisions, t-major then robot then location.
/// Immutable once built.
class GroundSet {
 public:
  GroundSet(GridSpec grid, int horizon, std::vector<RobotSpec> robots,
            const CostModel& cost_model = travel_cost);

  std::size_t size() const { return elements_.size(); }
  const GroundElement& operator[](std::size_t index) const { return elements_[index]; }
  std::span<const GroundElement> elements() const { return elements_; }

  const GridSpec& grid() const { return grid_; }
  const std::vector<RobotSpec>& robots() const { return robots_; }
  int horizon() const { return horizon_; }
  int robot_count() const { return static_cast<int>(robots_.size()); }
  int location_count() const { return grid_.cells(); }

  std::size_t index_of(int robot, int location, int time) const;

  /// Element indices of V_t, S_r and S^i.
  std::span<const std::size_t> time_slice(int time) const { return by_time_.at(time - 1); }
  std::span<const std::size_t> robot_slice(int robot) const { return by_robot_.at(robot - 1); }
  std::span<const std::size_t> location_slice(int location) const {
    return by_location_.at(location - 1);
  }

 private:
  GridSpec grid_;
  int horizon_;
  std::vector<RobotSpec> robots_;
  std::vector<GroundElement> elements_;
  std::vector<std::vector<std::size_t>> by_time_;
  std::vector<std::vector<std::size_t>> by_robot_;
  std::vector<std::vector<std::size_t>> by_location_;
};

GroundSet build_ground_set(const GridSpec& grid, int horizon, std::vector<RobotSpec> robots,
                           const CostModel& cost_model = travel_cost);

double element_cost(const GroundElement& element, const RobotSpec& robot,
                    const CostModel& cost_model = travel_cost);

/// Subset of a ground set, kept as sorted unique element indices.
class DeploymentSet {
 public:
  DeploymentSet() = default;
  explicit DeploymentSet(std::vector<std::size_t> indices);

  std::size_t size() const { return indices_.size(); }
  bool empty() const { return indices_.empty(); }
  bool contains(std::size_t index) const;
  std::span<const std::size_t> indices() const { return indices_; }
  auto begin() const { return indices_.begin(); }
  auto end() const { return indices_.end(); }

  /// Returns false if already present.
  bool insert(std::size_t index);
  DeploymentSet with(std::size_t index) const;
  /// V \ this.
  DeploymentSet complement(std::size_t ground_size) const;
  void validate(const GroundSet& ground) const;

  std::optional<double> cached_value;

  friend bool operator==(const DeploymentSet& a, const DeploymentSet& b) {
    return a.indices_ == b.indices_;
  }

 private:
  std::vector<std::size_t> indices_;
};

struct ByRobot { int robot; };
struct ByTime { int time; };
struct ByLocation { int location; };
using SliceSelector = std::variant<ByRobot, ByTime, ByLocation>;

DeploymentSet slice(const DeploymentSet& set, const GroundSet& ground, const SliceSelector& by);

/// Columns: r,i,t,x,y,cost,noise_var.
void write_ground_set_csv(std::ostream& out, const GroundSet& ground);

}  // namespace intermit
