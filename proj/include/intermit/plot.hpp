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

#include <optional>
#include <string>
#include <vector>

namespace intermit {

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
  std::string color = "#1f77b4";
  /// Draw a polyline through the points in x order as well as markers.
  bool connect = false;
};

struct ScatterPlot {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<Series> series;
  /// Dashed horizontal reference line.
  std::optional<double> reference;
  std::string reference_label;
  /// Fixed y range; derived from the data (and reference) when unset.
  std::optional<double> y_min;
  std::optional<double> y_max;
};

/// Static SVG document. Non-finite points are dropped.
std::string render_svg(const ScatterPlot& plot);

void write_svg(const std::string& path, const ScatterPlot& plot);

}  // namespace intermit
