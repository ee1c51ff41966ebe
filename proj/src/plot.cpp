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

#include "intermit/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>

#include "intermit/error.hpp"

namespace intermit {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 420.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 20.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 55.0;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string tick_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

std::string escape(const std::string& text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();

  void include(double v) {
    if (!std::isfinite(v)) return;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  void finish() {
    if (!std::isfinite(lo)) {
      lo = 0.0;
      hi = 1.0;
    }
    if (hi - lo < 1e-12) {
      const double pad = std::max(1.0, std::abs(lo)) * 0.5;
      lo -= pad;
      hi += pad;
    } else {
      const double pad = 0.05 * (hi - lo);
      lo -= pad;
      hi += pad;
    }
  }
};

}  // namespace

std::string render_svg(const ScatterPlot& plot) {
  Range xr;
  Range yr;
  for (const Series& s : plot.series) {
    for (std::size_t k = 0; k < std::min(s.x.size(), s.y.size()); ++k) {
      if (!std::isfinite(s.x[k]) || !std::isfinite(s.y[k])) continue;
      xr.include(s.x[k]);
      yr.include(s.y[k]);
    }
  }
  if (plot.reference) yr.include(*plot.reference);
  xr.finish();
  yr.finish();
  if (plot.y_min) yr.lo = *plot.y_min;
  if (plot.y_max) yr.hi = *plot.y_max;

  const double pw = kWidth - kLeft - kRight;
  const double ph = kHeight - kTop - kBottom;
  const auto sx = [&](double x) { return kLeft + (x - xr.lo) / (xr.hi - xr.lo) * pw; };
  const auto sy = [&](double y) { return kTop + (yr.hi - y) / (yr.hi - yr.lo) * ph; };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
      << kHeight << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << num(kWidth / 2) << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">"
      << escape(plot.title) << "</text>\n";
  out << "<rect x=\"" << num(kLeft) << "\" y=\"" << num(kTop) << "\" width=\"" << num(pw)
      << "\" height=\"" << num(ph) << "\" fill=\"none\" stroke=\"black\"/>\n";

  for (int k = 0; k <= 5; ++k) {
    const double xv = xr.lo + (xr.hi - xr.lo) * k / 5.0;
    const double yv = yr.lo + (yr.hi - yr.lo) * k / 5.0;
    out << "<text x=\"" << num(sx(xv)) << "\" y=\"" << num(kTop + ph + 18)
        << "\" text-anchor=\"middle\">" << tick_label(xv) << "</text>\n";
    out << "<text x=\"" << num(kLeft - 6) << "\" y=\"" << num(sy(yv) + 4)
        << "\" text-anchor=\"end\">" << tick_label(yv) << "</text>\n";
    out << "<line x1=\"" << num(kLeft) << "\" x2=\"" << num(kLeft + pw) << "\" y1=\""
        << num(sy(yv)) << "\" y2=\"" << num(sy(yv)) << "\" stroke=\"#dddddd\"/>\n";
  }
  out << "<text x=\"" << num(kLeft + pw / 2) << "\" y=\"" << num(kHeight - 12)
      << "\" text-anchor=\"middle\">" << escape(plot.x_label) << "</text>\n";
  out << "<text transform=\"translate(16," << num(kTop + ph / 2)
      << ") rotate(-90)\" text-anchor=\"middle\">" << escape(plot.y_label) << "</text>\n";

  if (plot.reference) {
    const double y = sy(*plot.reference);
    out << "<line x1=\"" << num(kLeft) << "\" x2=\"" << num(kLeft + pw) << "\" y1=\"" << num(y)
        << "\" y2=\"" << num(y) << "\" stroke=\"#d62728\" stroke-dasharray=\"6,4\"/>\n";
    out << "<text x=\"" << num(kLeft + pw - 4) << "\" y=\"" << num(y - 5)
        << "\" text-anchor=\"end\" fill=\"#d62728\">" << escape(plot.reference_label)
        << "</text>\n";
  }

  double legend_y = kTop + 14;
  for (const Series& s : plot.series) {
    const std::size_t n = std::min(s.x.size(), s.y.size());
    std::vector<std::size_t> order;
    for (std::size_t k = 0; k < n; ++k) {
      if (std::isfinite(s.x[k]) && std::isfinite(s.y[k])) order.push_back(k);
    }
    if (s.connect && order.size() > 1) {
      std::stable_sort(order.begin(), order.end(),
                       [&](std::size_t a, std::size_t b) { return s.x[a] < s.x[b]; });
      out << "<polyline fill=\"none\" stroke=\"" << s.color << "\" points=\"";
      for (std::size_t k : order) out << num(sx(s.x[k])) << ',' << num(sy(s.y[k])) << ' ';
      out << "\"/>\n";
    }
    for (std::size_t k : order) {
      out << "<circle cx=\"" << num(sx(s.x[k])) << "\" cy=\"" << num(sy(s.y[k]))
          << "\" r=\"3\" fill=\"" << s.color << "\" fill-opacity=\"0.7\"/>\n";
    }
    if (!s.label.empty()) {
      out << "<circle cx=\"" << num(kLeft + 12) << "\" cy=\"" << num(legend_y - 4)
          << "\" r=\"4\" fill=\"" << s.color << "\"/>\n";
      out << "<text x=\"" << num(kLeft + 22) << "\" y=\"" << num(legend_y) << "\">"
          << escape(s.label) << "</text>\n";
      legend_y += 16;
    }
  }
  out << "</svg>\n";
  return out.str();
}

void write_svg(const std::string& path, const ScatterPlot& plot) {
  std::ofstream file(path);
  if (!file) throw IoError("cannot write plot '" + path + "'");
  file << render_svg(plot);
  if (!file) throw IoError("write failed for plot '" + path + "'");
}

}  // namespace intermit
