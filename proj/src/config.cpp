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

#include "intermit/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "intermit/error.hpp"
#include "intermit/text.hpp"

namespace intermit {

namespace pt = boost::property_tree;

namespace {

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  for (const std::string& part : split(text, ',')) out.push_back(parse_double(part));
  return out;
}

std::string join(const std::vector<double>& values) {
  std::string out;
  for (std::size_t k = 0; k < values.size(); ++k) out += (k ? "," : "") + format_double(values[k]);
  return out;
}

bool parse_bool(const std::string& text) {
  const std::string_view t = trim(text);
  if (t == "true" || t == "1" || t == "yes") return true;
  if (t == "false" || t == "0" || t == "no") return false;
  throw InvalidInput("not a boolean: '" + text + "'");
}

const std::map<std::string, std::set<std::string>>& known_keys() {
  static const std::map<std::string, std::set<std::string>> keys = {
      {"experiment", {"seed", "trials", "eta", "output"}},
      {"problem", {"P", "Q", "T", "L", "R", "width", "height"}},
      {"robots", {"cost_weight", "noise_var", "depot"}},
      {"kernel", {"mode", "spatial_var", "spatial_len", "temporal_var", "temporal_len", "noise_var"}},
      {"training", {"count", "times", "noise_var"}},
      {"environment", {"centers", "widths", "weights", "dynamics", "process_noise_std", "dt", "rng"}},
      {"matroid", {"variant", "limits"}},
      {"knapsack", {"variant", "budget"}},
      {"oracle", {"max_visited", "max_seconds", "max_ground", "max_cardinality", "bound_pruning"}},
      {"verify", {"P", "Q", "R", "T", "L"}},
  };
  return keys;
}

std::string section_kind(const std::string& name) {
  for (const char* prefix : {"matroid_", "knapsack_"}) {
    const std::string p = prefix;
    if (name.rfind(p, 0) == 0 && name.size() > p.size()) return p.substr(0, p.size() - 1);
  }
  return name;
}

class Reader {
 public:
  explicit Reader(const pt::ptree& tree) : tree_(tree) {}

  template <typename F>
  void read(const std::string& path, F&& apply) const {
    const auto value = tree_.get_optional<std::string>(pt::ptree::path_type(path, '.'));
    if (!value) return;
    try {
      apply(std::string(trim(*value)));
    } catch (const InvalidInput& e) {
      throw InvalidInput("config key '" + path + "': " + e.what());
    }
  }

 private:
  const pt::ptree& tree_;
};

}  // namespace

IntRange IntRange::parse(const std::string& text) {
  const auto pos = text.find("..");
  if (pos == std::string::npos) {
    const long long v = parse_int(text);
    return {v, v};
  }
  return {parse_int(text.substr(0, pos)), parse_int(text.substr(pos + 2))};
}

std::string IntRange::str() const {
  return lo == hi ? std::to_string(lo) : std::to_string(lo) + ".." + std::to_string(hi);
}

void IntRange::validate(const char* name, long long min_value) const {
  if (lo < min_value || hi < lo) {
    throw InvalidInput(std::string("range ") + name + " = " + str() + " is invalid (needs " +
                       std::to_string(min_value) + " <= lo <= hi)");
  }
}

RealRange RealRange::parse(const std::string& text) {
  const auto pos = text.find("..");
  if (pos == std::string::npos) {
    const double v = parse_double(text);
    return {v, v};
  }
  return {parse_double(text.substr(0, pos)), parse_double(text.substr(pos + 2))};
}

std::string RealRange::str() const {
  return lo == hi ? format_double(lo) : format_double(lo) + ".." + format_double(hi);
}

MatroidSpec MatroidTemplate::resolve(int R, int L, int T) const {
  const auto value = [&](const std::string& token) -> int {
    const std::string_view t = trim(token);
    if (t == "R") return R;
    if (t == "L") return L;
    if (t == "T") return T;
    return static_cast<int>(parse_int(t));
  };
  std::size_t slots = 0;
  switch (variant) {
    case MatroidVariant::I21:
    case MatroidVariant::I22: slots = T; break;
    case MatroidVariant::I23: slots = 1; break;
    case MatroidVariant::I31:
    case MatroidVariant::I32: slots = static_cast<std::size_t>(R) * T; break;
    case MatroidVariant::I33: slots = R; break;
  }
  std::vector<int> resolved;
  for (const std::string& row : split(limits, ';')) {
    for (const std::string& token : split(row, ',')) resolved.push_back(value(token));
  }
  if (resolved.size() == 1) resolved.assign(slots, resolved.front());
  if (resolved.size() != slots) {
    throw InvalidInput(std::string(variant_name(variant)) + " limits '" + limits + "' give " +
                       std::to_string(resolved.size()) + " values, expected " + std::to_string(slots));
  }
  return MatroidSpec{variant, std::move(resolved)};
}

std::vector<KernelParams> KernelSettings::grid() const {
  std::vector<KernelParams> out;
  for (double sv : spatial_var) {
    for (double sl : spatial_len) {
      for (double tv : temporal_var) {
        for (double tl : temporal_len) {
          for (double nv : noise_var) out.push_back({sv, sl, tv, tl, nv});
        }
      }
    }
  }
  if (!fit && !out.empty()) out.resize(1);
  return out;
}

void ExperimentConfig::validate() const {
  if (trials < 0) throw InvalidInput("trials must be >= 0");
  if (!(eta > 0.0 && eta <= 1.0)) throw InvalidInput("eta must lie in (0, 1]");
  P.validate("P", 1);
  Q.validate("Q", 1);
  T.validate("T", 1);
  L.validate("L", 0);
  R.validate("R", 1);
  if (!(width > 0.0) || !(height > 0.0)) throw InvalidInput("field extent must be positive");
  if (!(cost_weight.lo >= 0.0 && cost_weight.hi <= 1.0 && cost_weight.lo <= cost_weight.hi)) {
    throw InvalidInput("robot cost weights must be drawn from within (0, 1)");
  }
  if (!(noise_var.lo > 0.0 && noise_var.lo <= noise_var.hi)) {
    throw InvalidInput("robot noise variance range must be positive");
  }
  const auto grid = kernel.grid();
  if (grid.empty()) throw InvalidInput("kernel settings produce no candidate");
  for (const auto& k : grid) k.validate();
  if (train_count < 0) throw InvalidInput("training count must be >= 0");
  if (!(train_noise_var >= 0.0)) throw InvalidInput("training noise must be >= 0");
  for (double t : train_times) {
    if (t < 0.0) throw InvalidInput("training times must be >= 0");
  }
  environment.validate();
  for (const auto& k : knapsacks) KnapsackSpec{k.variant, k.budget}.validate();
  oracle.validate();
  if (verify_P < 1 || verify_Q < 1 || verify_R < 1 || verify_T < 1 || verify_L < 0) {
    throw InvalidInput("verify ground set sizes must be positive");
  }
}

ExperimentConfig parse_config(std::istream& in) {
  pt::ptree tree;
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw InvalidInput(std::string("config syntax: ") + e.what());
  }
  for (const auto& [section, body] : tree) {
    const auto known = known_keys().find(section_kind(section));
    if (known == known_keys().end()) throw InvalidInput("unknown config section [" + section + "]");
    for (const auto& [key, value] : body) {
      if (!known->second.count(key)) {
        throw InvalidInput("unknown key '" + key + "' in section [" + section + "]");
      }
    }
  }

  ExperimentConfig c;
  const Reader r(tree);
  r.read("experiment.seed", [&](const std::string& v) { c.seed = static_cast<std::uint64_t>(parse_int(v)); });
  r.read("experiment.trials", [&](const std::string& v) { c.trials = parse_int(v); });
  r.read("experiment.eta", [&](const std::string& v) { c.eta = parse_double(v); });
  r.read("experiment.output", [&](const std::string& v) { c.output = v; });

  r.read("problem.P", [&](const std::string& v) { c.P = IntRange::parse(v); });
  r.read("problem.Q", [&](const std::string& v) { c.Q = IntRange::parse(v); });
  r.read("problem.T", [&](const std::string& v) { c.T = IntRange::parse(v); });
  r.read("problem.L", [&](const std::string& v) { c.L = IntRange::parse(v); });
  r.read("problem.R", [&](const std::string& v) { c.R = IntRange::parse(v); });
  r.read("problem.width", [&](const std::string& v) { c.width = parse_double(v); });
  r.read("problem.height", [&](const std::string& v) { c.height = parse_double(v); });

  r.read("robots.cost_weight", [&](const std::string& v) { c.cost_weight = RealRange::parse(v); });
  r.read("robots.noise_var", [&](const std::string& v) { c.noise_var = RealRange::parse(v); });
  r.read("robots.depot", [&](const std::string& v) {
    const auto xy = parse_list(v);
    if (xy.size() != 2) throw InvalidInput("depot needs 'x,y'");
    c.depot = {xy[0], xy[1]};
  });

  r.read("kernel.mode", [&](const std::string& v) {
    if (v != "fit" && v != "fixed") throw InvalidInput("kernel mode must be 'fit' or 'fixed'");
    c.kernel.fit = v == "fit";
  });
  r.read("kernel.spatial_var", [&](const std::string& v) { c.kernel.spatial_var = parse_list(v); });
  r.read("kernel.spatial_len", [&](const std::string& v) { c.kernel.spatial_len = parse_list(v); });
  r.read("kernel.temporal_var", [&](const std::string& v) { c.kernel.temporal_var = parse_list(v); });
  r.read("kernel.temporal_len", [&](const std::string& v) { c.kernel.temporal_len = parse_list(v); });
  r.read("kernel.noise_var", [&](const std::string& v) { c.kernel.noise_var = parse_list(v); });

  r.read("training.count", [&](const std::string& v) { c.train_count = parse_int(v); });
  r.read("training.times", [&](const std::string& v) { c.train_times = parse_list(v); });
  r.read("training.noise_var", [&](const std::string& v) { c.train_noise_var = parse_double(v); });

  GmmConfig& env = c.environment;
  r.read("environment.centers", [&](const std::string& v) {
    env.centers.clear();
    for (const std::string& pair : split(v, ';')) {
      const auto xy = split(std::string(trim(pair)), ' ');
      std::vector<double> nums;
      for (const auto& s : xy) {
        if (!trim(s).empty()) nums.push_back(parse_double(s));
      }
      if (nums.size() != 2) throw InvalidInput("centers are 'x y' pairs separated by ';'");
      env.centers.push_back({nums[0], nums[1]});
    }
  });
  r.read("environment.weights", [&](const std::string& v) { env.initial_weights = parse_list(v); });
  r.read("environment.widths", [&](const std::string& v) { env.widths = parse_list(v); });
  r.read("environment.dynamics", [&](const std::string& v) {
    const auto rows = split(v, ';');
    if (rows.size() == 1 && split(rows[0], ',').size() == 1) {
      const auto k = static_cast<Eigen::Index>(env.centers.size());
      env.dynamics = parse_double(rows[0]) * Eigen::MatrixXd::Identity(k, k);
      return;
    }
    const auto k = static_cast<Eigen::Index>(rows.size());
    env.dynamics.resize(k, k);
    for (Eigen::Index i = 0; i < k; ++i) {
      const auto row = parse_list(rows[i]);
      if (static_cast<Eigen::Index>(row.size()) != k) throw InvalidInput("dynamics matrix must be square");
      for (Eigen::Index j = 0; j < k; ++j) env.dynamics(i, j) = row[j];
    }
  });
  r.read("environment.process_noise_std", [&](const std::string& v) { env.process_noise_std = parse_double(v); });
  r.read("environment.dt", [&](const std::string& v) { env.dt = parse_double(v); });
  r.read("environment.rng", [&](const std::string& v) {
    if (v != kRngName) throw InvalidInput(std::string("only the ") + kRngName + " generator is supported");
  });
  if (env.widths.size() == 1 && env.centers.size() > 1) env.widths.assign(env.centers.size(), env.widths[0]);
  if (env.dynamics.rows() != static_cast<Eigen::Index>(env.centers.size())) {
    const auto k = static_cast<Eigen::Index>(env.centers.size());
    env.dynamics = -Eigen::MatrixXd::Identity(k, k);
  }

  bool matroids_given = false;
  bool knapsacks_given = false;
  for (const auto& [section, body] : tree) {
    const std::string kind = section_kind(section);
    if (kind == "matroid") {
      if (!matroids_given) c.matroids.clear();
      matroids_given = true;
      MatroidTemplate m;
      r.read(section + ".variant", [&](const std::string& v) { m.variant = parse_matroid_variant(v); });
      r.read(section + ".limits", [&](const std::string& v) { m.limits = v; });
      c.matroids.push_back(m);
    } else if (kind == "knapsack") {
      if (!knapsacks_given) c.knapsacks.clear();
      knapsacks_given = true;
      KnapsackTemplate k;
      r.read(section + ".variant", [&](const std::string& v) { k.variant = parse_knapsack_variant(v); });
      r.read(section + ".budget", [&](const std::string& v) { k.budget = parse_double(v); });
      c.knapsacks.push_back(k);
    }
  }
  // "[matroid_0]" with "variant = none" is not supported; an empty system is
  // expressed by listing no sections, which keeps the defaults.

  r.read("oracle.max_visited", [&](const std::string& v) { c.oracle.max_visited = static_cast<std::uint64_t>(parse_int(v)); });
  r.read("oracle.max_seconds", [&](const std::string& v) { c.oracle.max_seconds = parse_double(v); });
  r.read("oracle.max_ground", [&](const std::string& v) { c.oracle.max_ground = static_cast<std::size_t>(parse_int(v)); });
  r.read("oracle.max_cardinality", [&](const std::string& v) { c.oracle.max_cardinality = static_cast<std::size_t>(parse_int(v)); });
  r.read("oracle.bound_pruning", [&](const std::string& v) { c.oracle.bound_pruning = parse_bool(v); });

  r.read("verify.P", [&](const std::string& v) { c.verify_P = static_cast<int>(parse_int(v)); });
  r.read("verify.Q", [&](const std::string& v) { c.verify_Q = static_cast<int>(parse_int(v)); });
  r.read("verify.R", [&](const std::string& v) { c.verify_R = static_cast<int>(parse_int(v)); });
  r.read("verify.T", [&](const std::string& v) { c.verify_T = static_cast<int>(parse_int(v)); });
  r.read("verify.L", [&](const std::string& v) { c.verify_L = static_cast<int>(parse_int(v)); });

  c.validate();
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file '" + path + "'");
  return parse_config(in);
}

void write_config(std::ostream& out, const ExperimentConfig& c) {
  out << "[experiment]\n"
      << "seed = " << c.seed << '\n'
      << "trials = " << c.trials << '\n'
      << "eta = " << format_double(c.eta) << '\n'
      << "output = " << c.output << "\n\n";
  out << "[problem]\n"
      << "P = " << c.P.str() << '\n'
      << "Q = " << c.Q.str() << '\n'
      << "T = " << c.T.str() << '\n'
      << "L = " << c.L.str() << '\n'
      << "R = " << c.R.str() << '\n'
      << "width = " << format_double(c.width) << '\n'
      << "height = " << format_double(c.height) << "\n\n";
  out << "[robots]\n"
      << "cost_weight = " << c.cost_weight.str() << '\n'
      << "noise_var = " << c.noise_var.str() << '\n'
      << "depot = " << format_double(c.depot.x) << ',' << format_double(c.depot.y) << "\n\n";
  out << "[kernel]\n"
      << "mode = " << (c.kernel.fit ? "fit" : "fixed") << '\n'
      << "spatial_var = " << join(c.kernel.spatial_var) << '\n'
      << "spatial_len = " << join(c.kernel.spatial_len) << '\n'
      << "temporal_var = " << join(c.kernel.temporal_var) << '\n'
      << "temporal_len = " << join(c.kernel.temporal_len) << '\n'
      << "noise_var = " << join(c.kernel.noise_var) << "\n\n";
  out << "[training]\n"
      << "count = " << c.train_count << '\n'
      << "times = " << join(c.train_times) << '\n'
      << "noise_var = " << format_double(c.train_noise_var) << "\n\n";

  const GmmConfig& env = c.environment;
  out << "[environment]\ncenters = ";
  for (std::size_t k = 0; k < env.centers.size(); ++k) {
    out << (k ? "; " : "") << format_double(env.centers[k].x) << ' ' << format_double(env.centers[k].y);
  }
  out << "\nwidths = " << join(env.widths) << '\n'
      << "weights = " << join(env.initial_weights) << "\ndynamics = ";
  for (Eigen::Index i = 0; i < env.dynamics.rows(); ++i) {
    for (Eigen::Index j = 0; j < env.dynamics.cols(); ++j) {
      out << (j ? "," : "") << format_double(env.dynamics(i, j));
    }
    if (i + 1 < env.dynamics.rows()) out << ';';
  }
  out << "\nprocess_noise_std = " << format_double(env.process_noise_std) << '\n'
      << "dt = " << format_double(env.dt) << '\n'
      << "rng = " << kRngName << "\n\n";

  for (std::size_t k = 0; k < c.matroids.size(); ++k) {
    out << "[matroid_" << k + 1 << "]\n"
        << "variant = " << variant_name(c.matroids[k].variant) << '\n'
        << "limits = " << c.matroids[k].limits << "\n\n";
  }
  for (std::size_t k = 0; k < c.knapsacks.size(); ++k) {
    out << "[knapsack_" << k + 1 << "]\n"
        << "variant = " << variant_name(c.knapsacks[k].variant) << '\n'
        << "budget = " << format_double(c.knapsacks[k].budget) << "\n\n";
  }
  out << "[oracle]\n"
      << "max_visited = " << c.oracle.max_visited << '\n'
      << "max_seconds = " << format_double(c.oracle.max_seconds) << '\n'
      << "max_ground = " << c.oracle.max_ground << '\n'
      << "max_cardinality = " << c.oracle.max_cardinality << '\n'
      << "bound_pruning = " << (c.oracle.bound_pruning ? "true" : "false") << "\n\n";
  out << "[verify]\n"
      << "P = " << c.verify_P << '\n'
      << "Q = " << c.verify_Q << '\n'
      << "R = " << c.verify_R << '\n'
      << "T = " << c.verify_T << '\n'
      << "L = " << c.verify_L << '\n';
}

}  // namespace intermit
