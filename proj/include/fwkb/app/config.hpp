#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "fwkb/app/output.hpp"
#include "fwkb/app/tolerances.hpp"
#include "fwkb/errors.hpp"
#include "fwkb/fracops.hpp"
#include "fwkb/mechanics.hpp"

namespace fwkb::app {

enum class Model { example1, example2, custom };

inline Model parse_model(const std::string& text) {
  if (text == "example1") return Model::example1;
  if (text == "example2") return Model::example2;
  if (text == "custom") return Model::custom;
  throw ConfigError("unknown model '" + text + "' (expected example1, example2 or custom)");
}

inline const char* to_string(Model m) {
  switch (m) {
    case Model::example1: return "example1";
    case Model::example2: return "example2";
    case Model::custom: return "custom";
  }
  return "?";
}

struct GridConfig {
  double a = 0.0;
  double b = 1.0;
  std::size_t count = 1024;

  TimeGrid to_grid() const { return TimeGrid(a, b, count); }
};

/// Splits "x,y,z" into doubles; throws ConfigError on anything unparsable.
inline std::vector<double> parse_number_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto first = item.find_first_not_of(" \t");
    const auto last = item.find_last_not_of(" \t");
    if (first == std::string::npos) {
      throw ConfigError("empty entry in list '" + text + "'");
    }
    item = item.substr(first, last - first + 1);
    std::size_t used = 0;
    double value = 0.0;
    try {
      value = std::stod(item, &used);
    } catch (const std::exception&) {
      throw ConfigError("not a number: '" + item + "'");
    }
    if (used != item.size()) {
      throw ConfigError("not a number: '" + item + "'");
    }
    out.push_back(value);
  }
  return out;
}

inline GridConfig parse_grid(const std::string& text) {
  const std::vector<double> parts = parse_number_list(text);
  if (parts.size() != 3 || parts[2] < 0.0 || std::floor(parts[2]) != parts[2]) {
    throw ConfigError("--grid expects a,b,count with integer count, got '" + text + "'");
  }
  GridConfig g{parts[0], parts[1], static_cast<std::size_t>(parts[2])};
  (void)g.to_grid();  // validates a < b and count >= 2
  return g;
}

inline LagrangianCoefficients parse_coefficients(const std::string& text) {
  const std::vector<double> p = parse_number_list(text);
  if (p.size() != 5) {
    throw ConfigError("--coeffs expects c_alpha,c_beta,l_alpha,l_beta,v");
  }
  return {p[0], p[1], p[2], p[3], p[4]};
}

struct RunConfig {
  Model model = Model::example1;
  LagrangianCoefficients custom{};
  double alpha = 1.5;
  double beta = 1.5;
  double e1 = 1.0;
  double e2 = 1.0;
  double q = 0.0;
  double hbar = 1.0;
  double fd_step = 1e-4;
  GridConfig grid{};
  OutputFormat format = OutputFormat::table;
  std::optional<std::string> output_path;
  Tolerances tolerances = Tolerances::defaults();

  /// The Lagrangian selected by model, alpha and beta.
  LagrangianSpec spec() const {
    switch (model) {
      case Model::example1: return LagrangianSpec::example1(alpha, beta);
      case Model::example2: return LagrangianSpec::example2(alpha, beta);
      case Model::custom: break;
    }
    return LagrangianSpec(custom, FractionalOrder(alpha), FractionalOrder(beta));
  }

  /// Preconditions of the Hamilton-Jacobi and WKB commands.
  void validate_physics() const {
    if (!(alpha >= 1.0) || !(beta >= 1.0)) {
      throw ConfigError("alpha and beta must be >= 1 for Hamilton-Jacobi/WKB commands");
    }
    if (!(e1 >= 0.0) || !(e2 >= 0.0)) {
      throw ConfigError("e1 and e2 must be >= 0");
    }
    if (!std::isfinite(q)) {
      throw ConfigError("q must be finite");
    }
    validate_numerics();
    (void)spec();
  }

  void validate_numerics() const {
    if (!(fd_step > 0.0) || !std::isfinite(fd_step)) {
      throw ConfigError("fd_step must be > 0");
    }
    if (!(hbar > 0.0) || !std::isfinite(hbar)) {
      throw ConfigError("hbar must be > 0");
    }
    (void)grid.to_grid();
  }
};

struct DerivOptions {
  std::string function = "x";
  Side side = Side::left;
  std::size_t node_stride = 0;  // 0 picks a stride giving about 16 node rows
};

struct SweepOptions {
  std::string parameter;
  std::vector<double> values;
};

/// "lo,hi,steps" as an evenly spaced list including both ends.
inline std::vector<double> parse_range(const std::string& text) {
  const std::vector<double> p = parse_number_list(text);
  if (p.size() != 3 || p[2] < 1.0 || std::floor(p[2]) != p[2]) {
    throw ConfigError("--range expects lo,hi,steps with integer steps >= 1");
  }
  const auto steps = static_cast<std::size_t>(p[2]);
  std::vector<double> out;
  for (std::size_t i = 0; i < steps; ++i) {
    out.push_back(steps == 1 ? p[0] : p[0] + (p[1] - p[0]) * static_cast<double>(i) / static_cast<double>(steps - 1));
  }
  return out;
}

}  // namespace fwkb::app
