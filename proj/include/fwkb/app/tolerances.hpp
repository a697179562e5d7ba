#pragma once

#include <cmath>
#include <cstdlib>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "fwkb/errors.hpp"

namespace fwkb::app {

/**
 * Named pass/fail thresholds. Every record compares a residual against one of these.
 *
 *   kernel             max interior error of the RL kernel vs the power rule
 *   kernel_refinement  largest allowed error ratio per grid doubling (2^-0.8, i.e. order >= 0.8)
 *   integer            integer-order kernel vs the ordinary derivative
 *   hj                 Hamilton-Jacobi residual
 *   slope              finite-difference slopes of S (S is linear, so only roundoff remains)
 *   lambda             finite-difference dW/dE vs lambda constants
 *   action             closed-form S vs evaluate_S
 *   eigenvalue         momentum and energy eigenvalue residuals
 *   energy_order       |ratio - 4| for the energy residual when the step halves
 *   probability        |psi|^2 P_alpha P_beta - 1
 *   imag               imaginary part of an eigenvalue estimate
 *   classical          residuals of the alpha = beta = 1 reduction
 */
class Tolerances {
 public:
  /// Thresholds used by the example, deriv and sweep commands.
  static Tolerances defaults() {
    Tolerances t;
    t.values_ = {
        {"kernel", 1e-3},        {"kernel_refinement", std::pow(2.0, -0.8)},
        {"integer", 1e-3},       {"hj", 1e-10},
        {"slope", 1e-8},         {"lambda", 1e-6},
        {"action", 1e-12},       {"eigenvalue", 1e-6},
        {"energy_order", 0.5},   {"probability", 1e-14},
        {"imag", 1e-8},          {"classical", 1e-6},
    };
    return t;
  }

  /// Thresholds of the acceptance suite; identical except for the tighter HJ bound.
  static Tolerances acceptance() {
    Tolerances t = defaults();
    t.values_["hj"] = 1e-12;
    return t;
  }

  double get(std::string_view name) const {
    const auto it = values_.find(std::string(name));
    if (it == values_.end()) {
      throw ConfigError("unknown tolerance '" + std::string(name) + "'");
    }
    return it->second;
  }

  void set(std::string_view name, double value) {
    const auto it = values_.find(std::string(name));
    if (it == values_.end()) {
      throw ConfigError("unknown tolerance '" + std::string(name) + "'");
    }
    if (!(value >= 0.0)) {
      throw ConfigError("tolerance '" + std::string(name) + "' must be >= 0");
    }
    it->second = value;
  }

  /// Applies an override written as NAME=VALUE.
  void apply(std::string_view assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string_view::npos || eq == 0) {
      throw ConfigError("tolerance override must look like NAME=VALUE, got '" + std::string(assignment) + "'");
    }
    const std::string name(assignment.substr(0, eq));
    const std::string text(assignment.substr(eq + 1));
    char* end = nullptr;
    const double value = std::strtod(text.c_str(), &end);
    if (text.empty() || end == nullptr || *end != '\0') {
      throw ConfigError("tolerance '" + name + "' has a non-numeric value '" + text + "'");
    }
    set(name, value);
  }

  std::vector<std::string> names() const {
    std::vector<std::string> out;
    for (const auto& [name, _] : values_) {
      out.push_back(name);
    }
    return out;
  }

 private:
  std::map<std::string, double> values_;
};

}  // namespace fwkb::app
