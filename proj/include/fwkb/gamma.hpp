#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "fwkb/errors.hpp"

namespace fwkb {

namespace detail {

// Lanczos coefficients for g = 7, nine terms.
inline constexpr double kLanczosG = 7.0;
inline constexpr std::array<double, 9> kLanczosCoefficients = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

inline bool is_nonpositive_integer(double x) { return x <= 0.0 && std::floor(x) == x; }

}  // namespace detail

/**
 * Gamma function via the Lanczos approximation, with the reflection formula
 * Gamma(x) Gamma(1-x) = pi / sin(pi x) for x < 1/2.
 *
 * Relative error stays below 1e-12 on [0.1, 50]. Throws PoleError at
 * non-positive integers.
 */
inline double gamma(double x) {
  if (std::isnan(x)) {
    throw DomainError("gamma: argument is NaN");
  }
  if (detail::is_nonpositive_integer(x)) {
    throw PoleError("gamma: pole at non-positive integer " + std::to_string(x));
  }
  if (x < 0.5) {
    return std::numbers::pi / (std::sin(std::numbers::pi * x) * gamma(1.0 - x));
  }

  const double z = x - 1.0;
  double series = detail::kLanczosCoefficients[0];
  for (std::size_t i = 1; i < detail::kLanczosCoefficients.size(); ++i) {
    series += detail::kLanczosCoefficients[i] / (z + static_cast<double>(i));
  }
  const double t = z + detail::kLanczosG + 0.5;
  // t^(z+1/2) is split in two halves so that x near the overflow limit survives.
  const double half_power = std::pow(t, 0.5 * (z + 0.5));
  return std::sqrt(2.0 * std::numbers::pi) * half_power * (half_power * std::exp(-t)) * series;
}

}  // namespace fwkb
