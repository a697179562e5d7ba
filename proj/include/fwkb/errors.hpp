#pragma once

#include <stdexcept>
#include <string>

namespace fwkb {

/// Base class for every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Gamma function evaluated at a non-positive integer.
class PoleError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the mathematical domain of an operation (negative order, negative exponent, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Grid with too few intervals or an empty interval.
class GridError : public Error {
 public:
  using Error::Error;
};

class NonFiniteInputError : public Error {
 public:
  using Error::Error;
};

/// Lagrangian coefficients or orders outside the supported family.
class InvalidSpecError : public Error {
 public:
  using Error::Error;
};

/// A characteristic-function slope would be imaginary (classically forbidden region).
class ForbiddenRegionError : public Error {
 public:
  using Error::Error;
};

/// Derivative of a square-root slope requested where its radicand vanishes.
class ZeroEnergyError : public Error {
 public:
  using Error::Error;
};

/// The 1/sqrt(p_alpha p_beta) amplitude is undefined.
class NonPositiveMomentumError : public Error {
 public:
  using Error::Error;
};

/// Finite-difference step does not resolve the phase of the wave function.
class StepTooLargeError : public Error {
 public:
  using Error::Error;
};

/// Bad command line, config file, or tolerance override.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace fwkb
