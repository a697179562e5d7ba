#pragma once

// Quadratic-plus-linear fractional Lagrangians
//
//   L = (c_a/2)(aD_t^a q)^2 + (c_b/2)(tD_b^b q)^2 + l_a aD_t^a q + l_b tD_b^b q + (v/2) q^2
//
// their canonical momenta, the Legendre transform to H(q, p_a, p_b), and the
// partial derivatives of H. Fractional derivatives enter only as state values.

#include <cmath>
#include <string>

#include "fwkb/errors.hpp"
#include "fwkb/fracops.hpp"

namespace fwkb {

struct LagrangianCoefficients {
  double c_alpha = 1.0;
  double c_beta = 1.0;
  double l_alpha = 0.0;
  double l_beta = 0.0;
  double v = 0.0;

  friend bool operator==(const LagrangianCoefficients&, const LagrangianCoefficients&) = default;
};

class LagrangianSpec {
 public:
  LagrangianSpec(LagrangianCoefficients coeffs, FractionalOrder alpha, FractionalOrder beta)
      : coeffs_(coeffs), alpha_(alpha), beta_(beta) {
    const auto finite = [](double x) { return std::isfinite(x); };
    if (!finite(coeffs.c_alpha) || !finite(coeffs.c_beta) || !finite(coeffs.l_alpha) || !finite(coeffs.l_beta) ||
        !finite(coeffs.v)) {
      throw InvalidSpecError("Lagrangian coefficients must be finite");
    }
    if (!(coeffs.c_alpha > 0.0) || !(coeffs.c_beta > 0.0)) {
      throw InvalidSpecError("quadratic coefficients must be > 0 for an invertible Legendre transform");
    }
    if (alpha.value() < 1.0 || beta.value() < 1.0) {
      throw InvalidSpecError("orders must satisfy alpha, beta >= 1, got alpha=" + std::to_string(alpha.value()) +
                             " beta=" + std::to_string(beta.value()));
    }
  }

  /// L = 1/2 (D^a q)^2 + 1/2 (D^b q)^2
  static LagrangianSpec example1(double alpha = 1.5, double beta = 1.5) {
    return {LagrangianCoefficients{1.0, 1.0, 0.0, 0.0, 0.0}, FractionalOrder(alpha), FractionalOrder(beta)};
  }

  /// L = 1/2 (D^a q)^2 + 1/2 (D^b q)^2 + D^a q + D^b q + 1/2 q^2
  static LagrangianSpec example2(double alpha = 1.5, double beta = 1.5) {
    return {LagrangianCoefficients{1.0, 1.0, 1.0, 1.0, 1.0}, FractionalOrder(alpha), FractionalOrder(beta)};
  }

  const LagrangianCoefficients& coefficients() const { return coeffs_; }
  double c_alpha() const { return coeffs_.c_alpha; }
  double c_beta() const { return coeffs_.c_beta; }
  double l_alpha() const { return coeffs_.l_alpha; }
  double l_beta() const { return coeffs_.l_beta; }
  double v() const { return coeffs_.v; }
  const FractionalOrder& alpha() const { return alpha_; }
  const FractionalOrder& beta() const { return beta_; }

  friend bool operator==(const LagrangianSpec&, const LagrangianSpec&) = default;

 private:
  LagrangianCoefficients coeffs_;
  FractionalOrder alpha_;
  FractionalOrder beta_;
};

struct KinematicState {
  double q = 0.0;
  double d_alpha_q = 0.0;  // aD_t^alpha q
  double d_beta_q = 0.0;   // tD_b^beta q
};

struct Momenta {
  double p_alpha = 0.0;
  double p_beta = 0.0;
};

struct HamiltonRhs {
  double dH_dp_alpha = 0.0;
  double dH_dp_beta = 0.0;
  double dH_dq = 0.0;
};

inline double lagrangian(const LagrangianSpec& spec, const KinematicState& s) {
  return 0.5 * spec.c_alpha() * s.d_alpha_q * s.d_alpha_q + 0.5 * spec.c_beta() * s.d_beta_q * s.d_beta_q +
         spec.l_alpha() * s.d_alpha_q + spec.l_beta() * s.d_beta_q + 0.5 * spec.v() * s.q * s.q;
}

/// p = dL/dD q for each fractional velocity.
inline Momenta canonical_momenta(const LagrangianSpec& spec, const KinematicState& s) {
  return {spec.c_alpha() * s.d_alpha_q + spec.l_alpha(), spec.c_beta() * s.d_beta_q + spec.l_beta()};
}

/// Inverse of canonical_momenta: recovers the fractional velocities at coordinate q.
inline KinematicState velocities_from_momenta(const LagrangianSpec& spec, const Momenta& p, double q) {
  return {q, (p.p_alpha - spec.l_alpha()) / spec.c_alpha(), (p.p_beta - spec.l_beta()) / spec.c_beta()};
}

/// H = (p_a - l_a)^2/(2 c_a) + (p_b - l_b)^2/(2 c_b) - (v/2) q^2
inline double legendre_transform(const LagrangianSpec& spec, const Momenta& p, double q) {
  const double da = p.p_alpha - spec.l_alpha();
  const double db = p.p_beta - spec.l_beta();
  return da * da / (2.0 * spec.c_alpha()) + db * db / (2.0 * spec.c_beta()) - 0.5 * spec.v() * q * q;
}

inline HamiltonRhs hamilton_rhs(const LagrangianSpec& spec, const Momenta& p, double q) {
  return {(p.p_alpha - spec.l_alpha()) / spec.c_alpha(), (p.p_beta - spec.l_beta()) / spec.c_beta(), -spec.v() * q};
}

}  // namespace fwkb
