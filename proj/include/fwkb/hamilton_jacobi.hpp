#pragma once

/**
 * @file hamilton_jacobi.hpp
 * @brief Separation of the fractional Hamilton-Jacobi equation H + dS/dt = 0.
 *
 * With transformed coordinates u1 = aD_t^(alpha-1) q and u2 = tD_b^(beta-1) q the
 * principal function of the supported family separates as
 *
 *     S = W1(u1; E1) + W2(u2; E2) - (E1 + E2) t
 *     W1 = (l_a + sqrt(c_a (v q^2 + 2 E1))) u1
 *     W2 = (l_b + sqrt(2 c_b E2)) u2
 *
 * q inside the first radical is a frozen parameter carried by TransformedPoint; it is
 * never differentiated against u1. The potential term is absorbed by the E1 branch and
 * the positive square-root branch is always taken.
 */

#include <cmath>
#include <optional>
#include <string>

#include "fwkb/errors.hpp"
#include "fwkb/fracops.hpp"
#include "fwkb/mechanics.hpp"

namespace fwkb {

class EnergyPartition {
 public:
  EnergyPartition(double e1, double e2) : e1_(e1), e2_(e2), total_(e1 + e2) {
    if (!std::isfinite(e1) || !std::isfinite(e2)) {
      throw DomainError("energies must be finite");
    }
    if (e1 < 0.0 || e2 < 0.0) {
      throw DomainError("energies must be >= 0, got e1=" + std::to_string(e1) + " e2=" + std::to_string(e2));
    }
  }

  double e1() const { return e1_; }
  double e2() const { return e2_; }
  double total() const { return total_; }

 private:
  double e1_;
  double e2_;
  double total_;
};

/// Evaluation point (u1, u2, t) plus the frozen coordinate parameter q.
struct TransformedPoint {
  double u1 = 0.0;
  double u2 = 0.0;
  double t = 0.0;
  double q = 0.0;
};

struct LambdaConstants {
  double lambda1 = 0.0;
  double lambda2 = 0.0;
};

class PrincipalFunction {
 public:
  PrincipalFunction(LagrangianSpec spec, EnergyPartition energies) : spec_(spec), energies_(energies) {}

  const LagrangianSpec& spec() const { return spec_; }
  const EnergyPartition& energies() const { return energies_; }

  double w1_radicand(double q) const { return spec_.c_alpha() * (spec_.v() * q * q + 2.0 * energies_.e1()); }
  double w2_radicand() const { return spec_.c_beta() * 2.0 * energies_.e2(); }

  /// dW1/du1 at frozen q; throws ForbiddenRegionError if the slope is imaginary.
  double w1_slope(double q) const {
    const double r = w1_radicand(q);
    if (!(r >= 0.0)) {
      throw ForbiddenRegionError("W1 slope is imaginary at q=" + std::to_string(q) +
                                 " (classically forbidden region)");
    }
    return spec_.l_alpha() + std::sqrt(r);
  }

  double w2_slope() const { return spec_.l_beta() + std::sqrt(w2_radicand()); }

  double w1(double u1, double q) const { return w1_slope(q) * u1; }
  double w2(double u2) const { return w2_slope() * u2; }

 private:
  LagrangianSpec spec_;
  EnergyPartition energies_;
};

/**
 * Solves H + dS/dt = 0 by separation with time dependence -(E1 + E2) t.
 *
 * q_extent is the largest |q| the caller intends to evaluate at. With v >= 0 every q is
 * allowed; for v < 0 the W1 radicand turns negative once v q^2 < -2 E1, and a
 * ForbiddenRegionError is thrown if that happens inside |q| <= q_extent.
 */
inline PrincipalFunction separate(const LagrangianSpec& spec, const EnergyPartition& energies,
                                  double q_extent = 0.0) {
  PrincipalFunction pf(spec, energies);
  (void)pf.w1_slope(spec.v() < 0.0 ? q_extent : 0.0);
  return pf;
}

inline double evaluate_S(const PrincipalFunction& pf, const TransformedPoint& p) {
  return pf.w1_slope(p.q) * p.u1 + pf.w2_slope() * p.u2 - pf.energies().total() * p.t;
}

/// P_alpha = dW1/du1, P_beta = dW2/du2.
inline Momenta momenta_from_S(const PrincipalFunction& pf, const TransformedPoint& p) {
  return {pf.w1_slope(p.q), pf.w2_slope()};
}

/// lambda1 = dW1/dE1, lambda2 = dW2/dE2 at the point.
inline LambdaConstants lambda_constants(const PrincipalFunction& pf, const TransformedPoint& p) {
  const double r1 = pf.w1_radicand(p.q);
  const double r2 = pf.w2_radicand();
  if (!(r1 > 0.0) || !(r2 > 0.0)) {
    throw ZeroEnergyError("lambda constants need strictly positive radicands, got " + std::to_string(r1) + " and " +
                          std::to_string(r2));
  }
  return {pf.spec().c_alpha() * p.u1 / std::sqrt(r1), pf.spec().c_beta() * p.u2 / std::sqrt(r2)};
}

/// H(momenta_from_S, q) + dS/dt; zero for any valid separation.
inline double hj_residual(const PrincipalFunction& pf, const TransformedPoint& p) {
  return legendre_transform(pf.spec(), momenta_from_S(pf, p), p.q) - pf.energies().total();
}

/// Transformed coordinates along a sampled trajectory q(t).
struct TransformedTrajectory {
  SampledFunction q;
  DerivativeSamples u1;
  DerivativeSamples u2;

  bool has_point(std::size_t j) const { return !u1.is_divergent(j) && !u2.is_divergent(j); }

  std::optional<TransformedPoint> point(std::size_t j) const {
    if (!has_point(j)) {
      return std::nullopt;
    }
    return TransformedPoint{u1[j], u2[j], q.grid().node(j), q[j]};
  }
};

/// Derivative of order (order - 1) on the given side; order 1 gives the identity.
inline DerivativeSamples reduced_order_derivative(const SampledFunction& q, const FractionalOrder& order, Side side) {
  const double reduced = order.value() - 1.0;
  if (reduced < 0.0) {
    throw DomainError("transformed coordinates need order >= 1");
  }
  if (reduced == 0.0) {
    return DerivativeSamples(q.grid(), std::vector<double>(q.values().begin(), q.values().end()));
  }
  return rl_derivative(q, FractionalOrder(reduced), side);
}

/// u1 = aD_t^(alpha-1) q and u2 = tD_b^(beta-1) q on every node of q's grid.
inline TransformedTrajectory transform_trajectory(const SampledFunction& q, const LagrangianSpec& spec) {
  return {q, reduced_order_derivative(q, spec.alpha(), Side::left),
          reduced_order_derivative(q, spec.beta(), Side::right)};
}

}  // namespace fwkb
