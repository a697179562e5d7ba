#include "fwkb/hamilton_jacobi.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using fwkb::EnergyPartition;
using fwkb::LagrangianCoefficients;
using fwkb::LagrangianSpec;
using fwkb::PrincipalFunction;
using fwkb::TransformedPoint;

namespace {

PrincipalFunction ex1(double e1, double e2) { return fwkb::separate(LagrangianSpec::example1(), {e1, e2}); }
PrincipalFunction ex2(double e1, double e2) { return fwkb::separate(LagrangianSpec::example2(), {e1, e2}); }

}  // namespace

TEST(EnergyPartition, RejectsNegativeAndNonFinite) {
  EXPECT_THROW(EnergyPartition(-0.1, 1.0), fwkb::DomainError);
  EXPECT_THROW(EnergyPartition(1.0, -1e-9), fwkb::DomainError);
  EXPECT_THROW(EnergyPartition(INFINITY, 1.0), fwkb::DomainError);
  EXPECT_DOUBLE_EQ(EnergyPartition(0.25, 0.5).total(), 0.75);
}

TEST(Separate, SlopesOfBothFamilies) {
  for (const double e : {0.0, 0.5, 2.0, 8.0}) {
    EXPECT_DOUBLE_EQ(ex1(e, e).w1_slope(0.0), std::sqrt(2 * e));
    EXPECT_DOUBLE_EQ(ex1(e, e).w1_slope(7.0), std::sqrt(2 * e));
    EXPECT_DOUBLE_EQ(ex1(e, e).w2_slope(), std::sqrt(2 * e));
    for (const double q : {0.0, 1.0, 3.0}) {
      EXPECT_DOUBLE_EQ(ex2(e, e).w1_slope(q), std::sqrt(q * q + 2 * e) + 1.0);
    }
    EXPECT_DOUBLE_EQ(ex2(e, e).w2_slope(), std::sqrt(2 * e) + 1.0);
  }
}

TEST(Separate, Examples) {
  const auto zero = ex1(0.0, 0.0);
  for (const double u : {-2.0, 0.0, 1.5}) {
    EXPECT_EQ(fwkb::evaluate_S(zero, {u, 2 * u, 0.0, 0.0}), 0.0);
  }
  EXPECT_DOUBLE_EQ(fwkb::evaluate_S(ex1(2.0, 0.5), {1.0, 1.0, 0.0, 0.0}), 3.0);
  EXPECT_DOUBLE_EQ(fwkb::evaluate_S(ex2(0.5, 0.5), {1.0, 1.0, 0.0, 0.0}), 4.0);
}

TEST(Separate, ActionMatchesIntegratedSlope) {
  // W1(u1) = int_0^u1 sqrt(2 E1) du by the trapezoid rule; exact for a constant integrand.
  const auto pf = ex1(2.0, 0.5);
  const int n = 1000;
  double w1 = 0.0;
  for (int i = 0; i < n; ++i) {
    w1 += 0.5 * (std::sqrt(2 * 2.0) + std::sqrt(2 * 2.0)) / n;
  }
  EXPECT_NEAR(pf.w1(1.0, 0.0) + pf.w2(1.0), w1 + std::sqrt(2 * 0.5), 1e-12);
}

TEST(EvaluateS, Examples) {
  EXPECT_EQ(fwkb::evaluate_S(ex2(1.0, 3.0), {0.0, 0.0, 0.0, 2.0}), 0.0);
  EXPECT_NEAR(fwkb::evaluate_S(ex1(1.0, 1.0), {1.0, 1.0, 1.0, 0.0}), 2 * std::sqrt(2.0) - 2.0, 1e-15);
  EXPECT_NEAR(fwkb::evaluate_S(ex1(1.0, 1.0), {1.0, 1.0, 1.0, 0.0}), 0.8284271, 1e-7);
  EXPECT_NEAR(fwkb::evaluate_S(ex2(4.0, 0.0), {2.0, 0.0, 0.0, 3.0}), 10.2462113, 1e-7);
}

TEST(MomentaFromS, Examples) {
  EXPECT_DOUBLE_EQ(fwkb::momenta_from_S(ex1(2.0, 1.0), {}).p_alpha, 2.0);
  EXPECT_DOUBLE_EQ(fwkb::momenta_from_S(ex2(0.5, 1.0), {0.0, 0.0, 0.0, 0.0}).p_alpha, 2.0);
  EXPECT_DOUBLE_EQ(fwkb::momenta_from_S(ex2(1.0, 0.0), {}).p_beta, 1.0);
}

TEST(LambdaConstants, Examples) {
  EXPECT_DOUBLE_EQ(fwkb::lambda_constants(ex1(0.5, 1.0), {1.0, 0.0, 0.0, 0.0}).lambda1, 1.0);
  EXPECT_EQ(fwkb::lambda_constants(ex1(2.0, 1.0), {0.0, 0.0, 0.0, 0.0}).lambda1, 0.0);
  EXPECT_DOUBLE_EQ(fwkb::lambda_constants(ex2(0.5, 1.0), {3.0, 0.0, 0.0, 0.0}).lambda1, 3.0);
  EXPECT_THROW(fwkb::lambda_constants(ex1(0.0, 1.0), {1.0, 1.0, 0.0, 0.0}), fwkb::ZeroEnergyError);
  EXPECT_THROW(fwkb::lambda_constants(ex1(1.0, 0.0), {1.0, 1.0, 0.0, 0.0}), fwkb::ZeroEnergyError);
}

TEST(HjResidual, Examples) {
  for (const TransformedPoint p : {TransformedPoint{0.3, -1.0, 2.0, 0.0}, TransformedPoint{5.0, 2.0, 0.0, 0.0}}) {
    EXPECT_NEAR(fwkb::hj_residual(ex1(2.0, 0.5), p), 0.0, 1e-15);
  }
  EXPECT_NEAR(fwkb::hj_residual(ex2(1.0, 1.0), {1.0, 1.0, 1.0, 2.0}), 0.0, 1e-14);
  EXPECT_EQ(fwkb::hj_residual(ex2(0.0, 0.0), {1.0, 1.0, 1.0, 0.0}), 0.0);
}

TEST(HjResidual, VanishesOnRandomSeparableFamilies) {
  std::mt19937_64 rng(20240917);
  std::uniform_real_distribution<double> pos(0.2, 3.0), any(-2.0, 2.0), energy(0.0, 10.0), coord(-3.0, 3.0);
  for (int i = 0; i < 1000; ++i) {
    const LagrangianSpec spec(LagrangianCoefficients{pos(rng), pos(rng), any(rng), any(rng), pos(rng)},
                              fwkb::FractionalOrder(1.5), fwkb::FractionalOrder(1.5));
    const auto pf = fwkb::separate(spec, {energy(rng), energy(rng)});
    const TransformedPoint p{coord(rng), coord(rng), coord(rng), coord(rng)};
    EXPECT_LE(std::abs(fwkb::hj_residual(pf, p)), 1e-12 * (1.0 + pf.energies().total()));
  }
}

TEST(PrincipalFunction, PartialDerivativesMatchFiniteDifferences) {
  const auto pf = ex2(1.3, 0.7);
  const TransformedPoint p{0.4, -0.8, 0.6, 1.1};
  const double h = 1e-5;
  const auto S = [&](TransformedPoint x) { return fwkb::evaluate_S(pf, x); };
  auto shifted = [&](double du1, double du2, double dt) {
    return TransformedPoint{p.u1 + du1, p.u2 + du2, p.t + dt, p.q};
  };
  const auto m = fwkb::momenta_from_S(pf, p);
  EXPECT_NEAR((S(shifted(h, 0, 0)) - S(shifted(-h, 0, 0))) / (2 * h), m.p_alpha, 1e-8);
  EXPECT_NEAR((S(shifted(0, h, 0)) - S(shifted(0, -h, 0))) / (2 * h), m.p_beta, 1e-8);
  EXPECT_NEAR((S(shifted(0, 0, h)) - S(shifted(0, 0, -h))) / (2 * h), -pf.energies().total(), 1e-8);
}

TEST(LambdaConstants, MatchEnergyDerivativesOfS) {
  const auto spec = LagrangianSpec::example2();
  const TransformedPoint p{1.7, -0.6, 0.0, 0.8};
  const double e1 = 1.2;
  const double e2 = 0.9;
  const double h = 1e-6;
  const auto S = [&](double a, double b) { return fwkb::evaluate_S(fwkb::separate(spec, {a, b}), p); };
  // S includes -(E1+E2)t; t = 0 so dS/dE equals dW/dE.
  const auto lam = fwkb::lambda_constants(fwkb::separate(spec, {e1, e2}), p);
  EXPECT_NEAR((S(e1 + h, e2) - S(e1 - h, e2)) / (2 * h), lam.lambda1, 1e-6);
  EXPECT_NEAR((S(e1, e2 + h) - S(e1, e2 - h)) / (2 * h), lam.lambda2, 1e-6);
}

TEST(Separate, ForbiddenRegionForAttractivePotential) {
  const LagrangianSpec spec(LagrangianCoefficients{1.0, 1.0, 0.0, 0.0, -1.0}, fwkb::FractionalOrder(1.5),
                            fwkb::FractionalOrder(1.5));
  // v q^2 + 2 E1 < 0 once |q| > sqrt(2 E1) = 1
  EXPECT_NO_THROW(fwkb::separate(spec, {0.5, 1.0}, 0.9));
  EXPECT_THROW(fwkb::separate(spec, {0.5, 1.0}, 1.5), fwkb::ForbiddenRegionError);
  const auto pf = fwkb::separate(spec, {0.5, 1.0});
  EXPECT_THROW(fwkb::evaluate_S(pf, {1.0, 1.0, 0.0, 2.0}), fwkb::ForbiddenRegionError);
}

TEST(TransformTrajectory, OrderOneIsIdentity) {
  const fwkb::TimeGrid g(0.0, 1.0, 32);
  const auto q = fwkb::SampledFunction::sample(g, [](double t) { return 0.3 + t * t; });
  const auto traj = fwkb::transform_trajectory(q, LagrangianSpec::example1(1.0, 1.0));
  for (std::size_t j = 0; j < g.node_count(); ++j) {
    ASSERT_TRUE(traj.has_point(j));
    const auto p = *traj.point(j);
    EXPECT_EQ(p.u1, q[j]);
    EXPECT_EQ(p.u2, q[j]);
    EXPECT_EQ(p.t, g.node(j));
  }
}

TEST(TransformTrajectory, FractionalCoordinatesFollowPowerRule) {
  const fwkb::TimeGrid g(0.0, 1.0, 2048);
  const auto q = fwkb::SampledFunction::sample(g, [](double t) { return t * t; });
  const auto traj = fwkb::transform_trajectory(q, LagrangianSpec::example1(1.5, 1.5));
  EXPECT_FALSE(traj.has_point(0));
  EXPECT_FALSE(traj.has_point(g.count()));
  EXPECT_FALSE(traj.point(0).has_value());
  const std::size_t mid = g.count() / 2;
  const fwkb::FractionalOrder half(0.5);
  EXPECT_NEAR(traj.u1[mid], fwkb::rl_power_rule(2, half, 0.5), 1e-5);
  const std::vector<double> coeffs = {0.0, 0.0, 1.0};
  EXPECT_NEAR(traj.u2[mid], fwkb::rl_polynomial_rule(coeffs, half, g, 0.5, fwkb::Side::right), 1e-3);
  EXPECT_THROW(fwkb::reduced_order_derivative(q, fwkb::FractionalOrder(0.5), fwkb::Side::left), fwkb::DomainError);
}
