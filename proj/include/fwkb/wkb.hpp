#pragma once

/**
 * @file wkb.hpp
 * @brief Fractional WKB wave function and finite-difference operator checks.
 *
 *     psi(u1, u2, t) = exp(i S(u1, u2, t) / hbar) / sqrt(P_alpha P_beta)
 *
 * with momentum operators P = (hbar/i) d/du acting on the transformed coordinates.
 * Momenta are the analytic slopes at frozen q, so the amplitude is constant in u1 and
 * u2 and psi is an exact eigenfunction of both momenta and of H; the finite-difference
 * estimates below carry only stencil error, O(h^2).
 *
 * Stencils are evaluated in long double. The three-point second difference loses
 * about eps/h^2 to cancellation, which at h = 1e-4 would otherwise leave an O(1e-8)
 * spurious imaginary part on the energy estimate.
 */

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "fwkb/errors.hpp"
#include "fwkb/fracops.hpp"
#include "fwkb/hamilton_jacobi.hpp"
#include "fwkb/mechanics.hpp"
#include "fwkb/report.hpp"

namespace fwkb {

enum class MomentumComponent { alpha, beta };

inline const char* to_string(MomentumComponent c) { return c == MomentumComponent::alpha ? "alpha" : "beta"; }

/// Largest allowed h |p| / hbar for a finite-difference operator.
inline constexpr double kPhaseResolutionLimit = 0.1;

class WaveField {
 public:
  WaveField(PrincipalFunction pf, double hbar) : pf_(pf), hbar_(hbar) {
    if (!std::isfinite(hbar) || !(hbar > 0.0)) {
      throw DomainError("hbar must be finite and > 0");
    }
    if (!(pf_.w2_slope() > 0.0)) {
      throw NonPositiveMomentumError("P_beta = " + std::to_string(pf_.w2_slope()) + " is not positive");
    }
  }

  const PrincipalFunction& principal_function() const { return pf_; }
  double hbar() const { return hbar_; }

  /// Momenta at the point; both must be strictly positive for the amplitude to exist.
  Momenta momenta(const TransformedPoint& p) const {
    const Momenta m = momenta_from_S(pf_, p);
    if (!(m.p_alpha > 0.0) || !(m.p_beta > 0.0)) {
      throw NonPositiveMomentumError("amplitude 1/sqrt(P_alpha P_beta) undefined for P_alpha=" +
                                     std::to_string(m.p_alpha) + ", P_beta=" + std::to_string(m.p_beta));
    }
    return m;
  }

  double prefactor(const TransformedPoint& p) const {
    const Momenta m = momenta(p);
    return 1.0 / std::sqrt(m.p_alpha * m.p_beta);
  }

  std::complex<double> operator()(const TransformedPoint& p) const { return value_shifted<double>(p, 0.0, 0.0); }

  /// psi at (u1 + du1, u2 + du2, t), computed entirely in Real.
  template <class Real>
  std::complex<Real> value_shifted(const TransformedPoint& p, Real du1, Real du2) const {
    (void)momenta(p);
    const LagrangianSpec& spec = pf_.spec();
    const Real q = p.q;
    const Real s1 = Real(spec.l_alpha()) +
                    std::sqrt(Real(spec.c_alpha()) * (Real(spec.v()) * q * q + Real(2) * Real(pf_.energies().e1())));
    const Real s2 = Real(spec.l_beta()) + std::sqrt(Real(spec.c_beta()) * Real(2) * Real(pf_.energies().e2()));
    const Real action = s1 * (Real(p.u1) + du1) + s2 * (Real(p.u2) + du2) - Real(pf_.energies().total()) * Real(p.t);
    const Real amplitude = Real(1) / std::sqrt(s1 * s2);
    const Real phase = action / Real(hbar_);
    return {amplitude * std::cos(phase), amplitude * std::sin(phase)};
  }

 private:
  PrincipalFunction pf_;
  double hbar_;
};

inline WaveField build_wavefunction(const PrincipalFunction& pf, double hbar = 1.0) { return WaveField(pf, hbar); }

struct OperatorResult {
  std::complex<double> raw;                  // operator applied to psi
  std::complex<double> eigenvalue_estimate;  // raw / psi
  double residual = 0.0;                     // |estimate - analytic eigenvalue|
};

namespace detail {

using Extended = long double;

inline void check_step(double h, double largest_momentum, double hbar) {
  if (!std::isfinite(h) || !(h > 0.0)) {
    throw DomainError("finite-difference step must be > 0");
  }
  const double resolution = h * std::abs(largest_momentum) / hbar;
  if (resolution > kPhaseResolutionLimit) {
    throw StepTooLargeError("h |p| / hbar = " + std::to_string(resolution) + " exceeds " +
                            std::to_string(kPhaseResolutionLimit));
  }
}

struct Stencil {
  std::complex<Extended> center;
  std::complex<Extended> first;   // P psi = (hbar/i) dpsi/du
  std::complex<Extended> second;  // P^2 psi = -hbar^2 d2psi/du2
};

inline Stencil momentum_stencil(const WaveField& wf, MomentumComponent which, const TransformedPoint& p, double h) {
  const Extended step = h;
  const Extended hbar = wf.hbar();
  const bool along_u1 = which == MomentumComponent::alpha;
  const auto at = [&](Extended offset) {
    return along_u1 ? wf.value_shifted<Extended>(p, offset, 0) : wf.value_shifted<Extended>(p, 0, offset);
  };
  const std::complex<Extended> center = at(0);
  const std::complex<Extended> plus = at(step);
  const std::complex<Extended> minus = at(-step);
  const std::complex<Extended> minus_i(0, -1);
  return {center, minus_i * hbar * (plus - minus) / (Extended(2) * step),
          -hbar * hbar * (plus - Extended(2) * center + minus) / (step * step)};
}

}  // namespace detail

/// (hbar/i) dpsi/du by central differences; residual against the analytic momentum.
inline OperatorResult apply_momentum(const WaveField& wf, MomentumComponent which, const TransformedPoint& p,
                                     double h) {
  const Momenta m = wf.momenta(p);
  const double expected = which == MomentumComponent::alpha ? m.p_alpha : m.p_beta;
  detail::check_step(h, expected, wf.hbar());
  const detail::Stencil s = detail::momentum_stencil(wf, which, p, h);
  const std::complex<detail::Extended> estimate = s.first / s.center;
  const std::complex<double> est(static_cast<double>(estimate.real()), static_cast<double>(estimate.imag()));
  return {std::complex<double>(static_cast<double>(s.first.real()), static_cast<double>(s.first.imag())), est,
          std::abs(est - expected)};
}

/**
 * H psi with H = sum_c (P_c - l_c)^2 / (2 c_c) - (v/2) q^2, the square expanded as
 * P^2 - 2 l P + l^2 acting term by term. P^2 uses the three-point second difference.
 */
inline OperatorResult apply_hamiltonian(const WaveField& wf, const LagrangianSpec& spec, const TransformedPoint& p,
                                        double h) {
  using detail::Extended;
  const Momenta m = wf.momenta(p);
  detail::check_step(h, std::max(std::abs(m.p_alpha), std::abs(m.p_beta)), wf.hbar());
  const detail::Stencil sa = detail::momentum_stencil(wf, MomentumComponent::alpha, p, h);
  const detail::Stencil sb = detail::momentum_stencil(wf, MomentumComponent::beta, p, h);
  const std::complex<Extended> psi = sa.center;

  const auto branch = [&](const detail::Stencil& s, double l, double c) {
    const Extended ll = l;
    return (s.second - Extended(2) * ll * s.first + ll * ll * psi) / (Extended(2) * Extended(c));
  };
  const Extended q = p.q;
  const std::complex<Extended> h_psi = branch(sa, spec.l_alpha(), spec.c_alpha()) +
                                       branch(sb, spec.l_beta(), spec.c_beta()) -
                                       Extended(0.5) * Extended(spec.v()) * q * q * psi;
  const std::complex<Extended> estimate = h_psi / psi;
  const std::complex<double> est(static_cast<double>(estimate.real()), static_cast<double>(estimate.imag()));
  return {std::complex<double>(static_cast<double>(h_psi.real()), static_cast<double>(h_psi.imag())), est,
          std::abs(est - wf.principal_function().energies().total())};
}

/// |psi|^2, which equals 1 / (P_alpha P_beta).
inline double probability_density(const WaveField& wf, const TransformedPoint& p) { return std::norm(wf(p)); }

struct ClassicalLimitReport {
  std::vector<ReportRecord> records;

  bool passed() const { return all_pass(records); }
};

/**
 * At alpha = beta = 1 the transformed coordinates are order-zero derivatives of q, so
 * u1 = u2 = q and S collapses to (P_alpha + P_beta) q - E t. Checks both along a sample
 * trajectory, then the momentum and energy eigenvalues when the wave function exists.
 */
inline ClassicalLimitReport classical_limit_check(const LagrangianSpec& spec, const EnergyPartition& energies,
                                                  double hbar, double fd_step, double tolerance) {
  if (spec.alpha().value() != 1.0 || spec.beta().value() != 1.0) {
    throw DomainError("classical limit check requires alpha = beta = 1");
  }
  const TimeGrid grid(0.0, 1.0, 64);
  const SampledFunction q = SampledFunction::sample(grid, [](double t) { return 0.3 + t - 0.5 * t * t; });
  const TransformedTrajectory traj = transform_trajectory(q, spec);
  const PrincipalFunction pf = separate(spec, energies);

  double u1_dev = 0.0;
  double u2_dev = 0.0;
  double s_dev = 0.0;
  for (std::size_t j = 0; j < grid.node_count(); ++j) {
    u1_dev = std::max(u1_dev, std::abs(traj.u1[j] - q[j]));
    u2_dev = std::max(u2_dev, std::abs(traj.u2[j] - q[j]));
    const TransformedPoint pt{traj.u1[j], traj.u2[j], grid.node(j), q[j]};
    const Momenta m = momenta_from_S(pf, pt);
    const double ordinary = (m.p_alpha + m.p_beta) * q[j] - energies.total() * grid.node(j);
    s_dev = std::max(s_dev, std::abs(evaluate_S(pf, pt) - ordinary));
  }

  ClassicalLimitReport report;
  report.records.push_back(ReportRecord::compare("classical_u1_equals_q", 0.0, u1_dev, tolerance));
  report.records.push_back(ReportRecord::compare("classical_u2_equals_q", 0.0, u2_dev, tolerance));
  report.records.push_back(ReportRecord::compare("classical_S_ordinary_form", 0.0, s_dev, tolerance));

  const TransformedPoint sample{q[grid.count() / 2], q[grid.count() / 2], grid.node(grid.count() / 2),
                                q[grid.count() / 2]};
  const Momenta m = momenta_from_S(pf, sample);
  if (m.p_alpha > 0.0 && m.p_beta > 0.0) {
    const WaveField wf = build_wavefunction(pf, hbar);
    const OperatorResult pa = apply_momentum(wf, MomentumComponent::alpha, sample, fd_step);
    const OperatorResult pb = apply_momentum(wf, MomentumComponent::beta, sample, fd_step);
    const OperatorResult en = apply_hamiltonian(wf, spec, sample, fd_step);
    report.records.push_back(
        ReportRecord::compare("classical_momentum_alpha", m.p_alpha, pa.eigenvalue_estimate.real(), tolerance));
    report.records.push_back(
        ReportRecord::compare("classical_momentum_beta", m.p_beta, pb.eigenvalue_estimate.real(), tolerance));
    report.records.push_back(
        ReportRecord::compare("classical_energy", energies.total(), en.eigenvalue_estimate.real(), tolerance));
  }
  return report;
}

}  // namespace fwkb
