#pragma once

/**
 * @file acceptance.hpp
 * @brief The verification suite run by `fwkb verify` and the acceptance test binary.
 *
 * Each criterion produces records whose residual is compared to one named tolerance,
 * so zeroing any tolerance makes at least one record fail.
 */

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "fwkb/app/output.hpp"
#include "fwkb/app/tolerances.hpp"
#include "fwkb/fracops.hpp"
#include "fwkb/gamma.hpp"
#include "fwkb/hamilton_jacobi.hpp"
#include "fwkb/mechanics.hpp"
#include "fwkb/report.hpp"
#include "fwkb/wkb.hpp"

namespace fwkb::app {

struct CriterionResult {
  int id = 0;
  std::string title;
  std::vector<ReportRecord> records;

  bool passed() const { return !records.empty() && all_pass(records); }
};

namespace acceptance {

inline constexpr double kFdStep = 1e-4;
inline constexpr double kHbar = 1.0;
inline constexpr std::uint64_t kSeed = 20240917;

inline std::string fmt(const char* pattern, double a, double b = 0.0) {
  char buf[128];
  std::snprintf(buf, sizeof buf, pattern, a, b);
  return buf;
}

inline double power_kernel_error(double k, double alpha, std::size_t count) {
  const TimeGrid grid(0.0, 1.0, count);
  const FractionalOrder order(alpha);
  const SampledFunction f = SampledFunction::sample(grid, [&](double x) { return std::pow(x, k); });
  const DerivativeSamples d = left_rl_derivative(f, order);
  return max_interior_error(d, [&](double x) { return rl_power_rule(k, order, x); }, Side::left);
}

/// Kernel vs power rule for (x-a)^k; error at 4096 and reduction from 1024 to 8192.
inline CriterionResult kernel_oracle(const Tolerances& tol) {
  CriterionResult out{1, "fractional kernel vs power rule (count 4096, order >= 0.8 over 1024..8192)", {}};
  const double ratio_bound = std::pow(tol.get("kernel_refinement"), 3.0);
  for (const double k : {1.0, 2.0, 3.0}) {
    for (const double alpha : {0.25, 0.5, 0.75, 1.5}) {
      const double e1024 = power_kernel_error(k, alpha, 1024);
      const double e4096 = power_kernel_error(k, alpha, 4096);
      const double e8192 = power_kernel_error(k, alpha, 8192);
      out.records.push_back(
          ReportRecord::compare(fmt("c1.max_error[k=%g,alpha=%g]", k, alpha), 0.0, e4096, tol.get("kernel")));
      out.records.push_back(ReportRecord::compare(fmt("c1.error_ratio_1024_8192[k=%g,alpha=%g]", k, alpha), 0.0,
                                                  e8192 / e1024, ratio_bound));
    }
  }
  return out;
}

/// Integer orders vs the exact ordinary derivative of monomials.
inline CriterionResult integer_reduction(const Tolerances& tol) {
  CriterionResult out{2, "integer-order reduction to ordinary derivatives (count 4096)", {}};
  const TimeGrid grid(0.0, 1.0, 4096);
  const auto check = [&](double n, double k) {
    const SampledFunction f = SampledFunction::sample(grid, [&](double x) { return std::pow(x, k); });
    const DerivativeSamples d = left_rl_derivative(f, FractionalOrder(n));
    const double err = max_interior_error(
        d,
        [&](double x) {
          double coeff = 1.0;
          for (int i = 0; i < static_cast<int>(n); ++i) coeff *= (k - i);
          return k >= n ? coeff * std::pow(x, k - n) : 0.0;
        },
        Side::left, 0.0);
    out.records.push_back(ReportRecord::compare(fmt("c2.max_error[alpha=%g,k=%g]", n, k), 0.0, err, tol.get("integer")));
  };
  for (const double k : {1.0, 2.0, 3.0}) check(1.0, k);
  for (const double k : {2.0, 3.0}) check(2.0, k);
  return out;
}

/// H + dS/dt over randomized members of the family.
inline CriterionResult hj_sweep(const Tolerances& tol) {
  CriterionResult out{3, "Hamilton-Jacobi residual over 1000 random draws", {}};
  std::mt19937_64 rng(kSeed);
  std::uniform_real_distribution<double> coef(0.2, 3.0), lin(-2.0, 2.0), pot(-1.0, 2.0), ord(1.0, 3.0),
      energy(0.0, 5.0), coord(-3.0, 3.0), u(-5.0, 5.0), time(0.0, 5.0);
  double worst = 0.0;
  int draws = 0;
  while (draws < 1000) {
    const LagrangianSpec spec({coef(rng), coef(rng), lin(rng), lin(rng), pot(rng)}, FractionalOrder(ord(rng)),
                              FractionalOrder(ord(rng)));
    const EnergyPartition e(energy(rng), energy(rng));
    const double q = coord(rng);
    const TransformedPoint p{u(rng), u(rng), time(rng), q};
    const PrincipalFunction pf(spec, e);
    if (pf.w1_radicand(q) < 0.0) {
      continue;  // forbidden region, not part of the family
    }
    worst = std::max(worst, std::abs(hj_residual(pf, p)));
    ++draws;
  }
  out.records.push_back(ReportRecord::compare("c3.max_hj_residual", 0.0, worst, tol.get("hj")));
  return out;
}

/// Energy grid and evaluation points shared by the eigenvalue criteria.
inline const std::vector<double>& energy_levels() {
  static const std::vector<double> levels = {0.5, 1.0, 2.0, 8.0};
  return levels;
}

inline std::vector<TransformedPoint> probe_points(double q) {
  return {{0.3, 0.7, 0.2, q}, {1.1, -0.4, 0.9, q}, {-2.5, 3.2, 4.0, q}};
}

struct EigenStats {
  double p_alpha = 0.0;
  double p_beta = 0.0;
  double energy = 0.0;
  double imag = 0.0;
};

/// Max eigenvalue residuals for one model over the energy grid, the q values and the probe points.
inline EigenStats eigen_sweep(bool example2, double alpha, double beta, const std::vector<double>& qs) {
  EigenStats s;
  const LagrangianSpec spec = example2 ? LagrangianSpec::example2(alpha, beta) : LagrangianSpec::example1(alpha, beta);
  for (const double q : qs) {
    for (const double e1 : energy_levels()) {
      for (const double e2 : energy_levels()) {
        const PrincipalFunction pf = separate(spec, EnergyPartition(e1, e2), std::abs(q));
        const WaveField wf = build_wavefunction(pf, kHbar);
        const double expect_a = example2 ? std::sqrt(q * q + 2 * e1) + 1 : std::sqrt(2 * e1);
        const double expect_b = example2 ? std::sqrt(2 * e2) + 1 : std::sqrt(2 * e2);
        for (const TransformedPoint& p : probe_points(q)) {
          const auto pa = apply_momentum(wf, MomentumComponent::alpha, p, kFdStep).eigenvalue_estimate;
          const auto pb = apply_momentum(wf, MomentumComponent::beta, p, kFdStep).eigenvalue_estimate;
          const auto en = apply_hamiltonian(wf, spec, p, kFdStep).eigenvalue_estimate;
          s.p_alpha = std::max(s.p_alpha, std::abs(pa - expect_a));
          s.p_beta = std::max(s.p_beta, std::abs(pb - expect_b));
          s.energy = std::max(s.energy, std::abs(en - (e1 + e2)));
          s.imag = std::max({s.imag, std::abs(pa.imag()), std::abs(pb.imag()), std::abs(en.imag())});
        }
      }
    }
  }
  return s;
}

inline const std::vector<double>& example2_qs() {
  static const std::vector<double> qs = {0.0, 1.0, 2.0};
  return qs;
}

inline CriterionResult momentum_eigenvalues(const Tolerances& tol, double alpha = 1.5, double beta = 1.5,
                                            const char* prefix = "c4") {
  CriterionResult out{4, "momentum eigenvalues (fd_step 1e-4, hbar 1)", {}};
  const EigenStats ex1 = eigen_sweep(false, alpha, beta, {0.0});
  const EigenStats ex2 = eigen_sweep(true, alpha, beta, example2_qs());
  const std::string p(prefix);
  out.records.push_back(ReportRecord::compare(p + ".example1.p_alpha", 0.0, ex1.p_alpha, tol.get("eigenvalue")));
  out.records.push_back(ReportRecord::compare(p + ".example1.p_beta", 0.0, ex1.p_beta, tol.get("eigenvalue")));
  out.records.push_back(ReportRecord::compare(p + ".example2.p_alpha", 0.0, ex2.p_alpha, tol.get("eigenvalue")));
  out.records.push_back(ReportRecord::compare(p + ".example2.p_beta", 0.0, ex2.p_beta, tol.get("eigenvalue")));
  return out;
}

/// Energy residual at step h for a single configuration.
inline double energy_residual(bool example2, double e1, double e2, double q, double h) {
  const LagrangianSpec spec = example2 ? LagrangianSpec::example2() : LagrangianSpec::example1();
  const WaveField wf = build_wavefunction(separate(spec, EnergyPartition(e1, e2), std::abs(q)), kHbar);
  return apply_hamiltonian(wf, spec, TransformedPoint{0.3, 0.7, 0.2, q}, h).residual;
}

inline CriterionResult energy_eigenvalues(const Tolerances& tol, double alpha = 1.5, double beta = 1.5,
                                          const char* prefix = "c5") {
  CriterionResult out{5, "energy eigenvalues and O(h^2) convergence", {}};
  const EigenStats ex1 = eigen_sweep(false, alpha, beta, {0.0});
  const EigenStats ex2 = eigen_sweep(true, alpha, beta, example2_qs());
  const std::string p(prefix);
  out.records.push_back(ReportRecord::compare(p + ".example1.energy", 0.0, ex1.energy, tol.get("eigenvalue")));
  out.records.push_back(ReportRecord::compare(p + ".example2.energy", 0.0, ex2.energy, tol.get("eigenvalue")));
  // Halving a coarse step isolates truncation error from roundoff.
  const double ratio1 = energy_residual(false, 2.0, 1.0, 0.0, 1e-2) / energy_residual(false, 2.0, 1.0, 0.0, 5e-3);
  const double ratio2 = energy_residual(true, 2.0, 1.0, 1.0, 1e-2) / energy_residual(true, 2.0, 1.0, 1.0, 5e-3);
  out.records.push_back(ReportRecord::compare(p + ".example1.h_halving_ratio", 4.0, ratio1, tol.get("energy_order")));
  out.records.push_back(ReportRecord::compare(p + ".example2.h_halving_ratio", 4.0, ratio2, tol.get("energy_order")));
  return out;
}

inline CriterionResult probability_law(const Tolerances& tol) {
  CriterionResult out{6, "|psi|^2 P_alpha P_beta = 1 at 100 random points", {}};
  std::mt19937_64 rng(kSeed + 6);
  std::uniform_real_distribution<double> energy(0.1, 8.0), coord(-3.0, 3.0), u(-10.0, 10.0), time(0.0, 10.0);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const LagrangianSpec spec = (i % 2 == 0) ? LagrangianSpec::example1() : LagrangianSpec::example2();
    const double q = coord(rng);
    const PrincipalFunction pf = separate(spec, EnergyPartition(energy(rng), energy(rng)), std::abs(q));
    const WaveField wf = build_wavefunction(pf, kHbar);
    const TransformedPoint p{u(rng), u(rng), time(rng), q};
    const Momenta m = momenta_from_S(pf, p);
    worst = std::max(worst, std::abs(probability_density(wf, p) * m.p_alpha * m.p_beta - 1.0));
  }
  out.records.push_back(ReportRecord::compare("c6.max_probability_law_deviation", 0.0, worst, tol.get("probability")));
  return out;
}

inline CriterionResult classical_limit(const Tolerances& tol) {
  CriterionResult out{7, "classical limit alpha = beta = 1", {}};
  // Merge the per-case records of the structural check, keeping the largest residual per quantity.
  std::vector<ReportRecord> merged;
  for (const bool example2 : {false, true}) {
    const LagrangianSpec spec = example2 ? LagrangianSpec::example2(1.0, 1.0) : LagrangianSpec::example1(1.0, 1.0);
    for (const auto& [e1, e2] : {std::pair{0.5, 0.5}, std::pair{2.0, 1.0}, std::pair{8.0, 8.0}, std::pair{0.5, 0.0}}) {
      const ClassicalLimitReport report =
          classical_limit_check(spec, EnergyPartition(e1, e2), kHbar, kFdStep, tol.get("classical"));
      for (const ReportRecord& r : report.records) {
        const std::string name = std::string("c7.") + (example2 ? "example2." : "example1.") + r.quantity;
        auto it = std::find_if(merged.begin(), merged.end(), [&](const ReportRecord& m) { return m.quantity == name; });
        if (it == merged.end()) {
          merged.push_back(ReportRecord::compare(name, 0.0, r.residual, r.tolerance));
        } else if (r.residual > it->residual) {
          *it = ReportRecord::compare(name, 0.0, r.residual, r.tolerance);
        }
      }
    }
  }
  out.records = merged;
  // Eigenvalue criteria rerun unchanged at alpha = beta = 1.
  for (ReportRecord& r : momentum_eigenvalues(tol, 1.0, 1.0, "c7.c4").records) out.records.push_back(r);
  for (ReportRecord& r : energy_eigenvalues(tol, 1.0, 1.0, "c7.c5").records) out.records.push_back(r);
  return out;
}

inline CriterionResult imaginary_parts(const Tolerances& tol) {
  CriterionResult out{8, "imaginary parts of eigenvalue estimates", {}};
  const EigenStats ex1 = eigen_sweep(false, 1.5, 1.5, {0.0});
  const EigenStats ex2 = eigen_sweep(true, 1.5, 1.5, example2_qs());
  out.records.push_back(ReportRecord::compare("c8.example1.max_imag", 0.0, ex1.imag, tol.get("imag")));
  out.records.push_back(ReportRecord::compare("c8.example2.max_imag", 0.0, ex2.imag, tol.get("imag")));
  return out;
}

}  // namespace acceptance

/// Tolerance names consulted by run_acceptance.
inline const std::vector<std::string>& acceptance_tolerance_names() {
  static const std::vector<std::string> names = {"kernel",       "kernel_refinement", "integer",
                                                 "hj",           "eigenvalue",        "energy_order",
                                                 "probability",  "imag",              "classical"};
  return names;
}

/// Criteria 1-8 in order.
inline std::vector<CriterionResult> run_acceptance(const Tolerances& tol) {
  return {acceptance::kernel_oracle(tol),   acceptance::integer_reduction(tol),   acceptance::hj_sweep(tol),
          acceptance::momentum_eigenvalues(tol), acceptance::energy_eigenvalues(tol), acceptance::probability_law(tol),
          acceptance::classical_limit(tol), acceptance::imaginary_parts(tol)};
}

inline ReportTable acceptance_table(const std::vector<CriterionResult>& results) {
  ReportTable table;
  for (const CriterionResult& c : results) {
    for (const ReportRecord& r : c.records) table.add(r);
    table.notes.push_back("criterion " + std::to_string(c.id) + " " + (c.passed() ? "PASS" : "FAIL") + ": " + c.title);
  }
  return table;
}

}  // namespace fwkb::app
