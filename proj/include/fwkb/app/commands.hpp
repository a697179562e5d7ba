#pragma once

// Drivers behind the CLI subcommands: deriv, example1/example2 and sweep.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>
#include <vector>

#include "fwkb/app/config.hpp"
#include "fwkb/app/output.hpp"
#include "fwkb/fracops.hpp"
#include "fwkb/hamilton_jacobi.hpp"
#include "fwkb/mechanics.hpp"
#include "fwkb/wkb.hpp"

namespace fwkb::app {

/// Coefficients of the built-in test functions in powers of (x - a).
inline std::vector<double> builtin_function(const std::string& name) {
  if (name == "1") return {1.0};
  if (name == "x") return {0.0, 1.0};
  if (name == "x^2") return {0.0, 0.0, 1.0};
  if (name == "x^3") return {0.0, 0.0, 0.0, 1.0};
  throw ConfigError("unknown function '" + name + "' (expected 1, x, x^2 or x^3, powers of x-a)");
}

namespace detail {

inline double polynomial(const std::vector<double>& coeffs, double offset) {
  double acc = 0.0;
  for (std::size_t k = coeffs.size(); k-- > 0;) {
    acc = acc * offset + coeffs[k];
  }
  return acc;
}

inline std::string label(const char* fmt, double x) {
  char buf[96];
  std::snprintf(buf, sizeof buf, fmt, x);
  return buf;
}

// Errors of the RL kernel on the grid with the given count.
struct KernelRun {
  DerivativeSamples derivative;
  double max_error;
};

inline KernelRun run_kernel(const std::vector<double>& coeffs, const GridConfig& g, std::size_t count,
                            const FractionalOrder& order, Side side) {
  const TimeGrid grid(g.a, g.b, count);
  const SampledFunction f = SampledFunction::sample(grid, [&](double x) { return polynomial(coeffs, x - g.a); });
  DerivativeSamples d = rl_derivative(f, order, side);
  const double err = max_interior_error(
      d, [&](double x) { return rl_polynomial_rule(coeffs, order, grid, x, side); }, side,
      order.is_integer() ? 0.0 : kDefaultBoundaryFraction);
  return {std::move(d), err};
}

}  // namespace detail

/// Errors below this are roundoff; refinement ratios between them carry no information.
inline constexpr double kRoundoffErrorFloor = 1e-10;

/**
 * Fractional derivative of a built-in power on the configured grid. Emits node values
 * against the analytic power rule (nodes outside the interior window are listed with an
 * infinite tolerance), the max interior error, and the error ratios over two successive
 * grid doublings.
 */
inline ReportTable cmd_deriv(const RunConfig& config, const DerivOptions& options) {
  config.validate_numerics();
  const std::vector<double> coeffs = builtin_function(options.function);
  const FractionalOrder order(options.side == Side::left ? config.alpha : config.beta);
  const double kernel_tol = config.tolerances.get("kernel");
  const double boundary = order.is_integer() ? 0.0 : kDefaultBoundaryFraction;

  const std::size_t n = config.grid.count;
  const detail::KernelRun coarse = detail::run_kernel(coeffs, config.grid, n, order, options.side);
  const detail::KernelRun mid = detail::run_kernel(coeffs, config.grid, 2 * n, order, options.side);
  const detail::KernelRun fine = detail::run_kernel(coeffs, config.grid, 4 * n, order, options.side);

  ReportTable table;
  const TimeGrid& grid = coarse.derivative.grid();
  const auto [first, last] = interior_range(grid, options.side, boundary);
  const std::size_t stride = options.node_stride > 0 ? options.node_stride : std::max<std::size_t>(1, n / 16);
  for (std::size_t j = 0; j < grid.node_count(); j += stride) {
    const double x = grid.node(j);
    const double oracle = rl_polynomial_rule(coeffs, order, grid, x, options.side);
    const bool interior = j >= first && j < last;
    ReportRecord r = ReportRecord::compare(detail::label("deriv(x=%.6g)", x), oracle, coarse.derivative[j],
                                           interior ? kernel_tol : std::numeric_limits<double>::infinity());
    table.add(std::move(r));
    if (coarse.derivative.is_divergent(j)) {
      table.notes.push_back(detail::label("node x=%.6g flagged divergent", x));
    }
  }

  table.add(ReportRecord::compare("max_interior_error", 0.0, coarse.max_error, kernel_tol));
  const double per_doubling = config.tolerances.get("kernel_refinement");
  const auto ratio_record = [&](const char* name, double e_coarse, double e_fine) {
    if (e_coarse < kRoundoffErrorFloor) {
      table.notes.push_back(std::string(name) + " skipped: error already at roundoff level");
      return;
    }
    table.add(ReportRecord::compare(name, 0.0, e_fine / e_coarse, per_doubling));
    table.notes.push_back(std::string(name) + detail::label(": observed order %.3f", std::log2(e_coarse / e_fine)));
  };
  ratio_record("refinement_ratio_N_to_2N", coarse.max_error, mid.max_error);
  ratio_record("refinement_ratio_2N_to_4N", mid.max_error, fine.max_error);
  return table;
}

/// Closed-form slopes of W1 and W2 written out per model, independent of PrincipalFunction.
inline double closed_form_w1_slope(Model model, const LagrangianCoefficients& c, double q, double e1) {
  switch (model) {
    case Model::example1: return std::sqrt(2.0 * e1);
    case Model::example2: return std::sqrt(q * q + 2.0 * e1) + 1.0;
    case Model::custom: break;
  }
  return c.l_alpha + std::sqrt(c.c_alpha * (c.v * q * q + 2.0 * e1));
}

inline double closed_form_w2_slope(Model model, const LagrangianCoefficients& c, double e2) {
  switch (model) {
    case Model::example1: return std::sqrt(2.0 * e2);
    case Model::example2: return std::sqrt(2.0 * e2) + 1.0;
    case Model::custom: break;
  }
  return c.l_beta + std::sqrt(2.0 * c.c_beta * e2);
}

/// Reference trajectory used to build the sample point: q_ref(t) = (t - a)^2.
inline const std::vector<double>& reference_trajectory() {
  static const std::vector<double> coeffs = {0.0, 0.0, 1.0};
  return coeffs;
}

/**
 * Full pipeline for one configuration: transformed coordinates of the reference
 * trajectory at the grid midpoint, separation, HJ residual, and the WKB operator checks.
 */
inline ReportTable example_records(const RunConfig& config) {
  config.validate_physics();
  const Tolerances& tol = config.tolerances;
  const LagrangianSpec spec = config.spec();
  const LagrangianCoefficients& c = spec.coefficients();
  ReportTable table;

  // Sample point from the reference trajectory.
  const TimeGrid grid = config.grid.to_grid();
  const std::vector<double>& traj_coeffs = reference_trajectory();
  const SampledFunction traj =
      SampledFunction::sample(grid, [&](double t) { return detail::polynomial(traj_coeffs, t - grid.a()); });
  const TransformedTrajectory transformed = transform_trajectory(traj, spec);
  const std::size_t mid = grid.count() / 2;
  const double t_mid = grid.node(mid);
  const auto reduced_oracle = [&](const FractionalOrder& order, Side side) {
    if (order.value() == 1.0) {
      return traj[mid];
    }
    return rl_polynomial_rule(traj_coeffs, FractionalOrder(order.value() - 1.0), grid, t_mid, side);
  };
  table.add(ReportRecord::compare("u1_kernel", reduced_oracle(spec.alpha(), Side::left), transformed.u1[mid],
                                  tol.get("kernel")));
  table.add(ReportRecord::compare("u2_kernel", reduced_oracle(spec.beta(), Side::right), transformed.u2[mid],
                                  tol.get("kernel")));
  const TransformedPoint point{transformed.u1[mid], transformed.u2[mid], t_mid, config.q};

  const PrincipalFunction pf = separate(spec, EnergyPartition(config.e1, config.e2), std::abs(config.q));
  const double w1 = closed_form_w1_slope(config.model, c, config.q, config.e1);
  const double w2 = closed_form_w2_slope(config.model, c, config.e2);

  const double hs = 1e-5;
  const auto shifted = [&](double du1, double du2) {
    return evaluate_S(pf, TransformedPoint{point.u1 + du1, point.u2 + du2, point.t, point.q});
  };
  table.add(ReportRecord::compare("W1_slope", w1, (shifted(hs, 0) - shifted(-hs, 0)) / (2 * hs), tol.get("slope")));
  table.add(ReportRecord::compare("W2_slope", w2, (shifted(0, hs) - shifted(0, -hs)) / (2 * hs), tol.get("slope")));
  const double s_closed = w1 * point.u1 + w2 * point.u2 - (config.e1 + config.e2) * point.t;
  table.add(ReportRecord::compare("S", s_closed, evaluate_S(pf, point), tol.get("action")));
  table.add(ReportRecord::compare("hj_residual", 0.0, hj_residual(pf, point), tol.get("hj")));

  if (pf.w1_radicand(config.q) > 0.0 && pf.w2_radicand() > 0.0) {
    const LambdaConstants lam = lambda_constants(pf, point);
    const auto w_parts = [&](double e1, double e2) {
      const PrincipalFunction p(spec, EnergyPartition(e1, e2));
      return std::pair{p.w1(point.u1, point.q), p.w2(point.u2)};
    };
    // Central difference in E, falling back to a short forward difference next to E = 0.
    const auto d_de = [](auto&& w, double e) {
      const double h = 1e-6 * std::max(1.0, e);
      if (e - h >= 0.0) {
        return (w(e + h) - w(e - h)) / (2 * h);
      }
      return (w(e + 1e-8) - w(e)) / 1e-8;
    };
    const double l1 = d_de([&](double e) { return w_parts(e, config.e2).first; }, config.e1);
    const double l2 = d_de([&](double e) { return w_parts(config.e1, e).second; }, config.e2);
    table.add(ReportRecord::compare("lambda1", l1, lam.lambda1, tol.get("lambda")));
    table.add(ReportRecord::compare("lambda2", l2, lam.lambda2, tol.get("lambda")));
  } else {
    table.notes.push_back("lambda constants skipped: a W radicand is zero");
  }

  const Momenta m = momenta_from_S(pf, point);
  if (!(m.p_alpha > 0.0 && m.p_beta > 0.0)) {
    table.notes.push_back("WKB records skipped: wave function needs P_alpha, P_beta > 0");
    return table;
  }
  const WaveField wf = build_wavefunction(pf, config.hbar);
  const OperatorResult pa = apply_momentum(wf, MomentumComponent::alpha, point, config.fd_step);
  const OperatorResult pb = apply_momentum(wf, MomentumComponent::beta, point, config.fd_step);
  const OperatorResult en = apply_hamiltonian(wf, spec, point, config.fd_step);
  table.add(ReportRecord::compare("momentum_alpha", w1, pa.eigenvalue_estimate.real(), tol.get("eigenvalue")));
  table.add(ReportRecord::compare("momentum_alpha_imag", 0.0, pa.eigenvalue_estimate.imag(), tol.get("imag")));
  table.add(ReportRecord::compare("momentum_beta", w2, pb.eigenvalue_estimate.real(), tol.get("eigenvalue")));
  table.add(ReportRecord::compare("momentum_beta_imag", 0.0, pb.eigenvalue_estimate.imag(), tol.get("imag")));
  table.add(ReportRecord::compare("energy", config.e1 + config.e2, en.eigenvalue_estimate.real(),
                                  tol.get("eigenvalue")));
  table.add(ReportRecord::compare("energy_imag", 0.0, en.eigenvalue_estimate.imag(), tol.get("imag")));
  table.add(ReportRecord::compare("probability_law", 1.0, probability_density(wf, point) * m.p_alpha * m.p_beta,
                                  tol.get("probability")));
  return table;
}

/// example1 / example2 subcommands.
inline ReportTable cmd_example(const RunConfig& config) {
  if (config.model == Model::custom) {
    throw ConfigError("the example commands accept only example1 or example2");
  }
  return example_records(config);
}

inline const std::vector<std::string>& sweep_parameters() {
  static const std::vector<std::string> names = {"alpha", "beta", "e1", "e2", "q", "fd_step"};
  return names;
}

/// One block of example records per sweep value, in sweep order.
inline ReportTable cmd_sweep(const RunConfig& config, const SweepOptions& sweep) {
  const auto& names = sweep_parameters();
  if (std::find(names.begin(), names.end(), sweep.parameter) == names.end()) {
    throw ConfigError("cannot sweep '" + sweep.parameter + "' (expected alpha, beta, e1, e2, q or fd_step)");
  }
  if (sweep.values.empty()) {
    throw ConfigError("sweep range is empty");
  }
  ReportTable out;
  out.key_name = sweep.parameter;
  for (const double value : sweep.values) {
    RunConfig c = config;
    if (sweep.parameter == "alpha") c.alpha = value;
    if (sweep.parameter == "beta") c.beta = value;
    if (sweep.parameter == "e1") c.e1 = value;
    if (sweep.parameter == "e2") c.e2 = value;
    if (sweep.parameter == "q") c.q = value;
    if (sweep.parameter == "fd_step") c.fd_step = value;
    ReportTable block = example_records(c);
    for (ReportRecord& r : block.records) {
      out.add(value, std::move(r));
    }
    for (const std::string& note : block.notes) {
      out.notes.push_back(sweep.parameter + "=" + format_number(value) + ": " + note);
    }
  }
  return out;
}

}  // namespace fwkb::app
