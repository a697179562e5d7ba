#pragma once

/**
 * @file fracops.hpp
 * @brief Left and right Riemann-Liouville derivatives on uniform grids.
 *
 * For order alpha with n-1 <= alpha < n,
 *
 *     aD_x^alpha f(x) = 1/Gamma(n-alpha) (d/dx)^n  int_a^x (x-t)^(n-alpha-1) f(t) dt
 *     xD_b^alpha f(x) = 1/Gamma(n-alpha) (-d/dx)^n int_x^b (t-x)^(n-alpha-1) f(t) dt
 *
 * Non-integer orders are discretized with Grunwald-Letnikov weights
 *
 *     w_0 = 1,  w_j = w_{j-1} (1 - (alpha+1)/j)
 *
 * The plain sum A_j = h^-alpha sum_k w_k f_{j-k} is a first-order estimate of the
 * derivative at x_j, but a second-order estimate at the shifted point
 * x_j - alpha h / 2. The kernel interpolates two neighbouring sums back to x_j:
 *
 *     D_j = (1 - alpha/2) A_j + (alpha/2) A_{j+1}        (j < N)
 *     D_N = (1 + alpha/2) A_N - (alpha/2) A_{N-1}        (last node, extrapolated)
 *
 * For alpha = 1 and alpha = 2 this reduces exactly to the central first and
 * second differences. Integer orders skip the convolution and use ordinary
 * second-order finite differences on every node, one-sided at the ends.
 *
 * The RL derivative of non-integer order is generally unbounded at the base
 * endpoint (x = a for left, x = b for right); that node is always reported as
 * divergent. Near the base endpoint the analytic derivative is singular, so
 * accuracy claims are restricted to the interior window returned by
 * interior_range().
 */

#include <cmath>
#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "fwkb/errors.hpp"
#include "fwkb/gamma.hpp"

namespace fwkb {

enum class Side { left, right };

inline const char* to_string(Side side) { return side == Side::left ? "left" : "right"; }

/// Derivative order alpha > 0 together with its integer ceiling n, n-1 <= alpha < n.
class FractionalOrder {
 public:
  explicit FractionalOrder(double value) : value_(value) {
    if (!std::isfinite(value) || value <= 0.0) {
      throw DomainError("fractional order must be finite and > 0, got " + std::to_string(value));
    }
    ceiling_ = static_cast<int>(std::floor(value)) + 1;
  }

  double value() const { return value_; }
  int ceiling() const { return ceiling_; }
  bool is_integer() const { return std::floor(value_) == value_; }

  friend bool operator==(const FractionalOrder&, const FractionalOrder&) = default;

 private:
  double value_;
  int ceiling_;
};

/// Uniform grid x_j = a + j*step, j = 0..count.
class TimeGrid {
 public:
  TimeGrid(double a, double b, std::size_t count) : a_(a), b_(b), count_(count) {
    if (!std::isfinite(a) || !std::isfinite(b) || !(a < b)) {
      throw GridError("grid requires finite a < b");
    }
    if (count < 2) {
      throw GridError("grid too coarse: need at least 2 intervals, got " + std::to_string(count));
    }
    step_ = (b - a) / static_cast<double>(count);
  }

  /// Builds a grid from explicit nodes; rejects anything that is not uniform to 1e-9 relative.
  static TimeGrid from_nodes(std::span<const double> nodes) {
    if (nodes.size() < 3) {
      throw GridError("grid too coarse: need at least 3 nodes");
    }
    TimeGrid grid(nodes.front(), nodes.back(), nodes.size() - 1);
    for (std::size_t j = 0; j < nodes.size(); ++j) {
      if (std::abs(nodes[j] - grid.node(j)) > 1e-9 * (grid.b() - grid.a())) {
        throw GridError("non-uniform grid rejected at node " + std::to_string(j));
      }
    }
    return grid;
  }

  double a() const { return a_; }
  double b() const { return b_; }
  std::size_t count() const { return count_; }
  std::size_t node_count() const { return count_ + 1; }
  double step() const { return step_; }

  double node(std::size_t j) const {
    // The last node is pinned to b so that mirrored grids line up exactly.
    return j == count_ ? b_ : a_ + static_cast<double>(j) * step_;
  }

  friend bool operator==(const TimeGrid&, const TimeGrid&) = default;

 private:
  double a_;
  double b_;
  std::size_t count_;
  double step_ = 0.0;
};

/// Finite samples f(x_j) on every node of a grid.
class SampledFunction {
 public:
  SampledFunction(TimeGrid grid, std::vector<double> values) : grid_(grid), values_(std::move(values)) {
    if (values_.size() != grid_.node_count()) {
      throw GridError("sample count " + std::to_string(values_.size()) + " does not match node count " +
                      std::to_string(grid_.node_count()));
    }
    for (std::size_t j = 0; j < values_.size(); ++j) {
      if (!std::isfinite(values_[j])) {
        throw NonFiniteInputError("non-finite sample at node " + std::to_string(j));
      }
    }
  }

  template <class F>
  static SampledFunction sample(const TimeGrid& grid, F&& f) {
    std::vector<double> values(grid.node_count());
    for (std::size_t j = 0; j < values.size(); ++j) {
      values[j] = std::invoke(f, grid.node(j));
    }
    return SampledFunction(grid, std::move(values));
  }

  const TimeGrid& grid() const { return grid_; }
  std::span<const double> values() const { return values_; }
  double operator[](std::size_t j) const { return values_[j]; }

  /// Samples of f(a + b - x), i.e. the function reflected about the grid midpoint.
  SampledFunction mirrored() const {
    return SampledFunction(grid_, std::vector<double>(values_.rbegin(), values_.rend()));
  }

 private:
  TimeGrid grid_;
  std::vector<double> values_;
};

enum class NodeStatus { finite, divergent };

/// Output of a derivative operator. Divergent nodes hold NaN and are flagged explicitly.
class DerivativeSamples {
 public:
  DerivativeSamples(TimeGrid grid, std::vector<double> values) : grid_(grid), values_(std::move(values)) {
    status_.resize(values_.size(), NodeStatus::finite);
    for (std::size_t j = 0; j < values_.size(); ++j) {
      if (!std::isfinite(values_[j])) {
        mark_divergent(j);
      }
    }
  }

  const TimeGrid& grid() const { return grid_; }
  std::span<const double> values() const { return values_; }
  double operator[](std::size_t j) const { return values_[j]; }
  NodeStatus status(std::size_t j) const { return status_[j]; }
  bool is_divergent(std::size_t j) const { return status_[j] == NodeStatus::divergent; }

  void mark_divergent(std::size_t j) {
    values_[j] = std::nan("");
    status_[j] = NodeStatus::divergent;
  }

  DerivativeSamples mirrored() const {
    DerivativeSamples out(grid_, std::vector<double>(values_.rbegin(), values_.rend()));
    out.status_.assign(status_.rbegin(), status_.rend());
    return out;
  }

 private:
  TimeGrid grid_;
  std::vector<double> values_;
  std::vector<NodeStatus> status_;
};

/// Grunwald-Letnikov weights w_0..w_{count-1} for the given order.
inline std::vector<double> gl_weights(double alpha, std::size_t count) {
  std::vector<double> w(count);
  if (count == 0) {
    return w;
  }
  w[0] = 1.0;
  for (std::size_t j = 1; j < count; ++j) {
    w[j] = w[j - 1] * (1.0 - (alpha + 1.0) / static_cast<double>(j));
  }
  return w;
}

namespace detail {

/// Plain shifted-to-zero GL sums A_j = h^-alpha sum_{k<=j} w_k f_{j-k}, fixed summation order.
inline std::vector<double> gl_sums(std::span<const double> f, double alpha, double h) {
  const std::vector<double> w = gl_weights(alpha, f.size());
  const double scale = std::pow(h, -alpha);
  std::vector<double> sums(f.size());
  for (std::size_t j = 0; j < f.size(); ++j) {
    double acc = 0.0;
    for (std::size_t k = 0; k <= j; ++k) {
      acc += w[k] * f[j - k];
    }
    sums[j] = scale * acc;
  }
  return sums;
}

/// Second-order interpolation of neighbouring GL sums back onto the nodes.
inline std::vector<double> gl_kernel(std::span<const double> f, double alpha, double h) {
  const std::vector<double> sums = gl_sums(f, alpha, h);
  const std::size_t last = f.size() - 1;
  std::vector<double> out(f.size());
  for (std::size_t j = 0; j < last; ++j) {
    out[j] = (1.0 - 0.5 * alpha) * sums[j] + 0.5 * alpha * sums[j + 1];
  }
  out[last] = (1.0 + 0.5 * alpha) * sums[last] - 0.5 * alpha * sums[last - 1];
  return out;
}

inline std::vector<double> first_difference(std::span<const double> f, double h) {
  const std::size_t n = f.size();
  std::vector<double> d(n);
  for (std::size_t j = 1; j + 1 < n; ++j) {
    d[j] = (f[j + 1] - f[j - 1]) / (2.0 * h);
  }
  d[0] = (-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2.0 * h);
  d[n - 1] = (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]) / (2.0 * h);
  return d;
}

inline std::vector<double> second_difference(std::span<const double> f, double h) {
  const std::size_t n = f.size();
  const double h2 = h * h;
  std::vector<double> d(n);
  for (std::size_t j = 1; j + 1 < n; ++j) {
    d[j] = (f[j + 1] - 2.0 * f[j] + f[j - 1]) / h2;
  }
  if (n >= 4) {
    d[0] = (2.0 * f[0] - 5.0 * f[1] + 4.0 * f[2] - f[3]) / h2;
    d[n - 1] = (2.0 * f[n - 1] - 5.0 * f[n - 2] + 4.0 * f[n - 3] - f[n - 4]) / h2;
  } else {
    d[0] = d[1];
    d[n - 1] = d[n - 2];
  }
  return d;
}

/// n-th ordinary derivative d^n f / dx^n by repeated second-order stencils.
inline std::vector<double> ordinary_derivative(std::span<const double> f, double h, int n) {
  std::vector<double> current(f.begin(), f.end());
  while (n >= 2) {
    current = second_difference(current, h);
    n -= 2;
  }
  if (n == 1) {
    current = first_difference(current, h);
  }
  return current;
}

}  // namespace detail

/// Left derivative aD_x^alpha f on every node of f's grid.
inline DerivativeSamples left_rl_derivative(const SampledFunction& f, const FractionalOrder& order) {
  const TimeGrid& grid = f.grid();
  if (grid.count() < 2) {
    throw GridError("grid too coarse for a derivative");
  }
  if (order.is_integer()) {
    return DerivativeSamples(grid,
                             detail::ordinary_derivative(f.values(), grid.step(), static_cast<int>(order.value())));
  }
  // f(a) contributes f(a) (x-a)^-alpha / Gamma(1-alpha) exactly; the kernel only sees f - f(a),
  // which removes the worst of the boundary singularity from the discretization.
  const double base = f[0];
  std::vector<double> shifted(f.values().begin(), f.values().end());
  for (double& v : shifted) {
    v -= base;
  }
  std::vector<double> values = detail::gl_kernel(shifted, order.value(), grid.step());
  if (base != 0.0) {
    const double scale = base / gamma(1.0 - order.value());
    for (std::size_t j = 1; j < values.size(); ++j) {
      values[j] += scale * std::pow(grid.node(j) - grid.a(), -order.value());
    }
  }
  DerivativeSamples out(grid, std::move(values));
  out.mark_divergent(0);
  return out;
}

/// Right derivative xD_b^beta f, computed as the mirror image of the left operator.
inline DerivativeSamples right_rl_derivative(const SampledFunction& f, const FractionalOrder& order) {
  return left_rl_derivative(f.mirrored(), order).mirrored();
}

inline DerivativeSamples rl_derivative(const SampledFunction& f, const FractionalOrder& order, Side side) {
  return side == Side::left ? left_rl_derivative(f, order) : right_rl_derivative(f, order);
}

/**
 * Analytic RL derivative of a power: D^alpha (offset)^k = Gamma(k+1)/Gamma(k+1-alpha) offset^(k-alpha),
 * where offset is x-a for the left operator and b-x for the right one. Returns 0 when k+1-alpha sits on
 * a pole of Gamma (k integer below alpha's integer part). Used as ground truth for the numerical kernel.
 */
inline double rl_power_rule(double k, const FractionalOrder& order, double offset, Side side = Side::left) {
  (void)side;  // the offset already encodes the side
  if (!(k >= 0.0)) {
    throw DomainError("power rule requires exponent k >= 0");
  }
  if (!(offset >= 0.0)) {
    throw DomainError("power rule requires offset >= 0");
  }
  const double shifted = k + 1.0 - order.value();
  if (detail::is_nonpositive_integer(shifted)) {
    return 0.0;
  }
  return gamma(k + 1.0) / gamma(shifted) * std::pow(offset, k - order.value());
}

/**
 * Analytic RL derivative of the polynomial sum_k coeffs[k] (x-a)^k at x. For the right operator the
 * polynomial is re-expanded in powers of (b-x) before applying the power rule term by term.
 */
inline double rl_polynomial_rule(std::span<const double> coeffs, const FractionalOrder& order, const TimeGrid& grid,
                                 double x, Side side) {
  double total = 0.0;
  if (side == Side::left) {
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
      if (coeffs[k] != 0.0) {
        total += coeffs[k] * rl_power_rule(static_cast<double>(k), order, x - grid.a(), side);
      }
    }
    return total;
  }
  // (x-a)^k = ((b-a) - (b-x))^k = sum_m C(k,m) (b-a)^(k-m) (-1)^m (b-x)^m
  const double width = grid.b() - grid.a();
  const double offset = std::max(0.0, grid.b() - x);
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    if (coeffs[k] == 0.0) {
      continue;
    }
    double binom = 1.0;
    for (std::size_t m = 0; m <= k; ++m) {
      if (m > 0) {
        binom = binom * static_cast<double>(k - m + 1) / static_cast<double>(m);
      }
      const double sign = (m % 2 == 0) ? 1.0 : -1.0;
      const double coeff = coeffs[k] * binom * std::pow(width, static_cast<double>(k - m)) * sign;
      total += coeff * rl_power_rule(static_cast<double>(m), order, offset, side);
    }
  }
  return total;
}

/// Default width of the excluded layer next to the base endpoint, as a fraction of b-a.
inline constexpr double kDefaultBoundaryFraction = 0.1;

/**
 * Half-open index range [first, last) of interior nodes: both endpoints are excluded, as is every node
 * closer than boundary_fraction*(b-a) to the base endpoint (a for left, b for right).
 */
inline std::pair<std::size_t, std::size_t> interior_range(const TimeGrid& grid, Side side,
                                                          double boundary_fraction = kDefaultBoundaryFraction) {
  const auto layer = static_cast<std::size_t>(std::ceil(boundary_fraction * static_cast<double>(grid.count())));
  const std::size_t skip = std::max<std::size_t>(1, layer);
  if (side == Side::left) {
    return {skip, grid.count()};
  }
  return {1, grid.count() + 1 - skip};
}

/// Max |D f - oracle| over the interior window.
template <class Oracle>
double max_interior_error(const DerivativeSamples& d, Oracle&& oracle, Side side,
                          double boundary_fraction = kDefaultBoundaryFraction) {
  const auto [first, last] = interior_range(d.grid(), side, boundary_fraction);
  double worst = 0.0;
  for (std::size_t j = first; j < last; ++j) {
    const double err = std::abs(d[j] - std::invoke(oracle, d.grid().node(j)));
    if (std::isnan(err)) {
      return err;
    }
    worst = std::max(worst, err);
  }
  return worst;
}

}  // namespace fwkb
