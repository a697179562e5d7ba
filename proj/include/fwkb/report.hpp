#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <string>
#include <utility>

namespace fwkb {

/// One checked quantity: residual = |analytic - numeric|, pass = residual <= tolerance.
struct ReportRecord {
  std::string quantity;
  double analytic = 0.0;
  double numeric = 0.0;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;

  static ReportRecord compare(std::string quantity, double analytic, double numeric, double tolerance) {
    double residual = std::abs(analytic - numeric);
    if (std::isnan(residual)) {
      residual = std::numeric_limits<double>::infinity();
    }
    return {std::move(quantity), analytic, numeric, residual, tolerance, residual <= tolerance};
  }
};

inline bool all_pass(std::span<const ReportRecord> records) {
  return std::all_of(records.begin(), records.end(), [](const ReportRecord& r) { return r.pass; });
}

}  // namespace fwkb
