// fwkb: command-line front end for the fractional WKB toolkit.
//
//   fwkb deriv    --function x --side left --alpha 0.5 --grid 0,1,4096
//   fwkb example1 --e1 2 --e2 0.5
//   fwkb example2 --e1 0.5 --e2 0.5 --q 0 --format csv
//   fwkb sweep    --model example1 --param fd_step --values 1e-2,1e-3,1e-4
//   fwkb verify
//
// Exit status: 0 when every record passes, 1 when any record fails, 2 on usage or domain errors.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fwkb/app/acceptance.hpp"
#include "fwkb/app/commands.hpp"
#include "fwkb/app/config.hpp"
#include "fwkb/app/output.hpp"
#include "fwkb/errors.hpp"

namespace {

constexpr int kExitFailed = 1;
constexpr int kExitError = 2;

struct RawOptions {
  double alpha = 1.5;
  double beta = 1.5;
  double e1 = 1.0;
  double e2 = 1.0;
  double q = 0.0;
  double hbar = 1.0;
  double fd_step = 1e-4;
  std::string grid = "0,1,1024";
  std::string format = "table";
  std::string out;
  std::vector<std::string> tol;

  std::string function = "x";
  std::string side = "left";
  std::size_t node_stride = 0;

  std::string model = "example1";
  std::string coeffs = "1,1,0,0,0";
  std::string param;
  std::string values;
  std::string range;
};

fwkb::app::RunConfig to_config(const RawOptions& raw, fwkb::app::Tolerances tolerances) {
  fwkb::app::RunConfig c;
  c.alpha = raw.alpha;
  c.beta = raw.beta;
  c.e1 = raw.e1;
  c.e2 = raw.e2;
  c.q = raw.q;
  c.hbar = raw.hbar;
  c.fd_step = raw.fd_step;
  c.grid = fwkb::app::parse_grid(raw.grid);
  c.format = fwkb::app::parse_format(raw.format);
  if (!raw.out.empty()) c.output_path = raw.out;
  for (const std::string& t : raw.tol) tolerances.apply(t);
  c.tolerances = tolerances;
  return c;
}

int emit(const fwkb::app::RunConfig& config, const fwkb::app::ReportTable& table) {
  if (config.output_path) {
    std::ofstream file(*config.output_path);
    if (!file) {
      std::cerr << "error: cannot open " << *config.output_path << " for writing\n";
      return kExitError;
    }
    fwkb::app::write_report(file, table, config.format);
  } else {
    fwkb::app::write_report(std::cout, table, config.format);
  }
  if (config.format != fwkb::app::OutputFormat::table) {
    for (const std::string& note : table.notes) std::cerr << "note: " << note << '\n';
  }
  for (const fwkb::ReportRecord& r : table.records) {
    if (!r.pass) {
      std::cerr << "FAIL " << r.quantity << ": residual " << fwkb::app::format_number(r.residual) << " > tolerance "
                << fwkb::app::format_number(r.tolerance) << '\n';
    }
  }
  return table.passed() ? EXIT_SUCCESS : kExitFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fractional WKB toolkit: RL derivatives, Hamilton-Jacobi separation, WKB eigenvalue checks"};
  app.require_subcommand(1);
  app.set_config("--config", "", "flat key=value file mirroring the long flags");

  RawOptions raw;
  app.add_option("--alpha", raw.alpha, "left order alpha")->capture_default_str();
  app.add_option("--beta", raw.beta, "right order beta")->capture_default_str();
  app.add_option("--e1", raw.e1, "energy E1")->capture_default_str();
  app.add_option("--e2", raw.e2, "energy E2")->capture_default_str();
  app.add_option("--q", raw.q, "frozen coordinate q")->capture_default_str();
  app.add_option("--hbar", raw.hbar, "action scale")->capture_default_str();
  app.add_option("--fd-step", raw.fd_step, "finite-difference step for the operators")->capture_default_str();
  app.add_option("--grid", raw.grid, "a,b,count")->capture_default_str();
  app.add_option("--format", raw.format, "table|csv|json")->capture_default_str();
  app.add_option("--out", raw.out, "write the report to this file");
  app.add_option("--tol", raw.tol, "tolerance override NAME=VALUE (repeatable)");

  auto* deriv = app.add_subcommand("deriv", "RL derivative of a built-in power vs the analytic power rule");
  deriv->add_option("--function", raw.function, "1, x, x^2 or x^3 (powers of x-a)")->capture_default_str();
  deriv->add_option("--side", raw.side, "left (uses --alpha) or right (uses --beta)")->capture_default_str();
  deriv->add_option("--node-stride", raw.node_stride, "emit every n-th node (0 = about 16 rows)");

  auto* ex1 = app.add_subcommand("example1", "L = 1/2 (D^a q)^2 + 1/2 (D^b q)^2");
  auto* ex2 = app.add_subcommand("example2", "L = 1/2 (D^a q)^2 + 1/2 (D^b q)^2 + D^a q + D^b q + 1/2 q^2");
  auto* verify = app.add_subcommand("verify", "run the acceptance suite");

  auto* sweep = app.add_subcommand("sweep", "repeat the example pipeline over a parameter range");
  sweep->add_option("--model", raw.model, "example1|example2|custom")->capture_default_str();
  sweep->add_option("--coeffs", raw.coeffs, "custom model c_alpha,c_beta,l_alpha,l_beta,v")->capture_default_str();
  sweep->add_option("--param", raw.param, "alpha|beta|e1|e2|q|fd_step")->required();
  auto* values_opt = sweep->add_option("--values", raw.values, "comma-separated values");
  auto* range_opt = sweep->add_option("--range", raw.range, "lo,hi,steps");
  values_opt->excludes(range_opt);

  for (CLI::App* sub : {deriv, ex1, ex2, verify, sweep}) {
    sub->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitError;
  }

  try {
    using namespace fwkb::app;
    if (*verify) {
      const RunConfig config = to_config(raw, Tolerances::acceptance());
      const std::vector<CriterionResult> results = run_acceptance(config.tolerances);
      for (const CriterionResult& c : results) {
        std::cerr << "criterion " << c.id << ": " << (c.passed() ? "PASS" : "FAIL") << "  " << c.title << '\n';
      }
      ReportTable table = acceptance_table(results);
      if (config.format != OutputFormat::table) table.notes.clear();
      return emit(config, table);
    }

    RunConfig config = to_config(raw, Tolerances::defaults());
    if (*deriv) {
      if (raw.side != "left" && raw.side != "right") {
        throw fwkb::ConfigError("--side must be left or right");
      }
      const DerivOptions opts{raw.function, raw.side == "left" ? fwkb::Side::left : fwkb::Side::right,
                              raw.node_stride};
      return emit(config, cmd_deriv(config, opts));
    }
    if (*ex1 || *ex2) {
      config.model = *ex1 ? Model::example1 : Model::example2;
      return emit(config, cmd_example(config));
    }
    if (*sweep) {
      config.model = parse_model(raw.model);
      config.custom = parse_coefficients(raw.coeffs);
      SweepOptions opts{raw.param, {}};
      if (!raw.values.empty()) opts.values = parse_number_list(raw.values);
      if (!raw.range.empty()) opts.values = parse_range(raw.range);
      return emit(config, cmd_sweep(config, opts));
    }
  } catch (const fwkb::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}
