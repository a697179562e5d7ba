#include "fwkb/app/acceptance.hpp"
#include "fwkb/app/commands.hpp"
#include "fwkb/app/config.hpp"
#include "fwkb/app/output.hpp"
#include "fwkb/app/tolerances.hpp"

#include <gtest/gtest.h>

#include <json.hpp>

#include <cmath>
#include <sstream>
#include <string>

using fwkb::app::DerivOptions;
using fwkb::app::Model;
using fwkb::app::OutputFormat;
using fwkb::app::ReportTable;
using fwkb::app::RunConfig;
using fwkb::app::SweepOptions;
using fwkb::app::Tolerances;

namespace {

const fwkb::ReportRecord& find(const ReportTable& t, const std::string& quantity, std::size_t nth = 0) {
  for (const auto& r : t.records) {
    if (r.quantity == quantity && nth-- == 0) {
      return r;
    }
  }
  throw std::runtime_error("no record " + quantity);
}

std::string render(const ReportTable& t, OutputFormat f) {
  std::ostringstream os;
  fwkb::app::write_report(os, t, f);
  return os.str();
}

RunConfig example(Model model, double e1, double e2, double q = 0.0) {
  RunConfig c;
  c.model = model;
  c.e1 = e1;
  c.e2 = e2;
  c.q = q;
  return c;
}

}  // namespace

TEST(Tolerances, DefaultsAndAssignments) {
  Tolerances t = Tolerances::defaults();
  EXPECT_DOUBLE_EQ(t.get("eigenvalue"), 1e-6);
  EXPECT_DOUBLE_EQ(Tolerances::acceptance().get("hj"), 1e-12);
  t.apply("eigenvalue=1e-3");
  EXPECT_DOUBLE_EQ(t.get("eigenvalue"), 1e-3);
  t.set("imag", 0.0);
  EXPECT_EQ(t.get("imag"), 0.0);
  EXPECT_THROW(t.get("nosuch"), fwkb::ConfigError);
  EXPECT_THROW(t.apply("nosuch=1"), fwkb::ConfigError);
  EXPECT_THROW(t.apply("eigenvalue"), fwkb::ConfigError);
  EXPECT_THROW(t.apply("eigenvalue=abc"), fwkb::ConfigError);
  EXPECT_THROW(t.apply("eigenvalue=-1"), fwkb::ConfigError);
  for (const auto& name : fwkb::app::acceptance_tolerance_names()) {
    EXPECT_NO_THROW(t.get(name)) << name;
  }
}

TEST(Config, Parsers) {
  const auto g = fwkb::app::parse_grid("0, 2, 64");
  EXPECT_EQ(g.a, 0.0);
  EXPECT_EQ(g.b, 2.0);
  EXPECT_EQ(g.count, 64u);
  EXPECT_THROW(fwkb::app::parse_grid("0,1"), fwkb::ConfigError);
  EXPECT_THROW(fwkb::app::parse_grid("0,1,x"), fwkb::ConfigError);
  EXPECT_THROW(fwkb::app::parse_grid("0,1,2.5"), fwkb::ConfigError);

  const auto c = fwkb::app::parse_coefficients("2,3,0.5,-1,4");
  EXPECT_EQ(c, (fwkb::LagrangianCoefficients{2.0, 3.0, 0.5, -1.0, 4.0}));
  EXPECT_THROW(fwkb::app::parse_coefficients("1,2"), fwkb::ConfigError);

  EXPECT_EQ(fwkb::app::parse_range("0,1,3"), (std::vector<double>{0.0, 0.5, 1.0}));
  EXPECT_EQ(fwkb::app::parse_range("2,5,1"), (std::vector<double>{2.0}));
  EXPECT_THROW(fwkb::app::parse_range("0,1,0"), fwkb::ConfigError);

  EXPECT_EQ(fwkb::app::parse_model("example2"), Model::example2);
  EXPECT_THROW(fwkb::app::parse_model("example3"), fwkb::ConfigError);
  EXPECT_EQ(fwkb::app::parse_format("json"), OutputFormat::json);
  EXPECT_THROW(fwkb::app::parse_format("xml"), fwkb::ConfigError);
}

TEST(Config, ValidationErrors) {
  RunConfig c;
  c.alpha = 0.5;
  EXPECT_THROW(fwkb::app::cmd_example(c), fwkb::ConfigError);
  c = RunConfig{};
  c.e1 = -1.0;
  EXPECT_THROW(fwkb::app::cmd_example(c), fwkb::ConfigError);
  c = RunConfig{};
  c.hbar = 0.0;
  EXPECT_THROW(fwkb::app::cmd_example(c), fwkb::ConfigError);
  c = RunConfig{};
  c.fd_step = -1e-4;
  EXPECT_THROW(fwkb::app::cmd_example(c), fwkb::ConfigError);
  c = RunConfig{};
  c.model = Model::custom;
  EXPECT_THROW(fwkb::app::cmd_example(c), fwkb::ConfigError);
  c = RunConfig{};
  c.grid.count = 1;
  EXPECT_THROW(fwkb::app::cmd_example(c), fwkb::GridError);
}

TEST(Output, NumberFormatting) {
  EXPECT_EQ(fwkb::app::format_number(0.1), "0.10000000000000001");
  EXPECT_EQ(fwkb::app::format_number(2.0), "2");
  EXPECT_EQ(fwkb::app::format_number(INFINITY), "inf");
  EXPECT_EQ(fwkb::app::format_number(-INFINITY), "-inf");
  EXPECT_EQ(fwkb::app::format_number(NAN), "nan");
  EXPECT_EQ(fwkb::app::json_number(INFINITY), "null");
  EXPECT_EQ(fwkb::app::json_string("a\"b\\c\n"), "\"a\\\"b\\\\c\\n\"");
}

TEST(Output, CsvLayout) {
  ReportTable t;
  t.add(fwkb::ReportRecord::compare("energy", 2.0, 2.0000001, 1e-6));
  t.add(fwkb::ReportRecord::compare("bad", 1.0, NAN, 1e-6));
  const std::string csv = render(t, OutputFormat::csv);
  std::istringstream in(csv);
  std::string header, row1, row2;
  std::getline(in, header);
  std::getline(in, row1);
  std::getline(in, row2);
  EXPECT_EQ(header, "schema_version,quantity,analytic,numeric,residual,tolerance,pass");
  ASSERT_EQ(row1.rfind("1,energy,2,", 0), 0u) << row1;
  // 17 significant digits round-trip exactly.
  EXPECT_EQ(std::stod(row1.substr(11)), 2.0000001);
  EXPECT_TRUE(row1.ends_with(",true"));
  EXPECT_EQ(row2, "1,bad,1,nan,inf,9.9999999999999995e-07,false");
}

TEST(Output, JsonRoundTrip) {
  ReportTable t;
  t.key_name = "e1";
  t.add(0.5, fwkb::ReportRecord::compare("momentum_alpha", 1.0, 1.0 + 1e-9, 1e-6));
  t.add(2.0, fwkb::ReportRecord::compare("broken", 0.0, INFINITY, 1e-6));
  const auto doc = nlohmann::json::parse(render(t, OutputFormat::json));
  ASSERT_TRUE(doc.is_array());
  ASSERT_EQ(doc.size(), 2u);
  EXPECT_EQ(doc[0]["schema_version"], "1");
  EXPECT_EQ(doc[0]["e1"].get<double>(), 0.5);
  EXPECT_EQ(doc[0]["quantity"], "momentum_alpha");
  EXPECT_EQ(doc[0]["numeric"].get<double>(), 1.0 + 1e-9);
  EXPECT_TRUE(doc[0]["pass"].get<bool>());
  EXPECT_TRUE(doc[1]["numeric"].is_null());
  EXPECT_TRUE(doc[1]["residual"].is_null());
  EXPECT_FALSE(doc[1]["pass"].get<bool>());
}

TEST(Output, TableSummarizesFailures) {
  ReportTable t;
  t.add(fwkb::ReportRecord::compare("ok", 1.0, 1.0, 0.0));
  t.add(fwkb::ReportRecord::compare("off", 1.0, 2.0, 0.5));
  t.notes.push_back("hello");
  const std::string text = render(t, OutputFormat::table);
  EXPECT_NE(text.find("FAIL"), std::string::npos);
  EXPECT_NE(text.find("2 records, 1 failed"), std::string::npos);
  EXPECT_NE(text.find("note: hello"), std::string::npos);
}

TEST(CmdExample, Example1Momentum) {
  const auto t = fwkb::app::cmd_example(example(Model::example1, 2.0, 0.5));
  const auto& r = find(t, "momentum_alpha");
  EXPECT_DOUBLE_EQ(r.analytic, 2.0);
  EXPECT_NEAR(r.numeric, 2.0, 1e-6);
  EXPECT_TRUE(r.pass);
  EXPECT_TRUE(t.passed());
}

TEST(CmdExample, Example2Energy) {
  const auto t = fwkb::app::cmd_example(example(Model::example2, 0.5, 0.5, 0.0));
  const auto& r = find(t, "energy");
  EXPECT_DOUBLE_EQ(r.analytic, 1.0);
  EXPECT_NEAR(r.numeric, 1.0, 1e-6);
  EXPECT_TRUE(t.passed());
  EXPECT_TRUE(fwkb::app::cmd_example(example(Model::example2, 1.0, 0.0, 2.0)).passed());
}

TEST(CmdExample, ZeroEnergyAction) {
  const auto t = fwkb::app::cmd_example(example(Model::example1, 0.0, 0.0));
  const auto& s = find(t, "S");
  EXPECT_EQ(s.analytic, 0.0);
  EXPECT_EQ(s.numeric, 0.0);
  EXPECT_TRUE(s.pass);
  EXPECT_TRUE(t.passed());
  EXPECT_FALSE(t.notes.empty());
}

TEST(CmdExample, DefaultsPassForBothExamples) {
  EXPECT_TRUE(fwkb::app::cmd_example(example(Model::example1, 1.0, 1.0)).passed());
  EXPECT_TRUE(fwkb::app::cmd_example(example(Model::example2, 1.0, 1.0, 1.0)).passed());
}

TEST(CmdExample, ZeroToleranceFails) {
  RunConfig c = example(Model::example1, 2.0, 0.5);
  c.tolerances.set("eigenvalue", 0.0);
  EXPECT_FALSE(fwkb::app::cmd_example(c).passed());
}

TEST(CmdExample, OutputIsDeterministic) {
  const RunConfig c = example(Model::example2, 1.3, 0.4, 0.7);
  EXPECT_EQ(render(fwkb::app::cmd_example(c), OutputFormat::csv),
            render(fwkb::app::cmd_example(c), OutputFormat::csv));
}

TEST(CmdSweep, EnergySweepTracksMomentum) {
  const RunConfig c = example(Model::example1, 1.0, 1.0);
  const auto t = fwkb::app::cmd_sweep(c, SweepOptions{"e1", {0.5, 2.0, 8.0}});
  ASSERT_EQ(t.key_name, "e1");
  const double expected[] = {1.0, 2.0, 4.0};
  for (std::size_t i = 0; i < 3; ++i) {
    const auto& r = find(t, "momentum_alpha", i);
    EXPECT_DOUBLE_EQ(r.analytic, expected[i]);
    EXPECT_NEAR(r.numeric, expected[i], 1e-6);
  }
  EXPECT_TRUE(t.passed());
}

TEST(CmdSweep, StepSweepShowsSecondOrder) {
  const RunConfig c = example(Model::example1, 1.0, 1.0);
  const auto t = fwkb::app::cmd_sweep(c, SweepOptions{"fd_step", {1e-2, 1e-3, 1e-4}});
  for (const auto& name : {"momentum_alpha", "energy"}) {
    const double r0 = find(t, name, 0).residual;
    const double r1 = find(t, name, 1).residual;
    const double r2 = find(t, name, 2).residual;
    EXPECT_NEAR(std::log10(r0 / r1), 2.0, 0.1) << name;
    EXPECT_NEAR(std::log10(r1 / r2), 2.0, 0.1) << name;
  }
}

TEST(CmdSweep, QIsIrrelevantForExample1) {
  const RunConfig c = example(Model::example1, 1.0, 1.0);
  const auto t = fwkb::app::cmd_sweep(c, SweepOptions{"q", {0.0, 1.0, 3.0}});
  const std::size_t block = t.records.size() / 3;
  for (std::size_t i = 0; i < block; ++i) {
    EXPECT_EQ(t.records[i].numeric, t.records[i + block].numeric) << t.records[i].quantity;
    EXPECT_EQ(t.records[i].numeric, t.records[i + 2 * block].numeric) << t.records[i].quantity;
  }
}

TEST(CmdSweep, Errors) {
  const RunConfig c;
  EXPECT_THROW(fwkb::app::cmd_sweep(c, SweepOptions{"e1", {}}), fwkb::ConfigError);
  EXPECT_THROW(fwkb::app::cmd_sweep(c, SweepOptions{"mass", {1.0}}), fwkb::ConfigError);
}

TEST(CmdDeriv, LinearHalfOrder) {
  RunConfig c;
  c.alpha = 0.5;
  c.grid = fwkb::app::parse_grid("0,1,4096");
  const auto t = fwkb::app::cmd_deriv(c, DerivOptions{"x", fwkb::Side::left, 0});
  const auto& err = find(t, "max_interior_error");
  EXPECT_LT(err.numeric, 1e-3);
  EXPECT_TRUE(t.passed());
  const auto& last = find(t, "deriv(x=1)");
  EXPECT_NEAR(last.analytic, 1.1283791671, 1e-10);
}

TEST(CmdDeriv, IntegerOrderSquare) {
  RunConfig c;
  c.alpha = 1.0;
  c.grid = fwkb::app::parse_grid("0,1,64");
  const auto t = fwkb::app::cmd_deriv(c, DerivOptions{"x^2", fwkb::Side::left, 8});
  EXPECT_TRUE(t.passed());
  EXPECT_NEAR(find(t, "deriv(x=0.5)").numeric, 1.0, 1e-12);
}

TEST(CmdDeriv, RightConstantFlagsBaseNode) {
  RunConfig c;
  c.beta = 0.5;
  c.grid = fwkb::app::parse_grid("0,1,4096");
  const auto t = fwkb::app::cmd_deriv(c, DerivOptions{"1", fwkb::Side::right, 512});
  const auto& base = find(t, "deriv(x=1)");
  EXPECT_TRUE(std::isnan(base.numeric));
  EXPECT_EQ(base.tolerance, INFINITY);
  bool flagged = false;
  for (const auto& n : t.notes) flagged = flagged || n == "node x=1 flagged divergent";
  EXPECT_TRUE(flagged);
  // Away from x = b the values follow (b-x)^-1/2 / Gamma(1/2).
  EXPECT_NEAR(find(t, "deriv(x=0.5)").numeric, 1.0 / std::sqrt(0.5 * M_PI), 1e-3);
}

TEST(CmdDeriv, UnknownFunction) {
  EXPECT_THROW(fwkb::app::cmd_deriv(RunConfig{}, DerivOptions{"sin", fwkb::Side::left, 0}), fwkb::ConfigError);
}
