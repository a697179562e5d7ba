// Acceptance suite: prints one PASS/FAIL line per criterion and exits nonzero if any fails.

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "fwkb/app/acceptance.hpp"
#include "fwkb/app/output.hpp"
#include "fwkb/app/tolerances.hpp"

namespace {

int run_cli(const std::string& args) {
  const int status = std::system((std::string(FWKB_CLI_PATH) + " " + args + " 2>/dev/null").c_str());
  if (status == -1 || !WIFEXITED(status)) {
    return -1;
  }
  return WEXITSTATUS(status);
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// `verify` exits 0 with defaults, and zeroing any consulted tolerance yields a nonzero exit
// plus at least one failing record.
bool cli_contract(std::string& detail) {
  const auto dir = std::filesystem::temp_directory_path() / "fwkb_acceptance";
  std::filesystem::create_directories(dir);
  const auto clean = dir / "verify.csv";
  const int base = run_cli("verify --format csv --out " + clean.string());
  if (base != 0) {
    detail = "verify exited " + std::to_string(base);
    return false;
  }
  for (const std::string& name : fwkb::app::acceptance_tolerance_names()) {
    const auto out = dir / ("verify_" + name + ".csv");
    const int code = run_cli("verify --format csv --tol " + name + "=0 --out " + out.string());
    if (code == 0 || slurp(out).find(",false\n") == std::string::npos) {
      detail = "zeroing '" + name + "' did not fail (exit " + std::to_string(code) + ")";
      return false;
    }
  }
  detail = "verify exit 0; " + std::to_string(fwkb::app::acceptance_tolerance_names().size()) +
           " zeroed tolerances each fail";
  return true;
}

}  // namespace

int main() {
  using clock = std::chrono::steady_clock;
  const auto start = clock::now();
  const std::vector<fwkb::app::CriterionResult> results =
      fwkb::app::run_acceptance(fwkb::app::Tolerances::acceptance());

  bool all = true;
  for (const auto& c : results) {
    std::printf("criterion %d: %s  %s\n", c.id, c.passed() ? "PASS" : "FAIL", c.title.c_str());
    for (const auto& r : c.records) {
      std::printf("    %-52s residual %-24s tol %-24s %s\n", r.quantity.c_str(),
                  fwkb::app::format_number(r.residual).c_str(), fwkb::app::format_number(r.tolerance).c_str(),
                  r.pass ? "ok" : "FAIL");
    }
    all = all && c.passed();
  }

  std::string detail;
  const bool contract = cli_contract(detail);
  std::printf("criterion 9: %s  CLI contract (%s)\n", contract ? "PASS" : "FAIL", detail.c_str());
  all = all && contract;

  const double secs = std::chrono::duration<double>(clock::now() - start).count();
  std::printf("%s in %.1f s\n", all ? "ALL CRITERIA PASS" : "SOME CRITERIA FAIL", secs);
  return all ? EXIT_SUCCESS : EXIT_FAILURE;
}
