// Final acceptance gate: one pass/fail line per criterion, nonzero exit if
// any fails.  Criteria 1-9 run the verification blocks in-process with their
// wall-clock budgets; criterion 10 spawns the command-line driver twice and
// byte-compares the reports.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "ghz/report.hpp"

namespace {

struct Outcome {
  bool pass = false;
  double seconds = 0.0;
};

bool run_criterion(int id, const std::string& name, double budget_seconds,
                   const std::function<bool()>& body) {
  const auto start = std::chrono::steady_clock::now();
  bool ok = false;
  try {
    ok = body();
  } catch (const std::exception& e) {
    std::cout << "criterion " << id << " " << name << ": FAIL (exception: "
              << e.what() << ")\n";
    return false;
  }
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  const bool in_budget = budget_seconds <= 0.0 || elapsed <= budget_seconds;
  const bool pass = ok && in_budget;
  std::printf("criterion %d %s: %s (%.3f s%s)\n", id, name.c_str(),
              pass ? "PASS" : "FAIL", elapsed,
              in_budget ? "" : ", over budget");
  std::fflush(stdout);
  return pass;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

}  // namespace

int main() {
  int failures = 0;
  const auto gate = [&](bool ok) { failures += ok ? 0 : 1; };

  gate(run_criterion(1, "exact-algebra-certificate", 0.001, [] {
    const ghz::GhzFamily family = ghz::ghz_family();
    bool ok = true;
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j)
        ok = ok && ghz::commutes(family[i], family[j]);
    ghz::WeylWord product = ghz::identity_word();
    for (int i = 0; i < 4; ++i) product = ghz::mul(product, family[i]);
    ghz::WeylWord minus_identity = ghz::identity_word();
    minus_identity.phase = ghz::Rational(1);
    return ok && product == minus_identity;
  }));

  gate(run_criterion(2, "lattice-anticommutation", 1.0, [] {
    bool ok = true;
    for (int s : {1, 2, 4}) ok = ok && ghz::lattice_block(s).pass;
    return ok;
  }));

  gate(run_criterion(3, "spin-ghz-reduction", 1.0,
                     [] { return ghz::spin_ghz_block().pass; }));

  gate(run_criterion(4, "eigensystem-coverage", 30.0,
                     [] { return ghz::coverage_block().pass; }));

  gate(run_criterion(5, "constraint-solver-soundness", 5.0,
                     [] { return ghz::solver_block().pass; }));

  gate(run_criterion(6, "measurement-determinism", 10.0,
                     [] { return ghz::measurement_block().pass; }));

  gate(run_criterion(7, "lhv-falsification", 10.0,
                     [] { return ghz::lhv_block().pass; }));

  gate(run_criterion(8, "modular-binary-structure", 30.0,
                     [] { return ghz::modular_block().pass; }));

  gate(run_criterion(9, "basis-completeness", 5.0,
                     [] { return ghz::basis_block().pass; }));

  gate(run_criterion(10, "report-reproducibility", 0.0, [] {
    const std::filesystem::path dir =
        std::filesystem::temp_directory_path() / "ghz-acceptance";
    std::filesystem::create_directories(dir);
    const std::filesystem::path first = dir / "report1.json";
    const std::filesystem::path second = dir / "report2.json";
    std::filesystem::remove(first);
    std::filesystem::remove(second);
    const std::string base = std::string("\"") + GHZ_CLI_BIN +
                             "\" report --all --output ";
    if (std::system((base + first.string()).c_str()) != 0) return false;
    if (std::system((base + second.string()).c_str()) != 0) return false;
    const std::string a = read_file(first);
    const std::string b = read_file(second);
    return !a.empty() && a == b;
  }));

  if (failures == 0) {
    std::cout << "all criteria passed\n";
    return 0;
  }
  std::cout << failures << " criteria failed\n";
  return 1;
}
