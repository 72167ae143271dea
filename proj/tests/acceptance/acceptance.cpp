// Acceptance run: one PASS/FAIL line per criterion. Usage: acceptance <path-to-sdgforms>

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "sdg/harness.hpp"

namespace {

using sdg::CheckConfig;
using sdg::CheckReport;
using sdg::Json;
using Clock = std::chrono::steady_clock;

struct Result {
  int id;
  std::string name;
  bool pass;
  std::string detail;
};

double seconds_since(Clock::time_point start) { return std::chrono::duration<double>(Clock::now() - start).count(); }

CheckConfig base_config(std::size_t trials) {
  CheckConfig cfg;
  cfg.seed = 42;
  cfg.trials = trials;
  return cfg;
}

// Every report run by the criteria, so residue failures can be counted at the end.
std::vector<CheckReport> g_reports;

struct Batch {
  bool pass = true;
  double seconds = 0;
  std::size_t failures = 0;
  std::string first_failure;
};

Batch run(const std::vector<std::string>& checks, const CheckConfig& cfg) {
  Batch b;
  const auto start = Clock::now();
  for (const auto& name : checks) {
    CheckReport r = sdg::run_check(name, cfg);
    if (!r.passed()) {
      b.pass = false;
      b.failures += r.failures.size();
      if (b.first_failure.empty()) b.first_failure = name + ": " + r.failures.front().value("property", "?");
    }
    g_reports.push_back(std::move(r));
  }
  b.seconds = seconds_since(start);
  return b;
}

std::string describe(const Batch& b, std::size_t trials, const char* limit) {
  std::ostringstream os;
  os.precision(3);
  os << trials << " trials, " << b.failures << " failures, " << std::fixed << b.seconds << " s";
  if (limit) os << " (limit " << limit << ")";
  if (!b.first_failure.empty()) os << "; first: " << b.first_failure;
  return os.str();
}

Result timed(int id, std::string name, const std::vector<std::string>& checks, const CheckConfig& cfg, double limit_s,
             const char* limit_text) {
  const Batch b = run(checks, cfg);
  const bool fast = limit_s <= 0 || b.seconds < limit_s;
  return {id, std::move(name), b.pass && fast, describe(b, cfg.trials, limit_text)};
}

bool mentions_residue(const Json& failure) {
  return failure.value("property", "") == "no residue on valid input" ||
         failure.value("detail", "").find("ResidueError") != std::string::npos;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: acceptance <path-to-sdgforms>\n";
    return 2;
  }
  const std::string cli = argv[1];
  std::vector<Result> results;
  std::size_t cli_residue = 0;

  // 1. Bracket extraction against the commutator oracle, k = 2 and k = 3 in every trial.
  results.push_back(timed(1, "bracket oracle, k=2 and k=3", {"bracket_oracle"}, base_config(100), 1.0, "1 s"));

  // 2. Antisymmetry and Jacobi.
  results.push_back(timed(2, "antisymmetry and Jacobi", {"jacobi"}, base_config(100), 1.0, "1 s"));

  // 3. Sum of tangent vectors and inverse.
  results.push_back(
      timed(3, "tangent sum and inverse", {"tangent_add", "tangent_inverse"}, base_config(100), 0, nullptr));

  // 4. Structure lemmas on arity-3 cubes, every groupoid and representation.
  results.push_back(timed(4, "structure lemmas on arity-3 cubes",
                          {"simplicial", "lemma41", "lemma42", "lemma43", "star_compat"}, base_config(50), 0, nullptr));

  // 5. d+ d+ = 0 for degree 0 and 1 inputs.
  {
    CheckConfig cfg = base_config(50);
    cfg.degrees = {0, 1};
    results.push_back(timed(5, "d+ squares to zero", {"dplus_sq_zero"}, cfg, 30.0, "30 s"));
  }

  // 6. d+ = dx for degree 1 and 2, and factor-order independence.
  {
    CheckConfig cfg = base_config(50);
    cfg.degrees = {1, 2};
    results.push_back(timed(6, "d+ = dx and order independence", {"coincidence", "order_indep"}, cfg, 0, nullptr));
  }

  // 7. Maurer-Cartan defect and the closed-form corollary.
  results.push_back(timed(7, "Maurer-Cartan defect and closed forms", {"mc_formula", "closed_corollary"},
                          base_config(50), 0, nullptr));

  // 9. Classical exterior derivative oracle (run before 8 so its reports are scanned).
  {
    CheckConfig cfg = base_config(50);
    cfg.degrees = {0, 1};
    results.push_back(timed(9, "classical cross-check", {"classical_cross"}, cfg, 0, nullptr));
  }

  // 10. CLI end to end at the default config.
  {
    const std::filesystem::path out =
        std::filesystem::temp_directory_path() / ("sdgforms_acceptance_" + std::to_string(::getpid()) + ".json");
    const std::string command =
        "\"" + cli + "\" verify --suite all --seed 42 --output \"" + out.string() + "\" > /dev/null";
    const auto start = Clock::now();
    const int status = std::system(command.c_str());
    const double elapsed = seconds_since(start);
    const int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;

    std::vector<std::string> problems;
    try {
      std::ifstream file(out);
      const Json report = Json::parse(file);
      problems = sdg::validate_report_schema(report);
      for (const auto& r : report.at("reports"))
        for (const auto& f : r.at("failures"))
          if (mentions_residue(f)) ++cli_residue;
    } catch (const std::exception& e) {
      problems.push_back(e.what());
    }
    std::filesystem::remove(out);

    std::ostringstream os;
    os.precision(3);
    os << "exit " << code << ", " << std::fixed << elapsed << " s (limit 60 s), "
       << (problems.empty() ? "schema-valid report" : "schema problem: " + problems.front());
    if (cli_residue) os << ", " << cli_residue << " residue failures";
    results.push_back(
        {10, "CLI verify --suite all --seed 42", code == 0 && elapsed < 60.0 && problems.empty(), os.str()});
  }

  // 8. No residue on any valid run above, and the planted form raises it.
  {
    std::size_t residue = cli_residue;
    for (const auto& r : g_reports)
      for (const auto& f : r.failures)
        if (mentions_residue(f)) ++residue;
    const std::size_t scanned = g_reports.size();
    const Batch negative = run({"residue_negative"}, base_config(50));
    std::ostringstream os;
    os << scanned << " reports plus the CLI run, " << residue << " residue failures; planted form "
       << (negative.pass ? "raises ResidueError" : "not caught: " + negative.first_failure);
    results.push_back({8, "residue only on invalid input", residue == 0 && negative.pass, os.str()});
  }

  std::sort(results.begin(), results.end(), [](const Result& a, const Result& b) { return a.id < b.id; });
  bool all = true;
  for (const auto& r : results) {
    std::cout << "criterion " << r.id << " " << (r.pass ? "PASS" : "FAIL") << "  " << r.name << ": " << r.detail
              << "\n";
    all = all && r.pass;
  }
  std::cout << (all ? "acceptance: all criteria pass" : "acceptance: FAILED") << "\n";
  return all ? 0 : 1;
}
