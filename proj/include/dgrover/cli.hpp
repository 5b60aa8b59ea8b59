#pragma once

// Command-line front end. Everything is reachable in-process through run()
// so tests can drive the exact code path the binary uses.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dgrover/montecarlo.hpp"

namespace dgrover::cli {

enum ExitCode : int { kOk = 0, kCheckFailed = 1, kUsage = 2, kSolverFailure = 3 };

inline constexpr std::uint64_t kDefaultSeed = 12345;
inline constexpr const char* kSeedEnvVar = "DGROVER_SEED";

/// Runs a command line (without the program name) and returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Figure datasets.

struct FigureOptions {
  std::optional<std::int64_t> samples;
  std::uint64_t seed = kDefaultSeed;
  int grid_points = 50;
  double lambda_min = 0.001;
  double lambda_max = 0.25;
};

struct FigureDefinition {
  std::string id;
  SweepSpec sweep;
};

std::vector<std::string> figure_ids();

/// Throws ParseError for an unknown id.
FigureDefinition figure_definition(std::string_view id, const FigureOptions& options);

/// Exact header: figure,algorithm,lambda,position,dist,mu,var,rate,a,b,samples,seed,mean_success,stderr
std::string csv_header();
std::string csv_row(std::string_view figure, const SweepRow& row);

// Verification suites.

struct CheckResult {
  std::string suite;
  std::string name;
  bool passed = false;
  double value = 0.0;
  double tolerance = 0.0;
  std::string relation;  // how value is compared to tolerance, e.g. "<=" or ">"
};

std::vector<std::string> suite_ids();

/// Throws ParseError for an unknown suite.
std::vector<CheckResult> run_suite(std::string_view suite, std::uint64_t seed);

}  // namespace dgrover::cli
