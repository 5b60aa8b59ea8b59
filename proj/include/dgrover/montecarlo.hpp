#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dgrover/noise.hpp"
#include "dgrover/schedules.hpp"

namespace dgrover {

struct ExperimentConfig {
  ScheduleKind algorithm = ScheduleKind::improved;
  double lambda = 0.04;
  std::optional<int> kd;        // d2p only; defaults to max(2, ⌈k0⌉)
  std::optional<int> position;  // positioned only
  NoiseSpec noise;
  std::int64_t samples = 10000;
  std::uint64_t seed = 0;

  /// Throws DomainError on samples < 1 or an invalid noise spec.
  void validate() const;
};

struct TrialStats {
  double mean = 0.0;
  double std_error = 0.0;  // sample standard deviation / √samples
  std::int64_t samples = 0;
  std::uint64_t seed = 0;
};

/// Builds the schedule the config describes; propagates DomainError/SolverError.
PhaseSchedule build_schedule(const ExperimentConfig& config);

/// perturb → apply_schedule → success probability.
double run_trial(const PhaseSchedule& schedule, const NoiseSpec& spec, const RngStream& stream);

/// Trials (seed, 0..samples−1) evaluated in parallel with OpenMP, reduced in
/// trial order. `threads` ≤ 0 uses the OpenMP default. The result does not
/// depend on the thread count.
TrialStats run_experiment(const ExperimentConfig& config, int threads = 0);
TrialStats run_experiment(const PhaseSchedule& schedule, const NoiseSpec& noise, std::int64_t samples,
                          std::uint64_t seed, int threads = 0);

/// Single-threaded reference for run_experiment.
TrialStats run_experiment_serial(const PhaseSchedule& schedule, const NoiseSpec& noise,
                                 std::int64_t samples, std::uint64_t seed);

/// Welford mean / variance over values in index order.
TrialStats summarize(const std::vector<double>& values, std::uint64_t seed);

enum class SweepAxis { lambda, variance, position };

struct SweepSpec {
  ExperimentConfig base;
  SweepAxis axis = SweepAxis::lambda;
  std::vector<double> values;  // λ, σ² of the gaussian reflection law, or position n
  std::vector<ScheduleKind> algorithms{ScheduleKind::original, ScheduleKind::d2p,
                                       ScheduleKind::improved};
};

struct SweepRow {
  ExperimentConfig config;
  std::optional<TrialStats> stats;
  std::string error;  // set when stats is empty
};

/// One row per grid value per algorithm, grid-major. Failing points become
/// error rows. Throws DomainError on an empty grid.
std::vector<SweepRow> sweep(const SweepSpec& spec, int threads = 0);

/// n evenly spaced points on [lo, hi] inclusive.
std::vector<double> linspace(double lo, double hi, int n);

}  // namespace dgrover
