#include "dgrover/montecarlo.hpp"

#include <cmath>
#include <string>

#include <omp.h>

#include "dgrover/errors.hpp"

namespace dgrover {

void ExperimentConfig::validate() const {
  if (samples < 1) throw DomainError("samples must be >= 1");
  noise.validate();
}

PhaseSchedule build_schedule(const ExperimentConfig& config) {
  const Fraction lambda(config.lambda);
  switch (config.algorithm) {
    case ScheduleKind::original: return original_schedule(lambda);
    case ScheduleKind::improved: return improved_schedule(lambda);
    case ScheduleKind::d2p: return d2p_schedule(lambda, config.kd.value_or(critical_steps(lambda).k));
    case ScheduleKind::positioned:
      if (!config.position) throw DomainError("positioned schedule needs a position");
      return positioned_schedule(lambda, *config.position);
  }
  throw DomainError("unknown algorithm");
}

double run_trial(const PhaseSchedule& schedule, const NoiseSpec& spec, const RngStream& stream) {
  const std::vector<PhaseOffset> offsets = perturb(schedule, spec, stream);
  return success_probability(apply_schedule(schedule, make_initial_state(schedule.lambda), offsets));
}

TrialStats summarize(const std::vector<double>& values, std::uint64_t seed) {
  TrialStats stats;
  stats.seed = seed;
  stats.samples = static_cast<std::int64_t>(values.size());
  double mean = 0.0;
  double m2 = 0.0;
  std::int64_t n = 0;
  for (const double v : values) {
    ++n;
    const double delta = v - mean;
    mean += delta / static_cast<double>(n);
    m2 += delta * (v - mean);
  }
  stats.mean = mean;
  if (n > 1) {
    const double variance = m2 / static_cast<double>(n - 1);
    stats.std_error = std::sqrt(variance / static_cast<double>(n));
  }
  return stats;
}

TrialStats run_experiment(const PhaseSchedule& schedule, const NoiseSpec& noise, std::int64_t samples,
                          std::uint64_t seed, int threads) {
  if (samples < 1) throw DomainError("samples must be >= 1");
  noise.validate();
  std::vector<double> values(static_cast<std::size_t>(samples));
  const int team = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for schedule(static) num_threads(team)
  for (std::int64_t i = 0; i < samples; ++i) {
    values[static_cast<std::size_t>(i)] =
        run_trial(schedule, noise, RngStream{seed, static_cast<std::uint64_t>(i)});
  }
  return summarize(values, seed);
}

TrialStats run_experiment_serial(const PhaseSchedule& schedule, const NoiseSpec& noise,
                                 std::int64_t samples, std::uint64_t seed) {
  if (samples < 1) throw DomainError("samples must be >= 1");
  noise.validate();
  std::vector<double> values(static_cast<std::size_t>(samples));
  for (std::int64_t i = 0; i < samples; ++i) {
    values[static_cast<std::size_t>(i)] =
        run_trial(schedule, noise, RngStream{seed, static_cast<std::uint64_t>(i)});
  }
  return summarize(values, seed);
}

TrialStats run_experiment(const ExperimentConfig& config, int threads) {
  config.validate();
  return run_experiment(build_schedule(config), config.noise, config.samples, config.seed, threads);
}

std::vector<SweepRow> sweep(const SweepSpec& spec, int threads) {
  if (spec.values.empty()) throw DomainError("sweep grid is empty");
  if (spec.algorithms.empty()) throw DomainError("sweep needs at least one algorithm");
  std::vector<SweepRow> rows;
  rows.reserve(spec.values.size() * spec.algorithms.size());
  for (const double value : spec.values) {
    for (const ScheduleKind algorithm : spec.algorithms) {
      SweepRow row;
      row.config = spec.base;
      row.config.algorithm = algorithm;
      switch (spec.axis) {
        case SweepAxis::lambda: row.config.lambda = value; break;
        case SweepAxis::variance: row.config.noise.reflection.variance = value; break;
        case SweepAxis::position: row.config.position = static_cast<int>(std::lround(value)); break;
      }
      try {
        row.stats = run_experiment(row.config, threads);
      } catch (const std::exception& e) {
        row.error = e.what();
      }
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

std::vector<double> linspace(double lo, double hi, int n) {
  if (n < 1) return {};
  if (n == 1) return {lo};
  std::vector<double> out(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (n - 1);
  out.back() = hi;
  return out;
}

}  // namespace dgrover
