#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "dgrover/bloch.hpp"

namespace dgrover {

enum class ScheduleKind { original, d2p, improved, positioned };

std::string_view to_string(ScheduleKind kind);
/// Throws ParseError on an unknown name.
ScheduleKind parse_schedule_kind(std::string_view name);

/// Ordered reflection phases applied left to right: betas[0] acts first.
struct PhaseSchedule {
  Fraction lambda;
  std::vector<double> betas;
  ScheduleKind kind = ScheduleKind::original;
  std::optional<int> position;  // positioned only: index n of the first designed step

  [[nodiscard]] std::size_t size() const noexcept { return betas.size(); }
};

/// k0 = π/(4·arcsin√λ) − 1/2, its rounded value k_g, and the working step
/// count k = max(2, ⌈k0⌉).
struct StepCounts {
  double k0 = 0.0;
  int k_original = 0;
  int k = 2;
};

StepCounts critical_steps(Fraction lambda);

/// Largest λ for which two-phase deterministic schedules are guaranteed to exist.
inline constexpr double kMaxDeterministicLambda = 0.25;

/// [π] × k_g.
PhaseSchedule original_schedule(Fraction lambda);

/// [π] × (k−2) ++ [β1, β2]. Throws DomainError for λ > 1/4, SolverError if
/// the phase solve fails.
PhaseSchedule improved_schedule(Fraction lambda);

/// Alternating [β1, β2, β1, ...] of length k_d. Requires k_d ≥ max(2, ⌈k0⌉).
PhaseSchedule d2p_schedule(Fraction lambda, int kd);

/// [π] × (n−1) ++ [β1, β2] ++ [π] × (k−n−1), for 1 ≤ n ≤ k−1.
PhaseSchedule positioned_schedule(Fraction lambda, int n);

/// Runs the schedule from |ψ0>.
ReducedState apply_schedule(const PhaseSchedule& schedule, const ReducedState& state,
                            std::span<const PhaseOffset> offsets);
ReducedState apply_schedule(const PhaseSchedule& schedule, const ReducedState& state);

/// Noiseless success probability of the schedule started from |ψ0>.
double noiseless_success(const PhaseSchedule& schedule);

}  // namespace dgrover
