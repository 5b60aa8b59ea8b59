#include "dgrover/schedules.hpp"

#include <cmath>
#include <string>

#include "dgrover/errors.hpp"
#include "dgrover/phase_solver.hpp"

namespace dgrover {

namespace {

void require_deterministic_domain(Fraction lambda) {
  if (lambda.value() > kMaxDeterministicLambda) {
    throw DomainError("deterministic two-phase schedules require lambda <= 0.25, got " +
                      std::to_string(lambda.value()));
  }
}

PhaseSchedule from_template(const TwoPhaseTemplate& tmpl, ScheduleKind kind) {
  const SolveResult solved = solve_two_phase(tmpl);
  return {tmpl.lambda, tmpl.betas(solved.beta1, solved.beta2), kind, std::nullopt};
}

}  // namespace

std::string_view to_string(ScheduleKind kind) {
  switch (kind) {
    case ScheduleKind::original: return "original";
    case ScheduleKind::d2p: return "d2p";
    case ScheduleKind::improved: return "improved";
    case ScheduleKind::positioned: return "positioned";
  }
  return "unknown";
}

ScheduleKind parse_schedule_kind(std::string_view name) {
  for (auto kind : {ScheduleKind::original, ScheduleKind::d2p, ScheduleKind::improved,
                    ScheduleKind::positioned}) {
    if (to_string(kind) == name) return kind;
  }
  throw ParseError("unknown algorithm '" + std::string(name) + "'");
}

StepCounts critical_steps(Fraction lambda) {
  double k0 = kPi / (4.0 * std::asin(std::sqrt(lambda.value()))) - 0.5;
  // arcsin rounding can push exact integers / half-integers (λ = 1/4, 1/2) off the tie.
  const double halves = std::round(2.0 * k0);
  if (std::abs(2.0 * k0 - halves) < 2e-10) k0 = 0.5 * halves;

  StepCounts counts;
  counts.k0 = k0;
  counts.k_original = static_cast<int>(std::round(k0));  // ties away from zero
  counts.k = std::max(2, static_cast<int>(std::ceil(k0)));
  return counts;
}

PhaseSchedule original_schedule(Fraction lambda) {
  const StepCounts counts = critical_steps(lambda);
  return {lambda, std::vector<double>(static_cast<std::size_t>(counts.k_original), kPi),
          ScheduleKind::original, std::nullopt};
}

PhaseSchedule improved_schedule(Fraction lambda) {
  require_deterministic_domain(lambda);
  return from_template(improved_template(lambda), ScheduleKind::improved);
}

PhaseSchedule d2p_schedule(Fraction lambda, int kd) {
  require_deterministic_domain(lambda);
  return from_template(d2p_template(lambda, kd), ScheduleKind::d2p);
}

PhaseSchedule positioned_schedule(Fraction lambda, int n) {
  require_deterministic_domain(lambda);
  PhaseSchedule schedule = from_template(positioned_template(lambda, n), ScheduleKind::positioned);
  schedule.position = n;
  return schedule;
}

ReducedState apply_schedule(const PhaseSchedule& schedule, const ReducedState& state,
                            std::span<const PhaseOffset> offsets) {
  return apply_phases(schedule.betas, schedule.lambda, state, offsets);
}

ReducedState apply_schedule(const PhaseSchedule& schedule, const ReducedState& state) {
  return apply_phases(schedule.betas, schedule.lambda, state);
}

double noiseless_success(const PhaseSchedule& schedule) {
  return success_probability(apply_schedule(schedule, make_initial_state(schedule.lambda)));
}

}  // namespace dgrover
