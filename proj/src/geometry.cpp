#include "dgrover/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dgrover/errors.hpp"

namespace dgrover {

namespace {

BlochPoint rotate(const Operator2& op, const BlochPoint& p) {
  return bloch_point(op * state_from_bloch(p));
}

BlochPoint minus(const BlochPoint& a, const BlochPoint& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }

BlochPoint scaled(const BlochPoint& a, double s) { return {a.x * s, a.y * s, a.z * s}; }

}  // namespace

double phase_offset_from_pi(double beta) {
  double w = std::remainder(beta - kPi, 2.0 * kPi);
  if (w <= -kPi) w += 2.0 * kPi;
  return w;
}

double great_circle_distance(const BlochPoint& a, const BlochPoint& b) {
  const BlochPoint c{a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
  return std::atan2(c.norm(), a.dot(b));
}

StepGeometry step_geometry(const BlochPoint& start, double beta, Fraction lambda) {
  StepGeometry g;
  g.beta = beta;
  g.a1 = start;
  g.b1 = {-start.x, -start.y, start.z};  // S_o: rotation by π about z
  g.a2 = rotate(reflection(-beta, lambda), g.b1);
  g.a2_prime = rotate(reflection(-kPi, lambda), g.b1);

  const BlochPoint axis = bloch_point(make_initial_state(lambda));
  g.r = minus(g.b1, scaled(axis, g.b1.dot(axis))).norm();
  g.d = great_circle_distance(g.a1, g.a2_prime);
  if (g.d < 1e-9) {
    throw DegenerateError("A1 coincides with A2' (d=" + std::to_string(g.d) + ")");
  }
  g.gamma = g.r * std::abs(phase_offset_from_pi(beta)) / g.d;
  return g;
}

double warped_path_deviation(const StepGeometry& geom, double delta_beta) {
  const double offset = phase_offset_from_pi(geom.beta);
  if (offset == 0.0) return 0.0;
  const double sign = offset > 0.0 ? 1.0 : -1.0;
  const double delta_gamma = (geom.r / geom.d) * delta_beta * sign;
  return -geom.d * std::sin(geom.gamma) * delta_gamma;
}

double schedule_deviation(const PhaseSchedule& schedule, std::span<const double> delta_betas) {
  if (delta_betas.size() != schedule.size()) {
    throw LengthMismatchError("deviation list has " + std::to_string(delta_betas.size()) +
                              " entries for " + std::to_string(schedule.size()) + " steps");
  }
  ReducedState state = make_initial_state(schedule.lambda);
  double total = 0.0;
  for (std::size_t i = 0; i < schedule.size(); ++i) {
    const double beta = schedule.betas[i];
    if (delta_betas[i] != 0.0) {
      total += warped_path_deviation(step_geometry(bloch_point(state), beta, schedule.lambda),
                                     delta_betas[i]);
    }
    state = grover_iterate(beta, schedule.lambda) * state;
  }
  return total;
}

}  // namespace dgrover
