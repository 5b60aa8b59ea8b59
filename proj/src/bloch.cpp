#include "dgrover/bloch.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dgrover/errors.hpp"

namespace dgrover {

Fraction::Fraction(double value) : value_(value) {
  if (!(value > 0.0 && value < 1.0)) {
    throw DomainError("lambda must lie in (0, 1), got " + std::to_string(value));
  }
}

Operator2 Operator2::adjoint() const {
  return {std::conj(m00), std::conj(m10), std::conj(m01), std::conj(m11)};
}

Complex Operator2::determinant() const { return m00 * m11 - m01 * m10; }

double Operator2::max_abs_diff(const Operator2& other) const {
  return std::max({std::abs(m00 - other.m00), std::abs(m01 - other.m01), std::abs(m10 - other.m10),
                   std::abs(m11 - other.m11)});
}

Operator2 operator*(const Operator2& a, const Operator2& b) {
  return {a.m00 * b.m00 + a.m01 * b.m10, a.m00 * b.m01 + a.m01 * b.m11,
          a.m10 * b.m00 + a.m11 * b.m10, a.m10 * b.m01 + a.m11 * b.m11};
}

Operator2 operator*(Complex scale, const Operator2& a) {
  return {scale * a.m00, scale * a.m01, scale * a.m10, scale * a.m11};
}

Operator2 operator+(const Operator2& a, const Operator2& b) {
  return {a.m00 + b.m00, a.m01 + b.m01, a.m10 + b.m10, a.m11 + b.m11};
}

ReducedState operator*(const Operator2& op, const ReducedState& s) {
  return {op.m00 * s.r + op.m01 * s.t, op.m10 * s.r + op.m11 * s.t};
}

double BlochPoint::norm() const { return std::sqrt(dot(*this)); }

ReducedState make_initial_state(Fraction lambda) {
  return {Complex{std::sqrt(lambda.complement())}, Complex{std::sqrt(lambda.value())}};
}

Operator2 oracle(double delta_alpha) {
  return {Complex{1.0}, Complex{0.0}, Complex{0.0}, std::polar(1.0, kPi + delta_alpha)};
}

Operator2 reflection(double beta, Fraction lambda) {
  const double l = lambda.value();
  const Complex phase = std::polar(1.0, beta);
  const Complex one_minus = 1.0 - phase;
  const double mixing = std::sqrt(l * lambda.complement());
  return {1.0 - one_minus * l, one_minus * mixing, one_minus * mixing, phase + one_minus * l};
}

Operator2 grover_iterate(double beta, Fraction lambda, double delta_alpha) {
  // −S_r(β)·diag(1, e^{i(π+δα)}) written out: the oracle only scales column 1.
  const Operator2 sr = reflection(beta, lambda);
  const Complex o = std::polar(1.0, kPi + delta_alpha);
  return {-sr.m00, -sr.m01 * o, -sr.m10, -sr.m11 * o};
}

ReducedState apply_phases(std::span<const double> betas, Fraction lambda, ReducedState state,
                          std::span<const PhaseOffset> offsets) {
  if (offsets.size() != betas.size()) {
    throw LengthMismatchError("offset list has " + std::to_string(offsets.size()) +
                              " entries for " + std::to_string(betas.size()) + " steps");
  }
  for (std::size_t i = 0; i < betas.size(); ++i) {
    state = grover_iterate(betas[i] + offsets[i].reflection, lambda, offsets[i].oracle) * state;
  }
  return state;
}

ReducedState apply_phases(std::span<const double> betas, Fraction lambda, ReducedState state) {
  for (const double beta : betas) {
    state = grover_iterate(beta, lambda) * state;
  }
  return state;
}

double success_probability(const ReducedState& state) { return std::norm(state.t); }

BlochPoint bloch_point(const ReducedState& state) {
  const Complex coherence = std::conj(state.r) * state.t;
  return {2.0 * coherence.real(), 2.0 * coherence.imag(), std::norm(state.t) - std::norm(state.r)};
}

ReducedState state_from_bloch(const BlochPoint& p) {
  // Put the larger amplitude on the real axis so the division stays well conditioned.
  const double z = std::clamp(p.z, -1.0, 1.0);
  if (z <= 0.0) {
    const double r = std::sqrt(0.5 * (1.0 - z));
    return {Complex{r}, Complex{p.x, p.y} / (2.0 * r)};
  }
  const double t = std::sqrt(0.5 * (1.0 + z));
  return {Complex{p.x, -p.y} / (2.0 * t), Complex{t}};
}

}  // namespace dgrover
