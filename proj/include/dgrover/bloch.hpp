#pragma once

// Reduced two-dimensional Grover dynamics over the basis {|R>, |T>}.
//
// |R> is the normalized sum of non-solution states, |T> the normalized sum of
// the M solution states. All types are immutable values and every function
// here is pure.

#include <array>
#include <complex>
#include <numbers>
#include <span>

namespace dgrover {

using Complex = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;

/// Fraction of solutions λ = M/N, strictly inside (0, 1).
class Fraction {
 public:
  /// Throws DomainError unless 0 < value < 1.
  explicit Fraction(double value);

  [[nodiscard]] double value() const noexcept { return value_; }
  [[nodiscard]] double complement() const noexcept { return 1.0 - value_; }

  friend bool operator==(Fraction, Fraction) = default;

 private:
  double value_;
};

/// Amplitude pair (a_R, a_T).
struct ReducedState {
  Complex r;
  Complex t;
};

/// Dense 2x2 complex matrix, row-major: [[m00, m01], [m10, m11]].
struct Operator2 {
  Complex m00{1.0};
  Complex m01{0.0};
  Complex m10{0.0};
  Complex m11{1.0};

  static Operator2 identity() { return {}; }

  [[nodiscard]] Operator2 adjoint() const;
  [[nodiscard]] Complex determinant() const;
  [[nodiscard]] Complex trace() const { return m00 + m11; }

  /// Largest entrywise modulus of the difference.
  [[nodiscard]] double max_abs_diff(const Operator2& other) const;
};

Operator2 operator*(const Operator2& a, const Operator2& b);
Operator2 operator*(Complex scale, const Operator2& a);
Operator2 operator+(const Operator2& a, const Operator2& b);
ReducedState operator*(const Operator2& op, const ReducedState& s);

/// Point on the unit Bloch sphere. |T> sits at +z, |R> at -z.
struct BlochPoint {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  [[nodiscard]] double dot(const BlochPoint& o) const { return x * o.x + y * o.y + z * o.z; }
  [[nodiscard]] double norm() const;
};

/// Per-step additive phase errors: reflection uses β+δβ, oracle uses π+δα.
struct PhaseOffset {
  double reflection = 0.0;
  double oracle = 0.0;
};

/// Uniform superposition (√(1−λ), √λ).
ReducedState make_initial_state(Fraction lambda);

/// diag(1, e^{i(π+δα)}).
Operator2 oracle(double delta_alpha = 0.0);

/// Phase-β reflection about the uniform state:
/// [[1−(1−e^{iβ})λ, (1−e^{iβ})√(λ(1−λ))], [(1−e^{iβ})√(λ(1−λ)), e^{iβ}+(1−e^{iβ})λ]].
Operator2 reflection(double beta, Fraction lambda);

/// G(β) = −S_r(β)·S_o(δα).
Operator2 grover_iterate(double beta, Fraction lambda, double delta_alpha = 0.0);

/// Applies G(β_i + δβ_i, λ, δα_i) for i = 1..k in order. Throws
/// LengthMismatchError if offsets.size() != betas.size().
ReducedState apply_phases(std::span<const double> betas, Fraction lambda, ReducedState state,
                          std::span<const PhaseOffset> offsets);
ReducedState apply_phases(std::span<const double> betas, Fraction lambda, ReducedState state);

/// |a_T|².
double success_probability(const ReducedState& state);

/// x = 2Re(a_R* a_T), y = 2Im(a_R* a_T), z = |a_T|² − |a_R|².
BlochPoint bloch_point(const ReducedState& state);

/// Inverse of bloch_point up to global phase.
ReducedState state_from_bloch(const BlochPoint& p);

}  // namespace dgrover
