#pragma once

// Two-phase deterministic-condition solver.
//
// A template fixes where the two designed phases sit inside a k-step
// schedule; the solver finds (β1, β2) with <R|ψf> = 0 in the domain
// β1 ∈ [0, π), β2 ∈ (−π, 0]. The closed-form phase equations are kept only as
// validation identities; the solve path is the exact operator product.

#include <optional>
#include <vector>

#include "dgrover/bloch.hpp"

namespace dgrover {

struct TwoPhaseTemplate {
  Fraction lambda;
  int total_steps = 2;
  int prefix = 0;  // π steps before the designed pair
  int suffix = 0;  // π steps after the designed pair
  bool alternating = false;

  /// Throws DomainError on an inconsistent layout.
  void validate() const;

  /// Expands to the per-step phase list.
  [[nodiscard]] std::vector<double> betas(double beta1, double beta2) const;
};

/// k = max(2, ⌈k0⌉), pair at the end.
TwoPhaseTemplate improved_template(Fraction lambda);
/// Pair at steps n and n+1 (1-based), 1 ≤ n ≤ k−1.
TwoPhaseTemplate positioned_template(Fraction lambda, int n);
/// Alternating zigzag of length kd.
TwoPhaseTemplate d2p_template(Fraction lambda, int kd);

struct SolveResult {
  double beta1 = 0.0;
  double beta2 = 0.0;
  double residual = 0.0;  // |<R|ψf>|
  int iterations = 0;     // Newton iterations summed over restarts
  bool converged = false;
};

struct SolveOptions {
  double beta1_start = kPi - 0.1;
  double beta2_start = -kPi + 0.1;
  int max_iterations = 100;
  /// Coarse grid resolution per axis for the fallback search.
  int fallback_grid = 64;
  /// Number of best grid cells refined before giving up.
  int fallback_restarts = 8;
};

inline constexpr double kSolveTolerance = 1e-12;

/// <R|ψf> for the template's schedule with the given phases.
Complex residual(const TwoPhaseTemplate& tmpl, double beta1, double beta2);

/// Best effort; `converged` reports whether the residual met kSolveTolerance
/// inside the domain.
SolveResult try_solve_two_phase(const TwoPhaseTemplate& tmpl, const SolveOptions& options = {});

/// Throws SolverError when try_solve_two_phase does not converge.
SolveResult solve_two_phase(const TwoPhaseTemplate& tmpl, const SolveOptions& options = {});

/// e^{−i(β1+β2)/2} G(β2)G(β1) = cos φ I + i sin φ (σ·n), φ ∈ (0, π).
struct RotationDecomposition {
  double phi = 0.0;
  double nx = 0.0;
  double ny = 0.0;
  double nz = 0.0;

  [[nodiscard]] Operator2 reconstruct() const;
};

/// Throws DegenerateError when |sin φ| < 1e-9.
RotationDecomposition rotation_decomposition(double beta1, double beta2, Fraction lambda);

/// G(π)^m through the eigen-decomposition G(π) = −X Λ X⁻¹ with
/// X = (iI + σx)/√2, Λ = diag(e^{iφλ}, e^{−iφλ}), cos φλ = 1 − 2λ.
struct DiagonalizedPiPower {
  double phi_lambda = 0.0;
  int exponent = 0;

  DiagonalizedPiPower(Fraction lambda, int exponent);
  [[nodiscard]] Operator2 matrix() const;
};

// Closed-form phase systems evaluated as |lhs − rhs| per line.

/// Tail pair (pair on the last two steps of k).
std::vector<double> improved_equation_residuals(double beta1, double beta2, Fraction lambda, int k);
/// Pair at position n of k.
std::vector<double> positioned_equation_residuals(double beta1, double beta2, Fraction lambda, int k,
                                                  int n);
/// Alternating zigzag with even kd; empty for odd kd.
std::vector<double> d2p_equation_residuals(double beta1, double beta2, Fraction lambda, int kd);

/// Every closed-form system that applies to the template's layout.
std::vector<double> closed_form_residuals(const TwoPhaseTemplate& tmpl, double beta1, double beta2);

/// Real and imaginary parts of G(β) = G1(β,λ) + i sin β · G2(λ).
Operator2 grover_real_part(double beta, Fraction lambda);
Operator2 grover_imaginary_generator(Fraction lambda);

struct ImpossibilityScan {
  int k = 0;
  int grid_points = 0;
  int evaluated = 0;  // (split, β) pairs outside the excluded neighborhoods
  double exclusion = 0.05;
  double min_residual = 0.0;
  double argmin_beta = 0.0;
  int argmin_m = 0;  // π steps after the single designed step
  /// min over the same grid of |sin β|·|<R|G(π)^m G2 G(π)^n|ψ0>|.
  double min_imaginary = 0.0;
};

/// Scans |<R|G(π)^m G(β) G(π)^n|ψ0>| over m+n = k−1 and `grid_points`
/// interior β values of (0, 2π), skipping β within `exclusion` of 0, π, 2π.
ImpossibilityScan impossibility_scan(Fraction lambda, int grid_points, double exclusion = 0.05);

/// Single-split evaluation used by the scan.
Complex single_phase_residual(Fraction lambda, int k, int m, double beta);

}  // namespace dgrover
