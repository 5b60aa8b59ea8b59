#pragma once

// Bloch-sphere construction of one Grover step: the oracle rotates A1 to B1
// by π about z, then the phase-β reflection turns B1 about the |ψ0> axis.
// A2 is the image under S_r(−β), A2' the image under S_r(−π).

#include <span>

#include "dgrover/bloch.hpp"
#include "dgrover/schedules.hpp"

namespace dgrover {

struct StepGeometry {
  double beta = kPi;
  double d = 0.0;      // great-circle length of A1A2'
  double r = 0.0;      // Euclidean radius of B1's circle about the |ψ0> axis
  double gamma = 0.0;  // r·|β−π| / d
  BlochPoint a1;
  BlochPoint b1;
  BlochPoint a2;
  BlochPoint a2_prime;
};

/// Signed angular offset of β from π, wrapped into (−π, π].
double phase_offset_from_pi(double beta);

/// Throws DegenerateError if A1 and A2' coincide (d < 1e-9).
StepGeometry step_geometry(const BlochPoint& start, double beta, Fraction lambda);

/// First-order change of d·cos γ for a phase error δβ:
/// −d·sin γ·δγ with δγ = (r/d)·δβ·sgn(β−π).
double warped_path_deviation(const StepGeometry& geom, double delta_beta);

/// Sum of per-step deviations with geometry taken on the noiseless trajectory.
double schedule_deviation(const PhaseSchedule& schedule, std::span<const double> delta_betas);

/// Great-circle distance via arccos of the clamped dot product.
double great_circle_distance(const BlochPoint& a, const BlochPoint& b);

}  // namespace dgrover
