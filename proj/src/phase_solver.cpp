#include "dgrover/phase_solver.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <string>

#include "dgrover/errors.hpp"
#include "dgrover/schedules.hpp"

namespace dgrover {

namespace {

constexpr double kJacobianStep = 1e-6;
constexpr double kEdgeSnap = 1e-12;

Operator2 pi_power(Fraction lambda, int m) {
  const Operator2 g = grover_iterate(kPi, lambda);
  Operator2 out = Operator2::identity();
  for (int i = 0; i < m; ++i) out = g * out;
  return out;
}

// Caches the π prefix state and the π suffix matrix of a template so each
// residual evaluation only multiplies the designed steps.
class ResidualEvaluator {
 public:
  explicit ResidualEvaluator(const TwoPhaseTemplate& tmpl) : tmpl_(tmpl) {
    tmpl_.validate();
    start_ = make_initial_state(tmpl.lambda);
    if (!tmpl.alternating) {
      start_ = pi_power(tmpl.lambda, tmpl.prefix) * start_;
      suffix_ = pi_power(tmpl.lambda, tmpl.suffix);
    }
  }

  Complex operator()(double beta1, double beta2) const {
    const Operator2 g1 = grover_iterate(beta1, tmpl_.lambda);
    const Operator2 g2 = grover_iterate(beta2, tmpl_.lambda);
    ReducedState s = start_;
    if (tmpl_.alternating) {
      for (int i = 0; i < tmpl_.total_steps; ++i) s = ((i % 2 == 0) ? g1 : g2) * s;
      return s.r;
    }
    return (suffix_ * (g2 * (g1 * s))).r;
  }

 private:
  TwoPhaseTemplate tmpl_;
  ReducedState start_{};
  Operator2 suffix_{};
};

struct NewtonOutcome {
  double beta1;
  double beta2;
  double magnitude;
  int iterations;
};

// Damped Newton on (Re, Im) of the residual with a central-difference Jacobian.
NewtonOutcome newton(const ResidualEvaluator& f, double b1, double b2, int max_iterations) {
  Complex value = f(b1, b2);
  double magnitude = std::abs(value);
  int it = 0;
  for (; it < max_iterations && magnitude > 1e-16; ++it) {
    const Complex d1 = (f(b1 + kJacobianStep, b2) - f(b1 - kJacobianStep, b2)) / (2 * kJacobianStep);
    const Complex d2 = (f(b1, b2 + kJacobianStep) - f(b1, b2 - kJacobianStep)) / (2 * kJacobianStep);
    const double det = d1.real() * d2.imag() - d2.real() * d1.imag();
    if (std::abs(det) < 1e-300) break;
    double s1 = (d2.imag() * value.real() - d2.real() * value.imag()) / det;
    double s2 = (-d1.imag() * value.real() + d1.real() * value.imag()) / det;
    const double len = std::hypot(s1, s2);
    if (len > 1.0) {
      s1 /= len;
      s2 /= len;
    }

    bool improved = false;
    for (double t = 1.0; t >= 1.0 / 1024.0; t *= 0.5) {
      const double n1 = b1 - t * s1;
      const double n2 = b2 - t * s2;
      const Complex trial = f(n1, n2);
      if (std::abs(trial) < magnitude) {
        b1 = n1;
        b2 = n2;
        value = trial;
        magnitude = std::abs(trial);
        improved = true;
        break;
      }
    }
    if (!improved) break;
  }
  return {b1, b2, magnitude, it};
}

double wrap_angle(double x) {
  double w = std::remainder(x, 2.0 * kPi);  // [−π, π]
  if (w <= -kPi) w += 2.0 * kPi;
  return w;
}

// Maps a root to its representative in β1 ∈ [0, π], β2 ∈ (−π, 0]. The mirror
// (−β1, −β2) is also a root since G(−β) = conj(G(β)).
bool canonicalize(double& b1, double& b2) {
  b1 = wrap_angle(b1);
  b2 = wrap_angle(b2);
  if (b1 < 0.0) {
    b1 = -b1;
    b2 = wrap_angle(-b2);
  }
  const bool self_mirror = b1 <= kEdgeSnap || std::abs(b1 - kPi) <= kEdgeSnap;
  if (self_mirror && b2 > 0.0) b2 = wrap_angle(-b2);
  if (b1 < 0.0 && b1 >= -kEdgeSnap) b1 = 0.0;
  if (b2 > 0.0 && b2 <= kEdgeSnap) b2 = 0.0;
  return b1 >= 0.0 && b1 <= kPi && b2 > -kPi && b2 <= 0.0;
}

struct Candidate {
  double beta1;
  double beta2;
  double magnitude;
};

std::optional<SolveResult> attempt(const ResidualEvaluator& f, double b1, double b2,
                                   int max_iterations, int& iterations) {
  const NewtonOutcome out = newton(f, b1, b2, max_iterations);
  iterations += out.iterations;
  if (out.magnitude > kSolveTolerance) return std::nullopt;
  double c1 = out.beta1;
  double c2 = out.beta2;
  if (!canonicalize(c1, c2)) return std::nullopt;
  const double magnitude = std::abs(f(c1, c2));
  if (magnitude > kSolveTolerance) return std::nullopt;
  return SolveResult{c1, c2, magnitude, iterations, true};
}

struct PhaseParts {
  double cos_phi;
  double nx_sin;  // n_x·sin φ
  double ny_sin;
  double nz_sin;
};

PhaseParts phase_parts(double beta1, double beta2, Fraction lambda) {
  const double l = lambda.value();
  const double mixing = std::sqrt(l * lambda.complement());
  const double s1 = std::sin(beta1 / 2);
  const double s2 = std::sin(beta2 / 2);
  return {std::cos((beta1 + beta2) / 2) + 8 * l * lambda.complement() * s1 * s2,
          2 * mixing * std::sin((beta1 - beta2) / 2), 4 * (1 - 2 * l) * mixing * s1 * s2,
          -(1 - 2 * l) * std::sin((beta1 + beta2) / 2)};
}

double pi_angle(Fraction lambda) { return std::acos(1.0 - 2.0 * lambda.value()); }

}  // namespace

void TwoPhaseTemplate::validate() const {
  if (total_steps < 2) throw DomainError("two-phase template needs at least 2 steps");
  if (alternating) {
    if (prefix != 0 || suffix != 0) throw DomainError("alternating template has no pi padding");
    return;
  }
  if (prefix < 0 || suffix < 0 || prefix + suffix != total_steps - 2) {
    throw DomainError("template padding must satisfy prefix + suffix = k - 2");
  }
}

std::vector<double> TwoPhaseTemplate::betas(double beta1, double beta2) const {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(total_steps));
  if (alternating) {
    for (int i = 0; i < total_steps; ++i) out.push_back(i % 2 == 0 ? beta1 : beta2);
    return out;
  }
  out.insert(out.end(), static_cast<std::size_t>(prefix), kPi);
  out.push_back(beta1);
  out.push_back(beta2);
  out.insert(out.end(), static_cast<std::size_t>(suffix), kPi);
  return out;
}

TwoPhaseTemplate improved_template(Fraction lambda) {
  const int k = critical_steps(lambda).k;
  return {lambda, k, k - 2, 0, false};
}

TwoPhaseTemplate positioned_template(Fraction lambda, int n) {
  const int k = critical_steps(lambda).k;
  if (n < 1 || n > k - 1) {
    throw DomainError("position n=" + std::to_string(n) + " outside [1, " + std::to_string(k - 1) +
                      "]");
  }
  return {lambda, k, n - 1, k - n - 1, false};
}

TwoPhaseTemplate d2p_template(Fraction lambda, int kd) {
  const int k = critical_steps(lambda).k;
  if (kd < k) {
    throw DomainError("k_d=" + std::to_string(kd) + " below the minimum " + std::to_string(k));
  }
  return {lambda, kd, 0, 0, true};
}

Complex residual(const TwoPhaseTemplate& tmpl, double beta1, double beta2) {
  return ResidualEvaluator(tmpl)(beta1, beta2);
}

SolveResult try_solve_two_phase(const TwoPhaseTemplate& tmpl, const SolveOptions& options) {
  const ResidualEvaluator f(tmpl);
  int iterations = 0;
  if (auto r = attempt(f, options.beta1_start, options.beta2_start, options.max_iterations,
                       iterations)) {
    return *r;
  }

  const int n = std::max(2, options.fallback_grid);
  std::vector<Candidate> grid;
  grid.reserve(static_cast<std::size_t>(n * n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double b1 = kPi * i / n;
      const double b2 = -kPi * j / n;
      grid.push_back({b1, b2, std::abs(f(b1, b2))});
    }
  }
  const auto restarts = std::min<std::size_t>(grid.size(), std::max(1, options.fallback_restarts));
  std::partial_sort(grid.begin(), grid.begin() + static_cast<std::ptrdiff_t>(restarts), grid.end(),
                    [](const Candidate& a, const Candidate& b) { return a.magnitude < b.magnitude; });

  SolveResult best{grid.front().beta1, grid.front().beta2, grid.front().magnitude, 0, false};
  for (std::size_t c = 0; c < restarts; ++c) {
    if (auto r = attempt(f, grid[c].beta1, grid[c].beta2, options.max_iterations, iterations)) {
      return *r;
    }
  }
  best.iterations = iterations;
  return best;
}

SolveResult solve_two_phase(const TwoPhaseTemplate& tmpl, const SolveOptions& options) {
  SolveResult result = try_solve_two_phase(tmpl, options);
  if (!result.converged) {
    throw SolverError("no deterministic phase pair found for lambda=" +
                      std::to_string(tmpl.lambda.value()) + ", k=" +
                      std::to_string(tmpl.total_steps) + " (best residual " +
                      std::to_string(result.residual) + ")");
  }
  return result;
}

Operator2 RotationDecomposition::reconstruct() const {
  const double c = std::cos(phi);
  const double s = std::sin(phi);
  const Complex i{0.0, 1.0};
  return {c + i * s * nz, i * s * nx + s * ny, i * s * nx - s * ny, c - i * s * nz};
}

RotationDecomposition rotation_decomposition(double beta1, double beta2, Fraction lambda) {
  const PhaseParts parts = phase_parts(beta1, beta2, lambda);
  const double phi = std::acos(std::clamp(parts.cos_phi, -1.0, 1.0));
  const double sin_phi = std::sin(phi);
  if (std::abs(sin_phi) < 1e-9) {
    throw DegenerateError("G(beta2)G(beta1) is proportional to the identity; axis undefined");
  }
  return {phi, parts.nx_sin / sin_phi, parts.ny_sin / sin_phi, parts.nz_sin / sin_phi};
}

DiagonalizedPiPower::DiagonalizedPiPower(Fraction lambda, int m)
    : phi_lambda(pi_angle(lambda)), exponent(m) {}

Operator2 DiagonalizedPiPower::matrix() const {
  const double h = 1.0 / std::sqrt(2.0);
  const Complex i{0.0, 1.0};
  const Operator2 x{i * h, Complex{h}, Complex{h}, i * h};
  const Operator2 x_inv{-i * h, Complex{h}, Complex{h}, -i * h};
  const Operator2 lambda_pow{std::polar(1.0, exponent * phi_lambda), 0.0, 0.0,
                             std::polar(1.0, -exponent * phi_lambda)};
  const double sign = (exponent % 2 == 0) ? 1.0 : -1.0;
  return Complex{sign} * (x * lambda_pow * x_inv);
}

std::vector<double> positioned_equation_residuals(double beta1, double beta2, Fraction lambda, int k,
                                                  int n) {
  const PhaseParts pp = phase_parts(beta1, beta2, lambda);
  const double pl = pi_angle(lambda);
  const double p = (n - 1) * pl;
  const double q = (k - n - 1) * pl;
  const double sr = std::sqrt(lambda.complement());
  const double st = std::sqrt(lambda.value());
  const double before_a = sr * std::sin(p) + st * std::cos(p);
  const double before_b = sr * std::cos(p) - st * std::sin(p);
  const double cq = std::cos(q);
  const double sq = std::sin(q);

  const double line1 = (pp.nx_sin * cq + pp.nz_sin * sq) * before_a +
                       (pp.nz_sin * cq - pp.nx_sin * sq) * before_b;
  const double line2 = (pp.ny_sin * cq - pp.cos_phi * sq) * before_a +
                       (pp.cos_phi * cq + pp.ny_sin * sq) * before_b;
  return {std::abs(line1), std::abs(line2)};
}

std::vector<double> improved_equation_residuals(double beta1, double beta2, Fraction lambda, int k) {
  const PhaseParts pp = phase_parts(beta1, beta2, lambda);
  const double p = (k - 2) * pi_angle(lambda);
  const double sr = std::sqrt(lambda.complement());
  const double st = std::sqrt(lambda.value());
  const double a = sr * std::sin(p) + st * std::cos(p);
  const double b = sr * std::cos(p) - st * std::sin(p);
  return {std::abs(a * pp.nx_sin + b * pp.nz_sin), std::abs(a * pp.ny_sin + b * pp.cos_phi)};
}

std::vector<double> d2p_equation_residuals(double beta1, double beta2, Fraction lambda, int kd) {
  if (kd % 2 != 0) return {};
  const double l = lambda.value();
  const double s1 = std::sin(beta1 / 2);
  const double s2 = std::sin(beta2 / 2);
  // φ from the matrix itself so the third line cross-checks the cos φ formula.
  const Operator2 product = std::polar(1.0, -(beta1 + beta2) / 2) *
                            (grover_iterate(beta2, lambda) * grover_iterate(beta1, lambda));
  const double phi = std::acos(std::clamp(0.5 * product.trace().real(), -1.0, 1.0));
  const double half = 0.5 * kd * phi;
  // Lines multiplied through by their denominators (sin φ cos(k_d φ/2) and
  // cos(β1/2) cos(β2/2)) so boundary roots such as β = π do not hit poles.
  const double line1 = std::sin(phi) * std::cos(half) + 4 * l * (1 - 2 * l) * s1 * s2 * std::sin(half);
  const double line2 = (1 - 4 * l) * s1 * std::cos(beta2 / 2) + std::cos(beta1 / 2) * s2;
  const double line3 = std::cos((beta1 + beta2) / 2) + 8 * l * (1 - l) * s1 * s2 - std::cos(phi);
  return {std::abs(line1), std::abs(line2), std::abs(line3)};
}

std::vector<double> closed_form_residuals(const TwoPhaseTemplate& tmpl, double beta1, double beta2) {
  tmpl.validate();
  if (tmpl.alternating) return d2p_equation_residuals(beta1, beta2, tmpl.lambda, tmpl.total_steps);
  std::vector<double> out =
      positioned_equation_residuals(beta1, beta2, tmpl.lambda, tmpl.total_steps, tmpl.prefix + 1);
  if (tmpl.suffix == 0) {
    const auto tail = improved_equation_residuals(beta1, beta2, tmpl.lambda, tmpl.total_steps);
    out.insert(out.end(), tail.begin(), tail.end());
  }
  return out;
}

Operator2 grover_real_part(double beta, Fraction lambda) {
  const double l = lambda.value();
  const double mixing = std::sqrt(l * lambda.complement());
  const double c = std::cos(beta);
  return {Complex{(1 - c) * l - 1}, Complex{(1 - c) * mixing}, Complex{(c - 1) * mixing},
          Complex{(1 - c) * l + c}};
}

Operator2 grover_imaginary_generator(Fraction lambda) {
  const double l = lambda.value();
  const double mixing = std::sqrt(l * lambda.complement());
  return {Complex{-l}, Complex{-mixing}, Complex{mixing}, Complex{1 - l}};
}

Complex single_phase_residual(Fraction lambda, int k, int m, double beta) {
  const int n = k - 1 - m;
  const ReducedState before = pi_power(lambda, n) * make_initial_state(lambda);
  return (pi_power(lambda, m) * (grover_iterate(beta, lambda) * before)).r;
}

ImpossibilityScan impossibility_scan(Fraction lambda, int grid_points, double exclusion) {
  if (grid_points < 1) throw DomainError("impossibility scan needs a positive grid");
  ImpossibilityScan scan;
  scan.k = critical_steps(lambda).k;
  scan.grid_points = grid_points;
  scan.exclusion = exclusion;
  scan.min_residual = std::numeric_limits<double>::infinity();
  scan.min_imaginary = std::numeric_limits<double>::infinity();

  const Operator2 imag_gen = grover_imaginary_generator(lambda);
  for (int m = 0; m < scan.k; ++m) {
    const int n = scan.k - 1 - m;
    const ReducedState before = pi_power(lambda, n) * make_initial_state(lambda);
    const Operator2 after = pi_power(lambda, m);
    const double imag_factor = std::abs((after * (imag_gen * before)).r);
    for (int j = 1; j <= grid_points; ++j) {
      const double beta = 2.0 * kPi * j / (grid_points + 1);
      const double near = std::min({beta, std::abs(beta - kPi), std::abs(beta - 2.0 * kPi)});
      if (near < exclusion) continue;
      ++scan.evaluated;
      const double magnitude = std::abs((after * (grover_iterate(beta, lambda) * before)).r);
      if (magnitude < scan.min_residual) {
        scan.min_residual = magnitude;
        scan.argmin_beta = beta;
        scan.argmin_m = m;
      }
      scan.min_imaginary = std::min(scan.min_imaginary, std::abs(std::sin(beta)) * imag_factor);
    }
  }
  return scan;
}

}  // namespace dgrover
