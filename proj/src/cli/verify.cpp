#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "dgrover/cli.hpp"
#include "dgrover/errors.hpp"
#include "dgrover/geometry.hpp"
#include "dgrover/phase_solver.hpp"
#include "dgrover/statevector.hpp"

namespace dgrover::cli {

namespace {

class Uniform {
 public:
  explicit Uniform(std::uint64_t seed) : engine_(SplitMix64::mix(seed)) {}
  double operator()(double lo, double hi) { return lo + (hi - lo) * uniform01(engine_); }
  std::uint64_t bits() { return engine_(); }

 private:
  SplitMix64 engine_;
};

CheckResult at_most(std::string suite, std::string name, double value, double tol) {
  return {std::move(suite), std::move(name), value <= tol, value, tol, "<="};
}

CheckResult above(std::string suite, std::string name, double value, double bound) {
  return {std::move(suite), std::move(name), value > bound, value, bound, ">"};
}

std::vector<double> lambda_grid(int n) {
  std::vector<double> grid;
  for (int i = 1; i <= n; ++i) grid.push_back(0.001 + 0.249 * i / n);
  return grid;
}

std::vector<CheckResult> unitarity(std::uint64_t seed) {
  Uniform rng(seed);
  double unitary = 0.0;
  double det_sr = 0.0;
  double det_g = 0.0;
  double norm = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double beta = rng(-2 * kPi, 2 * kPi);
    const Fraction lambda(rng(1e-6, 1.0 - 1e-6));
    const double alpha = rng(-kPi, kPi);
    const Operator2 g = grover_iterate(beta, lambda, alpha);
    unitary = std::max(unitary, (g * g.adjoint()).max_abs_diff(Operator2::identity()));
    det_sr = std::max(det_sr, std::abs(reflection(beta, lambda).determinant() - std::polar(1.0, beta)));
    det_g = std::max(det_g, std::abs(grover_iterate(beta, lambda).determinant() + std::polar(1.0, beta)));
  }
  for (int i = 0; i < 200; ++i) {
    const Fraction lambda(rng(1e-4, 0.999));
    std::vector<double> betas(static_cast<std::size_t>(1 + rng.bits() % 100));
    std::vector<PhaseOffset> offsets(betas.size());
    for (std::size_t j = 0; j < betas.size(); ++j) {
      betas[j] = rng(0, 2 * kPi);
      offsets[j] = {rng(-0.3, 0.3), rng(-0.3, 0.3)};
    }
    const ReducedState s = apply_phases(betas, lambda, make_initial_state(lambda), offsets);
    norm = std::max(norm, std::abs(std::norm(s.r) + std::norm(s.t) - 1.0));
  }
  return {at_most("unitarity", "max |G G^dagger - I|", unitary, 1e-12),
          at_most("unitarity", "max |det S_r - e^{i beta}|", det_sr, 1e-12),
          at_most("unitarity", "max |det G + e^{i beta}|", det_g, 1e-12),
          at_most("unitarity", "max norm drift over random schedules", norm, 1e-10)};
}

std::vector<CheckResult> reduction(std::uint64_t seed) {
  Uniform rng(seed);
  double worst = 0.0;
  for (int c = 0; c < 100; ++c) {
    const int qubits = 2 + static_cast<int>(rng.bits() % 11);
    const std::uint64_t dim = std::uint64_t{1} << qubits;
    const std::uint64_t m = 1 + rng.bits() % (dim - 1);
    std::vector<std::uint64_t> all(dim);
    std::iota(all.begin(), all.end(), 0);
    for (std::uint64_t i = 0; i < m; ++i) std::swap(all[i], all[i + rng.bits() % (dim - i)]);
    std::vector<std::uint64_t> marked(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(m));
    PhaseSchedule schedule{Fraction(static_cast<double>(m) / static_cast<double>(dim)), {},
                           ScheduleKind::original, std::nullopt};
    std::vector<PhaseOffset> offsets(static_cast<std::size_t>(rng.bits() % 21));
    for (auto& o : offsets) {
      schedule.betas.push_back(rng(0, 2 * kPi));
      o = {rng(-0.2, 0.2), rng(-0.2, 0.2)};
    }
    worst = std::max(worst, compare_reduced(qubits, marked, schedule, offsets));
  }
  return {at_most("reduction", "max |full - reduced| over 100 random cases", worst, 1e-9)};
}

std::vector<CheckResult> determinism() {
  double improved = 0.0;
  double positioned = 0.0;
  double d2p = 0.0;
  for (const double l : lambda_grid(100)) {
    const Fraction lambda(l);
    improved = std::max(improved, 1.0 - noiseless_success(improved_schedule(lambda)));
    const int k = critical_steps(lambda).k;
    for (int n = 1; n <= k - 1; ++n) {
      positioned = std::max(positioned, 1.0 - noiseless_success(positioned_schedule(lambda, n)));
    }
    for (int kd : {k, k + 1}) d2p = std::max(d2p, 1.0 - noiseless_success(d2p_schedule(lambda, kd)));
  }
  return {at_most("determinism", "improved: max 1 - success", improved, 1e-9),
          at_most("determinism", "positioned: max 1 - success", positioned, 1e-9),
          at_most("determinism", "d2p (k, k+1): max 1 - success", d2p, 1e-9)};
}

std::vector<CheckResult> uniqueness() {
  double spread = 0.0;
  int failures = 0;
  for (const double l : lambda_grid(10)) {
    const TwoPhaseTemplate tmpl = improved_template(Fraction(l));
    std::vector<SolveResult> roots;
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 4; ++j) {
        SolveOptions opt;
        opt.beta1_start = kPi * (i + 0.5) / 4;
        opt.beta2_start = -kPi * (j + 0.5) / 4;
        const SolveResult r = try_solve_two_phase(tmpl, opt);
        if (!r.converged) ++failures;
        roots.push_back(r);
      }
    }
    for (const auto& r : roots) {
      spread = std::max({spread, std::abs(r.beta1 - roots.front().beta1), std::abs(r.beta2 - roots.front().beta2)});
    }
  }
  return {at_most("uniqueness", "non-converged starts", failures, 0),
          at_most("uniqueness", "max root spread across 16 starts", spread, 1e-8)};
}

std::vector<CheckResult> closedforms() {
  double improved = 0.0;
  double positioned = 0.0;
  double d2p = 0.0;
  double degenerate = 0.0;
  for (const double l : lambda_grid(50)) {
    const Fraction lambda(l);
    const int k = critical_steps(lambda).k;
    const SolveResult tail = solve_two_phase(improved_template(lambda));
    for (double e : improved_equation_residuals(tail.beta1, tail.beta2, lambda, k)) improved = std::max(improved, e);
    for (int n = 1; n <= k - 1; ++n) {
      const SolveResult r = solve_two_phase(positioned_template(lambda, n));
      for (double e : positioned_equation_residuals(r.beta1, r.beta2, lambda, k, n)) {
        positioned = std::max(positioned, e);
      }
      if (n == k - 1) {
        degenerate = std::max({degenerate, std::abs(r.beta1 - tail.beta1), std::abs(r.beta2 - tail.beta2)});
      }
    }
    const int even = k % 2 == 0 ? k : k + 1;
    const SolveResult z = solve_two_phase(d2p_template(lambda, even));
    for (double e : d2p_equation_residuals(z.beta1, z.beta2, lambda, even)) d2p = std::max(d2p, e);
  }
  return {at_most("closedforms", "tail-pair system residual", improved, 1e-8),
          at_most("closedforms", "positioned system residual", positioned, 1e-8),
          at_most("closedforms", "even-k_d zigzag system residual", d2p, 1e-8),
          at_most("closedforms", "positioned(n=k-1) vs improved phases", degenerate, 1e-8)};
}

std::vector<CheckResult> single_phase() {
  const ImpossibilityScan scan = impossibility_scan(Fraction(0.05), 4000);
  return {above("theorem2", "min single-phase residual off {0, pi, 2pi} at lambda=0.05", scan.min_residual, 1e-3),
          above("theorem2", "min imaginary part off {0, pi, 2pi} at lambda=0.05", scan.min_imaginary, 0.0)};
}

std::vector<CheckResult> geometry_suite() {
  const Fraction lambda(0.04);
  const BlochPoint start = bloch_point(make_initial_state(lambda));
  const double gamma_pi = step_geometry(start, kPi, lambda).gamma;

  const double beta = 2.5;
  const StepGeometry g = step_geometry(start, beta, lambda);
  const auto f = [&](double b) {
    const StepGeometry s = step_geometry(start, b, lambda);
    return s.d * std::cos(s.gamma);
  };
  std::vector<double> logs_h;
  std::vector<double> logs_e;
  for (double h : {1e-2, 1e-3, 1e-4}) {
    const double err = std::abs(f(beta + h) - f(beta) - warped_path_deviation(g, h));
    logs_h.push_back(std::log10(h));
    logs_e.push_back(std::log10(err));
  }
  const double mh = std::accumulate(logs_h.begin(), logs_h.end(), 0.0) / 3;
  const double me = std::accumulate(logs_e.begin(), logs_e.end(), 0.0) / 3;
  double num = 0.0;
  double den = 0.0;
  for (int i = 0; i < 3; ++i) {
    num += (logs_h[i] - mh) * (logs_e[i] - me);
    den += (logs_h[i] - mh) * (logs_h[i] - mh);
  }
  const double slope = num / den;
  return {at_most("geometry", "gamma at beta=pi", std::abs(gamma_pi), 1e-12),
          at_most("geometry", "|log-log slope - 2| of first-order remainder", std::abs(slope - 2.0), 0.1)};
}

}  // namespace

std::vector<std::string> suite_ids() {
  return {"unitarity", "reduction", "determinism", "uniqueness", "closedforms", "theorem2", "geometry"};
}

std::vector<CheckResult> run_suite(std::string_view suite, std::uint64_t seed) {
  if (suite == "unitarity") return unitarity(seed);
  if (suite == "reduction") return reduction(seed);
  if (suite == "determinism") return determinism();
  if (suite == "uniqueness") return uniqueness();
  if (suite == "closedforms") return closedforms();
  if (suite == "theorem2") return single_phase();
  if (suite == "geometry") return geometry_suite();
  throw ParseError("unknown suite '" + std::string(suite) + "'");
}

}  // namespace dgrover::cli
