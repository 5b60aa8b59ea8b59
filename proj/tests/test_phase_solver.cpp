#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "dgrover/errors.hpp"
#include "dgrover/phase_solver.hpp"
#include "dgrover/schedules.hpp"

using namespace dgrover;

namespace {

Complex brute_residual(const TwoPhaseTemplate& tmpl, double b1, double b2) {
  const auto betas = tmpl.betas(b1, b2);
  return apply_phases(betas, tmpl.lambda, make_initial_state(tmpl.lambda)).r;
}

Operator2 power(const Operator2& g, int m) {
  Operator2 out = Operator2::identity();
  for (int i = 0; i < m; ++i) out = g * out;
  return out;
}

}  // namespace

TEST(Template, Layouts) {
  const TwoPhaseTemplate imp = improved_template(Fraction(0.01));
  EXPECT_EQ(imp.total_steps, 8);
  EXPECT_EQ(imp.prefix, 6);
  EXPECT_EQ(imp.suffix, 0);
  const TwoPhaseTemplate pos = positioned_template(Fraction(0.01), 3);
  EXPECT_EQ(pos.prefix, 2);
  EXPECT_EQ(pos.suffix, 4);
  const auto b = pos.betas(1.0, -1.0);
  ASSERT_EQ(b.size(), 8u);
  EXPECT_EQ(b[2], 1.0);
  EXPECT_EQ(b[3], -1.0);
  EXPECT_EQ(b[0], kPi);
  const auto z = d2p_template(Fraction(0.04), 5).betas(1.0, -1.0);
  EXPECT_EQ(z, (std::vector<double>{1.0, -1.0, 1.0, -1.0, 1.0}));
}

TEST(Residual, MatchesDirectSimulation) {
  std::mt19937_64 gen(21);
  std::uniform_real_distribution<double> u(-kPi, kPi);
  for (double l : {0.01, 0.04, 0.125, 0.25}) {
    const Fraction lambda(l);
    const int k = critical_steps(lambda).k;
    for (const auto& t : {improved_template(lambda), positioned_template(lambda, 1), d2p_template(lambda, k + 1)}) {
      for (int i = 0; i < 20; ++i) {
        const double b1 = u(gen);
        const double b2 = u(gen);
        EXPECT_LE(std::abs(residual(t, b1, b2) - brute_residual(t, b1, b2)), 1e-13);
      }
    }
  }
}

TEST(Solver, ShortestImprovedCase) {
  const SolveResult r = solve_two_phase(improved_template(Fraction(0.125)));
  EXPECT_TRUE(r.converged);
  EXPECT_LT(r.residual, 1e-12);
  EXPECT_GT(r.beta1, 0.0);
  EXPECT_LT(r.beta1, kPi);
  EXPECT_GT(r.beta2, -kPi);
  EXPECT_LT(r.beta2, 0.0);
  EXPECT_LT(std::abs(brute_residual(improved_template(Fraction(0.125)), r.beta1, r.beta2)), 1e-12);
}

TEST(Solver, PositionedLastEqualsImproved) {
  const Fraction l(0.01);
  const SolveResult a = solve_two_phase(improved_template(l));
  const SolveResult b = solve_two_phase(positioned_template(l, 7));
  EXPECT_NEAR(a.beta1, b.beta1, 1e-8);
  EXPECT_NEAR(a.beta2, b.beta2, 1e-8);
}

TEST(Solver, SixteenStartsAgree) {
  const TwoPhaseTemplate t = improved_template(Fraction(0.04));
  const SolveResult ref = solve_two_phase(t);
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      SolveOptions opt;
      opt.beta1_start = kPi * (i + 0.5) / 4;
      opt.beta2_start = -kPi * (j + 0.5) / 4;
      const SolveResult r = solve_two_phase(t, opt);
      EXPECT_NEAR(r.beta1, ref.beta1, 1e-8);
      EXPECT_NEAR(r.beta2, ref.beta2, 1e-8);
    }
  }
}

TEST(Solver, SingleZeroOnGridAtQuarter) {
  const TwoPhaseTemplate t = improved_template(Fraction(0.25));
  const SolveResult root = solve_two_phase(t);
  EXPECT_GE(root.beta1, 0.0);
  EXPECT_LE(root.beta1, kPi);
  EXPECT_LE(root.beta2, 0.0);
  EXPECT_GT(root.beta2, -kPi);
  constexpr int n = 200;
  double far_min = 1e9;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double b1 = kPi * i / n;
      const double b2 = -kPi * j / n;
      const double dist = std::hypot(b1 - root.beta1, b2 - root.beta2);
      if (dist > 0.3) far_min = std::min(far_min, std::abs(residual(t, b1, b2)));
    }
  }
  EXPECT_GT(far_min, 1e-3);
}

TEST(Solver, NonConvergenceIsReported) {
  SolveOptions opt;
  opt.max_iterations = 0;
  opt.fallback_restarts = 0;
  const SolveResult r = try_solve_two_phase(improved_template(Fraction(0.04)), opt);
  EXPECT_FALSE(r.converged);
  EXPECT_THROW(solve_two_phase(improved_template(Fraction(0.04)), opt), SolverError);
}

TEST(Solver, TemplateDomain) {
  EXPECT_THROW(positioned_template(Fraction(0.04), 0), DomainError);
  EXPECT_THROW(positioned_template(Fraction(0.04), 4), DomainError);
  EXPECT_THROW(d2p_template(Fraction(0.04), 3), DomainError);
}

TEST(RotationDecomposition, DoublePiValue) {
  const RotationDecomposition d = rotation_decomposition(kPi, kPi, Fraction(0.04));
  EXPECT_NEAR(std::cos(d.phi), -1.0 + 8 * 0.04 * 0.96, 1e-12);
  EXPECT_NEAR(std::cos(d.phi), -0.6928, 1e-12);
}

TEST(RotationDecomposition, Reconstructs) {
  std::mt19937_64 gen(22);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 300; ++i) {
    const double b1 = 2 * kPi * u(gen);
    const double b2 = 2 * kPi * u(gen);
    const Fraction l(0.001 + 0.998 * u(gen));
    RotationDecomposition d;
    try {
      d = rotation_decomposition(b1, b2, l);
    } catch (const DegenerateError&) {
      continue;
    }
    const Operator2 expected =
        std::polar(1.0, -(b1 + b2) / 2) * (grover_iterate(b2, l) * grover_iterate(b1, l));
    EXPECT_LE(d.reconstruct().max_abs_diff(expected), 1e-10);
    EXPECT_NEAR(d.nx * d.nx + d.ny * d.ny + d.nz * d.nz, 1.0, 1e-10);
  }
}

TEST(DiagonalizedPiPower, MatchesRepeatedProduct) {
  for (double l : {0.003, 0.04, 0.2, 0.6}) {
    const Fraction lambda(l);
    for (int m = 0; m <= 30; ++m) {
      EXPECT_LE(DiagonalizedPiPower(lambda, m).matrix().max_abs_diff(power(grover_iterate(kPi, lambda), m)), 1e-12);
    }
  }
}

TEST(GroverSplit, RealAndImaginaryParts) {
  std::mt19937_64 gen(23);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 100; ++i) {
    const double b = 2 * kPi * u(gen);
    const Fraction l(0.01 + 0.98 * u(gen));
    const Operator2 g = grover_real_part(b, l) + Complex(0.0, std::sin(b)) * grover_imaginary_generator(l);
    EXPECT_LE(g.max_abs_diff(grover_iterate(b, l)), 1e-14);
    const Operator2 re = grover_real_part(b, l);
    for (Complex c : {re.m00, re.m01, re.m10, re.m11}) EXPECT_EQ(c.imag(), 0.0);
  }
}

TEST(ClosedForms, SolvedPairsSatisfyEquations) {
  {
    const Fraction l(0.04);
    const SolveResult r = solve_two_phase(improved_template(l));
    for (double e : improved_equation_residuals(r.beta1, r.beta2, l, 4)) EXPECT_LT(e, 1e-8);
  }
  {
    const Fraction l(0.01);
    const SolveResult r = solve_two_phase(positioned_template(l, 3));
    const auto res = positioned_equation_residuals(r.beta1, r.beta2, l, 8, 3);
    EXPECT_FALSE(res.empty());
    for (double e : res) EXPECT_LT(e, 1e-8);
  }
  {
    const Fraction l(0.04);
    const SolveResult r = solve_two_phase(d2p_template(l, 4));
    const auto res = d2p_equation_residuals(r.beta1, r.beta2, l, 4);
    EXPECT_EQ(res.size(), 3u);
    for (double e : res) EXPECT_LT(e, 1e-8);
    EXPECT_TRUE(d2p_equation_residuals(r.beta1, r.beta2, l, 5).empty());
  }
}

TEST(ClosedForms, DetectWrongPhases) {
  const Fraction l(0.04);
  const SolveResult r = solve_two_phase(improved_template(l));
  double worst = 0.0;
  for (double e : improved_equation_residuals(r.beta1 + 0.01, r.beta2, l, 4)) worst = std::max(worst, e);
  EXPECT_GT(worst, 1e-4);
}

TEST(ClosedForms, OddZigzagIsStillDeterministic) {
  const Fraction l(0.04);
  const SolveResult r = solve_two_phase(d2p_template(l, 5));
  EXPECT_NEAR(noiseless_success(d2p_schedule(l, 5)), 1.0, 1e-9);
  EXPECT_LT(r.residual, 1e-12);
}

TEST(Impossibility, NoSingleDesignedPhase) {
  const ImpossibilityScan scan = impossibility_scan(Fraction(0.05), 4000);
  EXPECT_EQ(scan.k, critical_steps(Fraction(0.05)).k);
  EXPECT_GT(scan.evaluated, 4000);
  EXPECT_GT(scan.min_residual, 1e-3);
  EXPECT_GT(scan.min_imaginary, 0.0);
}

TEST(Impossibility, ResidualMatchesBruteForce) {
  const Fraction l(0.05);
  const int k = critical_steps(l).k;
  for (int m = 0; m < k; ++m) {
    std::vector<double> betas(static_cast<std::size_t>(k), kPi);
    betas[static_cast<std::size_t>(k - 1 - m)] = 1.7;
    const Complex brute = apply_phases(betas, l, make_initial_state(l)).r;
    EXPECT_LE(std::abs(single_phase_residual(l, k, m, 1.7) - brute), 1e-13);
  }
}
