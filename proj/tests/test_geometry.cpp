#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "dgrover/errors.hpp"
#include "dgrover/geometry.hpp"
#include "dgrover/schedules.hpp"

using namespace dgrover;

namespace {

const Fraction kLambda(0.04);

BlochPoint start() { return bloch_point(make_initial_state(kLambda)); }

double warped_length(double beta) {
  const StepGeometry g = step_geometry(start(), beta, kLambda);
  return g.d * std::cos(g.gamma);
}

}  // namespace

TEST(PhaseOffset, WrapsAroundPi) {
  EXPECT_NEAR(phase_offset_from_pi(kPi), 0.0, 1e-15);
  EXPECT_NEAR(phase_offset_from_pi(2.5), 2.5 - kPi, 1e-15);
  EXPECT_NEAR(phase_offset_from_pi(-kPi + 0.1), 0.1, 1e-12);
}

TEST(StepGeometry, PiStepIsOnTheWarp) {
  const StepGeometry g = step_geometry(start(), kPi, kLambda);
  EXPECT_NEAR(g.gamma, 0.0, 1e-12);
  EXPECT_NEAR(g.d, 4 * std::asin(std::sqrt(0.04)), 1e-9);
  EXPECT_NEAR(great_circle_distance(g.a2, g.a2_prime), 0.0, 1e-12);
}

TEST(StepGeometry, GammaIdentity) {
  const StepGeometry g = step_geometry(start(), 2.5, kLambda);
  EXPECT_NEAR(g.d * g.gamma, g.r * std::abs(2.5 - kPi), 1e-9);
  EXPECT_GT(g.gamma, 0.0);
}

TEST(StepGeometry, DistanceAndRadiusIndependentOfPhase) {
  const StepGeometry a = step_geometry(start(), kPi, kLambda);
  for (double b : {0.3, 1.7, 2.5, 4.0}) {
    const StepGeometry g = step_geometry(start(), b, kLambda);
    EXPECT_NEAR(g.d, a.d, 1e-12);
    EXPECT_NEAR(g.r, a.r, 1e-12);
  }
}

TEST(StepGeometry, DegenerateAtPiFixedPoints) {
  // (0, ±1, 0) are the fixed points of a π step, so A1 = A2'.
  EXPECT_THROW(step_geometry(BlochPoint{0.0, -1.0, 0.0}, 2.0, kLambda), DegenerateError);
  EXPECT_THROW(step_geometry(BlochPoint{0.0, 1.0, 0.0}, 2.0, kLambda), DegenerateError);
}

TEST(WarpedPathDeviation, FiniteDifference) {
  const double h = 1e-3;
  const StepGeometry g = step_geometry(start(), 2.5, kLambda);
  const double fd = (warped_length(2.5 + h) - warped_length(2.5 - h)) / 2;
  EXPECT_NEAR(warped_path_deviation(g, h), fd, 5e-6);
}

TEST(WarpedPathDeviation, SecondOrderRemainder) {
  const StepGeometry g = step_geometry(start(), 2.5, kLambda);
  std::vector<double> err;
  for (double h : {1e-2, 1e-3, 1e-4}) {
    err.push_back(std::abs(warped_length(2.5 + h) - warped_length(2.5) - warped_path_deviation(g, h)));
  }
  EXPECT_NEAR(std::log10(err[0] / err[1]), 2.0, 0.1);
  EXPECT_NEAR(std::log10(err[1] / err[2]), 2.0, 0.1);
}

TEST(WarpedPathDeviation, VanishesAtPi) {
  const StepGeometry g = step_geometry(start(), kPi, kLambda);
  EXPECT_EQ(warped_path_deviation(g, 0.01), 0.0);
}

TEST(ScheduleDeviation, OnlyDesignedStepsContribute) {
  const PhaseSchedule s = improved_schedule(kLambda);
  std::vector<double> db(s.size(), 0.0);
  db[0] = 0.05;
  EXPECT_EQ(schedule_deviation(s, db), 0.0);
  db[0] = 0.0;
  db[s.size() - 1] = 0.05;
  EXPECT_NE(schedule_deviation(s, db), 0.0);
  EXPECT_THROW(schedule_deviation(s, std::vector<double>(s.size() + 1)), LengthMismatchError);
}
