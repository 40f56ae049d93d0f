#include <gtest/gtest.h>

#include <cmath>

#include "qsl_horizon/qsl_bounds.hpp"

using namespace qsl;

namespace {

// Unitary-free toy: Bloch vector shrinking along x as e^{-t}.
Trajectory shrinking(double t_max) {
  Trajectory traj;
  traj.state = [](double t) { return state_from_bloch({std::exp(-t), 0.0, 0.0}); };
  traj.generator = [](double t) { return Matrix2{0.0, -0.5 * std::exp(-t), -0.5 * std::exp(-t), 0.0}; };
  traj.t_max = t_max;
  return traj;
}

// Evolves until t = 1, then stays put.
Trajectory frozen_after_one() {
  Trajectory traj;
  traj.state = [](double t) { return state_from_bloch({std::exp(-std::min(t, 1.0)), 0.0, 0.0}); };
  traj.generator = [](double t) {
    const double r = t < 1.0 ? -0.5 * std::exp(-t) : 0.0;
    return Matrix2{0.0, r, r, 0.0};
  };
  traj.t_max = 5.0;
  return traj;
}

}  // namespace

TEST(Bounds, StationarySegment) {
  const auto traj = frozen_after_one();
  for (const auto& r : {ml_bound_numeric(traj, 2.0, 1.0), mt_bound_numeric(traj, 2.0, 1.0),
                        unified_bound_numeric(traj, 2.0, 1.0)}) {
    EXPECT_TRUE(r.stationary());
    EXPECT_EQ(r.tau_qsl, 0.0);
    EXPECT_EQ(r.numerator, 0.0);
  }
  EXPECT_EQ(unified_bound_numeric(traj, 2.0, 1.0).bound_kind, BoundKind::unified);
}

TEST(Bounds, HandComputedToyTrajectory) {
  const auto traj = shrinking(3.0);
  const double tau = 0.5, td = 1.0;
  const double r1 = std::exp(-tau), r2 = std::exp(-tau - td);
  const double numerator = 0.5 * r1 * (r1 - r2);
  EXPECT_NEAR(qsl_numerator(traj, tau, td), numerator, 1e-15);

  // Generator singular values are both e^{-t}/2; rho_tau eigenvalues sum to 1.
  const double ml_avg = 0.5 * (std::exp(-tau) - std::exp(-tau - td)) / td;
  const auto ml = ml_bound_numeric(traj, tau, td);
  EXPECT_NEAR(ml.tau_qsl, numerator / ml_avg, 1e-12);
  EXPECT_NEAR(ml.ratio, ml.tau_qsl / td, 1e-15);
  EXPECT_EQ(ml.bound_kind, BoundKind::ml);

  const auto mt = mt_bound_numeric(traj, tau, td);
  EXPECT_NEAR(mt.tau_qsl, numerator / (std::sqrt(2.0) * ml_avg), 1e-12);
  EXPECT_EQ(mt.bound_kind, BoundKind::mt);

  BoundOptions sq;
  sq.mt_form = MTForm::sum_squares;
  const double sq_avg = 0.25 * (std::exp(-2 * tau) - std::exp(-2 * tau - 2 * td)) / td;
  EXPECT_NEAR(mt_bound_numeric(traj, tau, td, sq).tau_qsl, numerator / sq_avg, 1e-12);

  const auto unified = unified_bound_numeric(traj, tau, td);
  EXPECT_EQ(unified.tau_qsl, std::max(ml.tau_qsl, mt.tau_qsl));
  EXPECT_EQ(unified.bound_kind, BoundKind::ml);
}

TEST(Bounds, RatioNeverExceedsOne) {
  const auto traj = shrinking(10.0);
  for (double tau : {0.0, 1.0, 4.0}) {
    for (double td : {0.01, 0.5, 3.0}) EXPECT_LE(ml_bound_numeric(traj, tau, td).ratio, 1.0 + 1e-9);
  }
}

TEST(Bounds, VanishingDrivingTimeLimit) {
  const auto traj = shrinking(3.0);
  EXPECT_LT(ml_bound_numeric(traj, 1.0, 1e-6).tau_qsl, 2e-6);
}

TEST(Bounds, ConvergedUnderTighterQuadrature) {
  const auto traj = shrinking(3.0);
  BoundOptions tight;
  tight.quadrature.abs_tol = 1e-16;
  tight.quadrature.rel_tol = 3e-14;
  tight.quadrature.max_subdivisions = 8000;
  EXPECT_NEAR(ml_bound_numeric(traj, 0.3, 2.0).tau_qsl, ml_bound_numeric(traj, 0.3, 2.0, tight).tau_qsl, 1e-12);
}

TEST(Bounds, DomainAndSegmentChecks) {
  const auto traj = shrinking(1.0);
  EXPECT_THROW(ml_bound_numeric(traj, 0.5, 1.0), std::invalid_argument);
  EXPECT_THROW(ml_bound_numeric(traj, -0.1, 0.5), std::invalid_argument);
  EXPECT_THROW(ml_bound_numeric(traj, 0.0, 0.0), std::invalid_argument);
  EXPECT_THROW(ml_bound_numeric(Trajectory{}, 0.0, 0.5), std::invalid_argument);
}

TEST(Bounds, QuadratureFailureIsReported) {
  Trajectory traj = shrinking(3.0);
  traj.generator = [](double t) { return Matrix2{0.0, std::sin(1.0 / (t + 1e-9)), 0.0, 0.0}; };
  BoundOptions opts;
  opts.quadrature.max_subdivisions = 5;
  try {
    ml_bound_numeric(traj, 0.0, 1.0, opts);
    FAIL() << "expected numerical_error";
  } catch (const numerical_error& e) {
    EXPECT_GT(e.error_estimate(), 0.0);
  }
}

TEST(Bounds, ToStrings) {
  EXPECT_STREQ(to_string(BoundKind::ml), "ML");
  EXPECT_STREQ(to_string(BoundKind::mt), "MT");
  EXPECT_STREQ(to_string(BoundKind::unified), "unified");
}
