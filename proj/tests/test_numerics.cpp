#include <gtest/gtest.h>

#include <cmath>
#include <functional>
#include <numbers>
#include <vector>

#include "qsl_horizon/dephasing_model.hpp"
#include "qsl_horizon/numerics.hpp"

using namespace qsl;
using std::numbers::pi;

TEST(Quadrature, Linear) {
  const auto q = num::integrate_adaptive([](double x) { return x; }, 0.0, 1.0);
  EXPECT_NEAR(q.value, 0.5, 1e-12);
  EXPECT_TRUE(q.converged);
  EXPECT_GE(q.error_estimate, 0.0);
  EXPECT_EQ(q.evaluations, 21u);
}

TEST(Quadrature, SemiInfiniteExponential) {
  const auto q = num::integrate_semi_infinite([](double x) { return std::exp(-x); }, 0.0, 1.0, {});
  EXPECT_NEAR(q.value, 1.0, 1e-10);
}

TEST(Quadrature, KinkWithBreakpoint) {
  const std::vector<double> bp{pi / 2};
  const auto q = num::integrate_adaptive([](double x) { return std::abs(std::cos(x)); }, 0.0, pi, {}, bp);
  EXPECT_NEAR(q.value, 2.0, 1e-10);
}

TEST(Quadrature, KinkWithoutBreakpointStillConverges) {
  const auto q = num::integrate_adaptive([](double x) { return std::abs(std::cos(x)); }, 0.0, pi, 1e-10);
  EXPECT_TRUE(q.converged);
  EXPECT_NEAR(q.value, 2.0, 1e-9);
}

TEST(Quadrature, EmptyAndReversedInterval) {
  EXPECT_EQ(num::integrate_adaptive([](double) { return 1.0; }, 2.0, 2.0).value, 0.0);
  EXPECT_THROW(num::integrate_adaptive([](double) { return 1.0; }, 1.0, 0.0), std::invalid_argument);
}

TEST(Quadrature, BudgetExhaustionIsReported) {
  num::QuadratureOptions opts;
  opts.abs_tol = 1e-15;
  opts.max_subdivisions = 3;
  const auto q = num::integrate_adaptive([](double x) { return std::sin(1.0 / (x + 1e-3)); }, 0.0, 1.0, opts);
  EXPECT_FALSE(q.converged);
  EXPECT_GT(q.error_estimate, 1e-15);
}

TEST(Quadrature, NonFiniteIntegrandIsNotConverged) {
  const auto q = num::integrate_adaptive([](double x) { return x < 0.5 ? 1.0 : NAN; }, 0.0, 1.0);
  EXPECT_FALSE(q.converged);
}

// Honest error estimates: true error within 10x of the reported estimate.
TEST(Quadrature, ErrorEstimatesAreHonest) {
  struct Case {
    std::function<double(double)> f;
    double a, b, exact;
  };
  const std::vector<Case> cases{
      {[](double x) { return std::exp(x); }, 0, 1, std::exp(1.0) - 1},
      {[](double x) { return std::sin(x); }, 0, pi, 2},
      {[](double x) { return 1 / (1 + x * x); }, 0, 1, pi / 4},
      {[](double x) { return std::sqrt(x); }, 0, 1, 2.0 / 3},
      {[](double x) { return std::log(x); }, 1e-300, 1, -1},
      {[](double x) { return 1 / std::sqrt(x); }, 0, 1, 2},
      {[](double x) { return x * x * x * x; }, -1, 2, 33.0 / 5},
      {[](double x) { return std::cos(20 * x); }, 0, pi / 2, 0},
      {[](double x) { return std::exp(-x * x); }, -5, 5, std::sqrt(pi) * std::erf(5.0)},
      {[](double x) { return 1 / (1 + 25 * x * x); }, -1, 1, 0.4 * std::atan(5.0)},
      {[](double x) { return std::abs(x - 0.3); }, 0, 1, 0.29},
      {[](double x) { return x * std::sin(30 * x); }, 0, 2 * pi, -2 * pi / 30},
      {[](double x) { return std::pow(x, 0.25); }, 0, 1, 0.8},
      {[](double x) { return std::exp(-10 * x); }, 0, 3, (1 - std::exp(-30.0)) / 10},
      {[](double x) { return 1 / (x + 0.01); }, 0, 1, std::log(101.0)},
      {[](double x) { return std::cosh(x); }, -2, 2, 2 * std::sinh(2.0)},
      {[](double x) { return std::atan(x); }, 0, 1, pi / 4 - std::log(2.0) / 2},
      {[](double x) { return x * std::exp(-x); }, 0, 10, 1 - 11 * std::exp(-10.0)},
      {[](double x) { return std::sin(x) * std::sin(x); }, 0, pi, pi / 2},
      {[](double x) { return 1 / (2 + std::cos(x)); }, 0, 2 * pi, 2 * pi / std::sqrt(3.0)},
  };
  ASSERT_EQ(cases.size(), 20u);
  for (const auto& c : cases) {
    for (double tol : {1e-6, 1e-10}) {
      const auto q = num::integrate_adaptive(c.f, c.a, c.b, tol);
      ASSERT_TRUE(q.converged);
      EXPECT_LE(std::abs(q.value - c.exact), std::max(10.0 * q.error_estimate, 1e-14)) << c.exact;
    }
  }
}

TEST(GammaFunction, KnownValues) {
  EXPECT_NEAR(num::gamma_function(1.0), 1.0, 1e-15);
  EXPECT_NEAR(num::gamma_function(0.5), std::sqrt(pi), 1e-15);
  EXPECT_NEAR(num::gamma_function(3.5) / (15.0 * std::sqrt(pi) / 8.0), 1.0, 1e-14);
  EXPECT_NEAR(num::gamma_function(-0.5) / (-2.0 * std::sqrt(pi)), 1.0, 1e-14);
}

TEST(GammaFunction, Recurrence) {
  for (double x = -0.99; x <= 6.0; x += 0.0137) {
    if (std::abs(x) < 1e-6) continue;
    const double lhs = num::gamma_function(x + 1.0);
    const double rhs = x * num::gamma_function(x);
    EXPECT_NEAR(lhs / rhs, 1.0, 1e-12) << x;
  }
}

TEST(GammaFunction, RejectsPoles) {
  EXPECT_THROW(num::gamma_function(0.0), std::domain_error);
  EXPECT_THROW(num::gamma_function(-1.0 + 5e-7), std::domain_error);
  EXPECT_THROW(num::gamma_function(-3.0), std::domain_error);
  EXPECT_NO_THROW(num::gamma_function(2e-6));
  EXPECT_NO_THROW(num::gamma_function(1.0));
}

TEST(CentralDifference, Examples) {
  EXPECT_NEAR(num::central_difference([](double t) { return t * t; }, 1.0, 1e-4), 2.0, 1e-7);
  EXPECT_NEAR(num::central_difference([](double t) { return std::sin(t); }, 0.0, 1e-4), 1.0, 1e-8);
}

TEST(CentralDifference, OneSidedAtDomainStart) {
  auto f = [](double t) {
    if (t < 0.0) throw std::domain_error("negative time");
    return std::exp(t);
  };
  EXPECT_NEAR(num::central_difference(f, 0.0, 1e-4, 0.0), 1.0, 1e-7);
  EXPECT_THROW(num::central_difference(f, 0.0, 0.0), std::invalid_argument);
}

TEST(CentralDifference, MatchesDecoherenceRate) {
  const DephasingParams p(1.0, 4.5, 1.0);
  const double fd = num::central_difference([&](double t) { return decoherence_function_T0(t, p); }, 1.0, 1e-5);
  EXPECT_NEAR(fd / decoherence_rate_T0(1.0, p), 1.0, 1e-5);
}
