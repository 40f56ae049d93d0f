#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "qsl_horizon/core.hpp"

using namespace qsl;

namespace {

BlochVector random_bloch(std::mt19937_64& rng) {
  std::normal_distribution<double> n;
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double x = n(rng), y = n(rng), z = n(rng);
  const double r = std::cbrt(u(rng)) / std::sqrt(x * x + y * y + z * z);
  return {x * r, y * r, z * r};
}

Matrix2 random_matrix(std::mt19937_64& rng) {
  std::normal_distribution<double> n;
  return {cplx(n(rng), n(rng)), cplx(n(rng), n(rng)), cplx(n(rng), n(rng)), cplx(n(rng), n(rng))};
}

}  // namespace

TEST(StateFromBloch, MaximallyMixed) {
  const auto rho = state_from_bloch({0.0, 0.0, 0.0});
  EXPECT_DOUBLE_EQ(rho.rho11(), 0.5);
  EXPECT_DOUBLE_EQ(rho.rho22(), 0.5);
  EXPECT_EQ(rho.rho12(), cplx(0.0));
}

TEST(StateFromBloch, SigmaXEigenstate) {
  const auto m = state_from_bloch({1.0, 0.0, 0.0}).matrix();
  for (const auto& z : m.m) EXPECT_NEAR(std::abs(z - cplx(0.5)), 0.0, 1e-15);
}

TEST(StateFromBloch, PoleState) {
  const auto rho = state_from_bloch({0.0, 0.0, 1.0});
  EXPECT_DOUBLE_EQ(rho.rho11(), 1.0);
  EXPECT_DOUBLE_EQ(rho.rho22(), 0.0);
}

TEST(StateFromBloch, MatchesPauliExpansion) {
  const BlochVector b{0.3, -0.4, 0.5};
  const Matrix2 expected = cplx(0.5) * (Matrix2::identity() + cplx(b.r1) * pauli::x + cplx(b.r2) * pauli::y +
                                        cplx(b.r3) * pauli::z);
  EXPECT_LT((state_from_bloch(b).matrix() - expected).max_abs(), 1e-15);
  const auto back = state_from_bloch(b).bloch();
  EXPECT_NEAR(back.r1, b.r1, 1e-15);
  EXPECT_NEAR(back.r2, b.r2, 1e-15);
  EXPECT_NEAR(back.r3, b.r3, 1e-15);
}

TEST(StateFromBloch, RejectsUnphysical) {
  EXPECT_THROW(state_from_bloch({1.0, 0.1, 0.0}), std::invalid_argument);
  EXPECT_THROW(state_from_bloch({NAN, 0.0, 0.0}), std::invalid_argument);
  const auto edge = state_from_bloch({1.0 + 5e-10, 0.0, 0.0});
  EXPECT_NEAR(edge.min_eigenvalue(), 0.0, 1e-15);
}

TEST(QubitState, RejectsBadTraceAndNegativity) {
  EXPECT_THROW(QubitState::from_elements(0.6, 0.6, 0.0), std::invalid_argument);
  EXPECT_THROW(QubitState::from_elements(0.5, 0.5, 0.6), std::invalid_argument);
  EXPECT_NO_THROW(QubitState::from_elements(0.5, 0.5, 0.5));
}

TEST(QubitState, HermitianByConstruction) {
  const auto rho = QubitState::from_elements(0.7, 0.3, cplx(0.1, 0.2));
  const auto m = rho.matrix();
  EXPECT_EQ(m(1, 0), std::conj(m(0, 1)));
  EXPECT_EQ(rho.rho21(), std::conj(rho.rho12()));
}

TEST(Purity, Examples) {
  EXPECT_DOUBLE_EQ(purity(state_from_bloch({0.0, 0.0, 0.0})), 0.5);
  EXPECT_NEAR(purity(state_from_bloch({0.6, 0.0, 0.8})), 1.0, 1e-15);
  EXPECT_NEAR(purity(state_from_bloch({0.6, 0.0, 0.0})), 0.68, 1e-15);
}

TEST(RelativePurity, Examples) {
  const auto rho = state_from_bloch({0.2, 0.3, -0.4});
  EXPECT_NEAR(relative_purity(rho, rho), 1.0, 1e-15);
  EXPECT_NEAR(relative_purity(state_from_bloch({0, 0, 1}), state_from_bloch({0, 0, -1})), 0.0, 1e-15);
  EXPECT_NEAR(relative_purity(state_from_bloch({0, 0, 0}), rho), 1.0, 1e-15);
}

TEST(L1Coherence, Examples) {
  EXPECT_EQ(l1_coherence(state_from_bloch({0.0, 0.0, 0.3})), 0.0);
  EXPECT_NEAR(l1_coherence(state_from_bloch({1.0, 0.0, 0.0})), 1.0, 1e-15);
  EXPECT_NEAR(l1_coherence(state_from_bloch({0.6, 0.8, 0.0})), 1.0, 1e-15);
}

TEST(SingularValues, Examples) {
  auto s = singular_values_2x2({3.0, 0.0, 0.0, -5.0});
  EXPECT_DOUBLE_EQ(s.sigma1, 5.0);
  EXPECT_DOUBLE_EQ(s.sigma2, 3.0);
  s = singular_values_2x2(pauli::lowering);
  EXPECT_DOUBLE_EQ(s.sigma1, 1.0);
  EXPECT_DOUBLE_EQ(s.sigma2, 0.0);
  s = singular_values_2x2({1.0, 1.0, 0.0, 1.0});
  EXPECT_NEAR(s.sigma1, (1.0 + std::sqrt(5.0)) / 2.0, 1e-15);
  EXPECT_NEAR(s.sigma2, (std::sqrt(5.0) - 1.0) / 2.0, 1e-15);
  s = singular_values_2x2(Matrix2::zero());
  EXPECT_EQ(s.sigma1, 0.0);
  EXPECT_EQ(s.sigma2, 0.0);
}

// Reference: sigma1 sigma2 = |det m| and sigma1^2 + sigma2^2 = ||m||_F^2.
TEST(SingularValues, InvariantsOnRandomMatrices) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 1000; ++i) {
    const auto m = random_matrix(rng);
    const auto s = singular_values_2x2(m);
    double frob = 0.0;
    for (const auto& z : m.m) frob += std::norm(z);
    EXPECT_GE(s.sigma1, s.sigma2);
    EXPECT_GE(s.sigma2, 0.0);
    EXPECT_NEAR(s.sigma1 * s.sigma1 + s.sigma2 * s.sigma2, frob, 1e-12 * frob);
    EXPECT_NEAR(s.sigma1 * s.sigma2, std::abs(m.determinant()), 1e-12 * frob);
  }
}

TEST(SingularValues, SmallSingularValueKeepsRelativeAccuracy) {
  const double e = 1e-9;
  const auto s = singular_values_2x2({1.0, 0.0, 0.0, e});
  EXPECT_NEAR(s.sigma2 / e, 1.0, 1e-14);
}

TEST(Eigenvalues, Examples) {
  auto e = eigenvalues_hermitian_2x2(state_from_bloch({0, 0, 0}));
  EXPECT_DOUBLE_EQ(e.sigma1, 0.5);
  EXPECT_DOUBLE_EQ(e.sigma2, 0.5);
  e = eigenvalues_hermitian_2x2(state_from_bloch({0, 1, 0}));
  EXPECT_NEAR(e.sigma1, 1.0, 1e-15);
  EXPECT_NEAR(e.sigma2, 0.0, 1e-15);
  e = eigenvalues_hermitian_2x2(state_from_bloch({0.0, 0.36, 0.48}));
  EXPECT_NEAR(e.sigma1, 0.8, 1e-15);
  EXPECT_NEAR(e.sigma2, 0.2, 1e-15);
}

TEST(CoreProperties, RandomStates) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 1000; ++i) {
    const auto b = random_bloch(rng);
    const auto rho = state_from_bloch(b);
    const auto sv = singular_values_2x2(rho.matrix());
    const auto ev = eigenvalues_hermitian_2x2(rho);
    EXPECT_NEAR(sv.sigma1, ev.sigma1, 1e-12);
    EXPECT_NEAR(sv.sigma2, ev.sigma2, 1e-12);
    EXPECT_NEAR(purity(rho), 0.5 * (1.0 + b.norm() * b.norm()), 1e-12);
    EXPECT_NEAR(relative_purity(rho, rho), 1.0, 1e-12);
    EXPECT_NEAR(l1_coherence(rho), b.transverse(), 1e-12);
  }
}
