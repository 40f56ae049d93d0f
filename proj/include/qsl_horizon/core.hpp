#pragma once

// Exact 2x2 complex linear algebra and single-qubit state functionals.
//
// Basis convention: index 0 is the ground state |0>, index 1 the excited
// state |1>. sigma_z = diag(1, -1), so a Bloch vector with r3 = +1 is the
// ground state and the lowering operator maps |1> to |0>.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <sstream>
#include <stdexcept>

namespace qsl {

using cplx = std::complex<double>;

inline constexpr double state_tolerance = 1e-12;
inline constexpr double bloch_reject_tolerance = 1e-9;

/// Row-major 2x2 complex matrix.
struct Matrix2 {
  std::array<cplx, 4> m{};

  constexpr Matrix2() = default;
  constexpr Matrix2(cplx a, cplx b, cplx c, cplx d) : m{a, b, c, d} {}

  cplx& operator()(int i, int j) { return m[2 * i + j]; }
  const cplx& operator()(int i, int j) const { return m[2 * i + j]; }

  static constexpr Matrix2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
  static constexpr Matrix2 zero() { return {}; }

  Matrix2 adjoint() const { return {std::conj(m[0]), std::conj(m[2]), std::conj(m[1]), std::conj(m[3])}; }
  cplx trace() const { return m[0] + m[3]; }
  cplx determinant() const { return m[0] * m[3] - m[1] * m[2]; }

  /// Largest absolute entry.
  double max_abs() const {
    double out = 0.0;
    for (const auto& z : m) out = std::max(out, std::abs(z));
    return out;
  }

  friend Matrix2 operator+(const Matrix2& x, const Matrix2& y) {
    return {x.m[0] + y.m[0], x.m[1] + y.m[1], x.m[2] + y.m[2], x.m[3] + y.m[3]};
  }
  friend Matrix2 operator-(const Matrix2& x, const Matrix2& y) {
    return {x.m[0] - y.m[0], x.m[1] - y.m[1], x.m[2] - y.m[2], x.m[3] - y.m[3]};
  }
  friend Matrix2 operator*(const Matrix2& x, const Matrix2& y) {
    return {x.m[0] * y.m[0] + x.m[1] * y.m[2], x.m[0] * y.m[1] + x.m[1] * y.m[3],
            x.m[2] * y.m[0] + x.m[3] * y.m[2], x.m[2] * y.m[1] + x.m[3] * y.m[3]};
  }
  friend Matrix2 operator*(cplx s, const Matrix2& x) { return {s * x.m[0], s * x.m[1], s * x.m[2], s * x.m[3]}; }
  friend Matrix2 operator*(const Matrix2& x, cplx s) { return s * x; }
};

namespace pauli {
inline constexpr Matrix2 x{0.0, 1.0, 1.0, 0.0};
inline constexpr Matrix2 y{0.0, cplx(0.0, -1.0), cplx(0.0, 1.0), 0.0};
inline constexpr Matrix2 z{1.0, 0.0, 0.0, -1.0};
/// |0><1|: excited -> ground. Equals (sigma_x + i sigma_y) / 2.
inline constexpr Matrix2 lowering{0.0, 1.0, 0.0, 0.0};
inline constexpr Matrix2 raising{0.0, 0.0, 1.0, 0.0};
}  // namespace pauli

struct BlochVector {
  double r1 = 0.0;
  double r2 = 0.0;
  double r3 = 0.0;

  double norm() const { return std::sqrt(r1 * r1 + r2 * r2 + r3 * r3); }
  /// sqrt(r1^2 + r2^2): the l1 coherence of the undressed state.
  double transverse() const { return std::hypot(r1, r2); }
};

inline void validate_bloch(const BlochVector& b) {
  if (!std::isfinite(b.r1) || !std::isfinite(b.r2) || !std::isfinite(b.r3)) {
    throw std::invalid_argument("Bloch vector components must be finite");
  }
  if (b.norm() > 1.0 + bloch_reject_tolerance) {
    std::ostringstream msg;
    msg << "unphysical Bloch vector: |r| = " << b.norm() << " > 1";
    throw std::invalid_argument(msg.str());
  }
}

/// Validates `b` and pulls vectors in the tolerance band 1 < |r| <= 1 + 1e-9
/// back onto the unit sphere.
inline BlochVector physical_bloch(const BlochVector& b) {
  validate_bloch(b);
  const double n = b.norm();
  if (n <= 1.0) return b;
  return {b.r1 / n, b.r2 / n, b.r3 / n};
}

/// Single-qubit density matrix. Only the real diagonal and the upper
/// off-diagonal element are stored, so Hermiticity holds by construction.
class QubitState {
 public:
  /// Builds a state from its independent elements. Rejects trace != 1 and
  /// negative eigenvalues beyond `state_tolerance`.
  static QubitState from_elements(double rho11, double rho22, cplx rho12) {
    QubitState s(rho11, rho22, rho12);
    const double tr = rho11 + rho22;
    if (!std::isfinite(tr) || !std::isfinite(rho12.real()) || !std::isfinite(rho12.imag())) {
      throw std::invalid_argument("QubitState: non-finite element");
    }
    if (std::abs(tr - 1.0) > state_tolerance) {
      std::ostringstream msg;
      msg << "QubitState: trace " << tr << " differs from 1";
      throw std::invalid_argument(msg.str());
    }
    if (s.min_eigenvalue() < -state_tolerance) {
      std::ostringstream msg;
      msg << "QubitState: negative eigenvalue " << s.min_eigenvalue();
      throw std::invalid_argument(msg.str());
    }
    return s;
  }

  double rho11() const { return rho11_; }
  double rho22() const { return rho22_; }
  cplx rho12() const { return rho12_; }
  cplx rho21() const { return std::conj(rho12_); }

  Matrix2 matrix() const { return {rho11_, rho12_, std::conj(rho12_), rho22_}; }

  BlochVector bloch() const { return {2.0 * rho12_.real(), -2.0 * rho12_.imag(), rho11_ - rho22_}; }

  double min_eigenvalue() const { return 0.5 * (rho11_ + rho22_) - half_gap(); }
  double max_eigenvalue() const { return 0.5 * (rho11_ + rho22_) + half_gap(); }

 private:
  QubitState(double a, double d, cplx c) : rho11_(a), rho22_(d), rho12_(c) {}

  double half_gap() const { return std::hypot(0.5 * (rho11_ - rho22_), std::abs(rho12_)); }

  double rho11_;
  double rho22_;
  cplx rho12_;
};

struct SingularPair {
  double sigma1 = 0.0;
  double sigma2 = 0.0;
};

/// rho = (I + r1 sigma_x + r2 sigma_y + r3 sigma_z) / 2.
inline QubitState state_from_bloch(const BlochVector& bloch) {
  const auto b = physical_bloch(bloch);
  return QubitState::from_elements(0.5 * (1.0 + b.r3), 0.5 * (1.0 - b.r3), cplx(0.5 * b.r1, -0.5 * b.r2));
}

/// tr(rho_a rho_b) for two states.
inline double overlap(const QubitState& a, const QubitState& b) {
  return a.rho11() * b.rho11() + a.rho22() * b.rho22() + 2.0 * std::real(a.rho12() * b.rho21());
}

inline double purity(const QubitState& rho) { return overlap(rho, rho); }

/// tr(rho_a rho_b) / tr(rho_a^2).
inline double relative_purity(const QubitState& rho_a, const QubitState& rho_b) {
  return overlap(rho_a, rho_b) / purity(rho_a);
}

/// Sum of off-diagonal magnitudes in the computational basis: 2|rho12|.
inline double l1_coherence(const QubitState& rho) { return 2.0 * std::abs(rho.rho12()); }

/// Singular values of an arbitrary complex 2x2 matrix, from the closed-form
/// eigenvalues of m^dagger m. The discriminant is assembled as
/// (a - d)^2 + 4|b|^2 and the smaller value recovered as |det m| / sigma1,
/// so neither step suffers cancellation.
inline SingularPair singular_values_2x2(const Matrix2& m) {
  const double a = std::norm(m(0, 0)) + std::norm(m(1, 0));
  const double d = std::norm(m(0, 1)) + std::norm(m(1, 1));
  const cplx b = std::conj(m(0, 0)) * m(0, 1) + std::conj(m(1, 0)) * m(1, 1);
  const double root = std::hypot(a - d, 2.0 * std::abs(b));
  const double sigma1 = std::sqrt(0.5 * (a + d + root));
  if (sigma1 == 0.0) return {0.0, 0.0};
  const double sigma2 = std::min(sigma1, std::abs(m.determinant()) / sigma1);
  return {sigma1, sigma2};
}

/// Eigenvalues (1 +- |r|) / 2 of a density matrix, descending. For a
/// positive semidefinite matrix these are also its singular values.
inline SingularPair eigenvalues_hermitian_2x2(const QubitState& rho) {
  return {rho.max_eigenvalue(), std::max(0.0, rho.min_eigenvalue())};
}

}  // namespace qsl
