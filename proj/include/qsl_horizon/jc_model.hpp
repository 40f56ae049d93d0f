#pragma once

// Damped Jaynes-Cummings qubit coupled to a Lorentzian reservoir at zero
// temperature. Excited-state amplitude decays as G(t) e^{-lambda t/2} with
//
//   G(t) = cosh(d t/2) + (lambda/d) sinh(d t/2),   d = sqrt(lambda^2 - 2 gamma0 lambda),
//
// so the survival factor is p_t = e^{-lambda t} G(t)^2 and the decay rate
// gamma_t = -d/dt ln p_t. For lambda < 2 gamma0 (strong coupling) d is
// imaginary and the hyperbolic functions turn trigonometric; G then has
// zeros where p_t vanishes and gamma_t diverges.

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "core.hpp"
#include "hawking.hpp"
#include "numerics.hpp"
#include "qsl_bounds.hpp"

namespace qsl {

enum class CouplingRegime { weak, critical, strong };

inline const char* to_string(CouplingRegime r) {
  switch (r) {
    case CouplingRegime::weak:
      return "weak";
    case CouplingRegime::critical:
      return "critical";
    case CouplingRegime::strong:
      return "strong";
  }
  return "?";
}

class JCParams {
 public:
  JCParams(double gamma0, double lambda) : gamma0_(gamma0), lambda_(lambda) {
    if (!(gamma0 > 0.0) || !std::isfinite(gamma0)) throw std::invalid_argument("JCParams: gamma0 must be > 0");
    if (!(lambda > 0.0) || !std::isfinite(lambda)) throw std::invalid_argument("JCParams: lambda must be > 0");
    const double d2 = lambda * (lambda - 2.0 * gamma0);
    if (std::abs(d2) <= 1e-14 * lambda * lambda) {
      regime_ = CouplingRegime::critical;
      d_ = 0.0;
    } else {
      regime_ = d2 > 0.0 ? CouplingRegime::weak : CouplingRegime::strong;
      d_ = std::sqrt(std::abs(d2));
    }
  }

  double gamma0() const { return gamma0_; }
  double lambda() const { return lambda_; }
  /// |d|; d itself is imaginary in the strong regime.
  double d_magnitude() const { return d_; }
  CouplingRegime regime() const { return regime_; }

 private:
  double gamma0_;
  double lambda_;
  double d_;
  CouplingRegime regime_;
};

inline double lorentzian_spectral_density(double omega, const JCParams& p, double omega0) {
  const double detuning = omega0 - omega;
  return p.gamma0() * p.lambda() / (2.0 * std::numbers::pi * (detuning * detuning + p.lambda() * p.lambda()));
}

namespace detail {

inline void check_time(double t) {
  if (!(t >= 0.0) || !std::isfinite(t)) throw std::invalid_argument("time must be finite and >= 0");
}

// sinh(y)/y and sin(y)/y with the removable singularity handled.
inline double sinhc(double y) { return std::abs(y) < 1e-4 ? 1.0 + y * y / 6.0 : std::sinh(y) / y; }
inline double sinc(double y) { return std::abs(y) < 1e-4 ? 1.0 - y * y / 6.0 : std::sin(y) / y; }

/// Amplitude factors of the exact solution at time t:
///   amplitude = G(t) e^{-lambda t/2}                  (p_t = amplitude^2)
///   kernel    = [sinh(d t/2)/d] e^{-lambda t/2}        (trig form when strong)
/// so that dp/dt = -2 gamma0 lambda * kernel * amplitude and
/// gamma_t = 2 gamma0 lambda * kernel / amplitude.
struct JCAmplitude {
  double amplitude;
  double kernel;
};

inline JCAmplitude jc_amplitude(double t, const JCParams& p) {
  const double lam = p.lambda();
  const double half_t = 0.5 * t;
  const double y = p.d_magnitude() * half_t;
  switch (p.regime()) {
    case CouplingRegime::critical: {
      const double env = std::exp(-lam * half_t);
      return {env * (1.0 + lam * half_t), env * half_t};
    }
    case CouplingRegime::strong: {
      const double env = std::exp(-lam * half_t);
      const double k = half_t * sinc(y);
      return {env * (std::cos(y) + lam * k), env * k};
    }
    case CouplingRegime::weak:
      break;
  }
  // Weak: fold the envelope into the exponentials so large t cannot overflow.
  const double grow = std::exp(y - lam * half_t);
  const double decay = std::exp(-y - lam * half_t);
  const double cosh_env = 0.5 * (grow + decay);
  const double kernel = y < 1.0 ? half_t * sinhc(y) * std::exp(-lam * half_t) : 0.5 * (grow - decay) / p.d_magnitude();
  return {cosh_env + lam * kernel, kernel};
}

/// Zeros of the kernel (gamma_t = 0) and of the amplitude (p_t = 0) inside
/// (a, b). Both are kinks of |dp/dt|. Empty unless the coupling is strong.
inline std::vector<double> jc_kinks(const JCParams& p, double a, double b) {
  std::vector<double> out;
  if (p.regime() != CouplingRegime::strong) return out;
  const double d = p.d_magnitude();
  const double pole_phase = std::numbers::pi - std::atan(d / p.lambda());
  for (int k = 0;; ++k) {
    const double t_zero = 2.0 * (k + 1) * std::numbers::pi / d;
    const double t_pole = 2.0 * (pole_phase + k * std::numbers::pi) / d;
    if (t_zero > b && t_pole > b) break;
    if (t_zero > a && t_zero < b) out.push_back(t_zero);
    if (t_pole > a && t_pole < b) out.push_back(t_pole);
  }
  return out;
}

/// rate * (L rho L^+ - {L^+ L, rho} / 2) for an arbitrary jump operator L.
inline Matrix2 lindblad_dissipator(const Matrix2& rho, double rate, const Matrix2& jump) {
  const Matrix2 jump_dag = jump.adjoint();
  const Matrix2 number = jump_dag * jump;
  return cplx(rate) * (jump * rho * jump_dag - cplx(0.5) * (number * rho + rho * number));
}

}  // namespace detail

/// Time-dependent decay rate gamma_t. Negative stretches in the strong regime
/// signal backflow; at zeros of p_t the rate is infinite.
inline double jc_decay_rate(double t, const JCParams& p) {
  detail::check_time(t);
  const auto a = detail::jc_amplitude(t, p);
  return 2.0 * p.gamma0() * p.lambda() * a.kernel / a.amplitude;
}

/// p_t = exp(-integral_0^t gamma) = e^{-lambda t} G(t)^2.
inline double jc_survival(double t, const JCParams& p) {
  detail::check_time(t);
  const double amp = detail::jc_amplitude(t, p).amplitude;
  return amp * amp;
}

/// dp_t/dt, finite everywhere (including at the divergences of gamma_t).
inline double jc_survival_derivative(double t, const JCParams& p) {
  detail::check_time(t);
  const auto a = detail::jc_amplitude(t, p);
  return -2.0 * p.gamma0() * p.lambda() * a.kernel * a.amplitude;
}

/// Exact solution
///   [[1 - p_t (1 - rho11),  sqrt(p_t) rho12],
///    [sqrt(p_t) rho21,      p_t rho22      ]].
inline QubitState jc_evolve(const QubitState& rho0, double t, const JCParams& p) {
  detail::check_time(t);
  const double amp = std::abs(detail::jc_amplitude(t, p).amplitude);
  const double pt = amp * amp;
  const double excited = pt * rho0.rho22();
  return QubitState::from_elements(1.0 - excited, excited, amp * rho0.rho12());
}

/// gamma_t (sigma_- rho sigma_+ - {sigma_+ sigma_-, rho} / 2), with
/// sigma_- = |0><1|.
inline Matrix2 jc_generator(const QubitState& rho, double t, const JCParams& p) {
  return detail::lindblad_dissipator(rho.matrix(), jc_decay_rate(t, p), pauli::lowering);
}

namespace detail {

// Initial excited population and coherence magnitude of the dressed state.
struct JCInitial {
  double excited;    // rho22(0)
  double coherence;  // |rho12(0)|
};

inline JCInitial jc_initial(const BlochVector& input, const HawkingFactors& h) {
  const auto bloch = physical_bloch(input);
  const double jm2 = h.j_minus * h.j_minus;
  const double jp2 = h.j_plus * h.j_plus;
  return {0.5 * (1.0 + jp2 - jm2 * bloch.r3), 0.5 * h.j_minus * bloch.transverse()};
}

}  // namespace detail

/// |f(tau+tau_D) - 1| tr(rho_tau^2) for the horizon-dressed state. With
/// b = (1 + j+^2 - j-^2 r3)/2 and C = sqrt(r1^2 + r2^2),
///   (p1 - p2) b (1 - 2 p1 b) + (j-^2 C^2 / 2)(sqrt(p1 p2) - p1),
/// where p1 = p_tau and p2 = p_{tau+tau_D}.
inline double jc_qsl_numerator(const BlochVector& bloch, const HawkingFactors& h, const JCParams& p, double tau,
                               double tau_d) {
  validate_segment(tau, tau_d);
  const auto init = detail::jc_initial(bloch, h);
  const double a1 = std::abs(detail::jc_amplitude(tau, p).amplitude);
  const double a2 = std::abs(detail::jc_amplitude(tau + tau_d, p).amplitude);
  const double p1 = a1 * a1;
  const double p2 = a2 * a2;
  const double b = init.excited;
  const double c2 = init.coherence * init.coherence;
  return std::abs((p1 - p2) * b * (1.0 - 2.0 * p1 * b) + 2.0 * c2 * (a1 * a2 - p1));
}

/// The numerator exactly as typeset in the source formula, kept for
/// comparison. Its first term carries j- where the exact overlap algebra
/// gives j-^2 (see jc_qsl_numerator); the two agree only when j- = 1 or the
/// state is incoherent.
inline double jc_qsl_numerator_as_printed(const BlochVector& bloch, const HawkingFactors& h, const JCParams& p,
                                          double tau, double tau_d) {
  validate_segment(tau, tau_d);
  const double jm = h.j_minus;
  const double jm2 = jm * jm;
  const double jp2 = h.j_plus * h.j_plus;
  const double c2 = bloch.r1 * bloch.r1 + bloch.r2 * bloch.r2;
  const double big_b = 1.0 + jp2 - jm2 * bloch.r3;
  const double p1 = jc_survival(tau, p);
  const double p2 = jc_survival(tau + tau_d, p);
  return 0.5 * std::abs(jm * std::sqrt(p1 * p2) * c2 - p2 * big_b - p1 * p1 * big_b * big_b +
                        p1 * (1.0 + jp2 - jm2 * c2 - jm2 * bloch.r3 + p2 * big_b * big_b));
}

namespace detail {

inline double jc_speed(double t, const JCInitial& init, const JCParams& p) {
  const auto a = jc_amplitude(t, p);
  return 2.0 * p.gamma0() * p.lambda() * std::abs(a.kernel) * std::hypot(a.amplitude * init.excited, 0.5 * init.coherence);
}

}  // namespace detail

/// sigma1 rho1 + sigma2 rho2 at time t: the generator is traceless Hermitian
/// with both singular values |gamma_t| sqrt(rho22(t)^2 + |rho12(t)|^2 / 4), and
/// rho1 + rho2 = 1. Written through the kernel so it stays finite where
/// gamma_t diverges; equal to |dp_t/dt|/4 sqrt((2 j-^2 (1+r3) - 4)^2 + j-^2 C^2 / p_t).
inline double jc_ml_speed(double t, const BlochVector& bloch, const HawkingFactors& h, const JCParams& p) {
  detail::check_time(t);
  return detail::jc_speed(t, detail::jc_initial(bloch, h), p);
}

/// Closed-form ML speed limit for the damped Jaynes-Cummings qubit prepared
/// in the horizon-dressed state of `bloch`.
inline QSLResult jc_qsl(const BlochVector& bloch, const HawkingFactors& h, const JCParams& p, double tau,
                        double tau_d, const num::QuadratureOptions& quad = qsl_quadrature()) {
  validate_segment(tau, tau_d);
  const double numerator = jc_qsl_numerator(bloch, h, p, tau, tau_d);
  const auto init = detail::jc_initial(bloch, h);
  const auto kinks = detail::jc_kinks(p, tau, tau + tau_d);
  auto speed = [&](double t) { return detail::jc_speed(t, init, p); };
  const auto avg = time_average(speed, tau, tau_d, quad, kinks);
  return make_qsl_result(numerator, avg.value, tau_d, BoundKind::ml, avg.error_estimate);
}

/// Trajectory of the dressed state under the Jaynes-Cummings dynamics, for
/// the generic numeric bounds.
inline Trajectory jc_trajectory(const QubitState& rho0, const JCParams& p, double t_max) {
  Trajectory traj;
  traj.state = [rho0, p](double t) { return jc_evolve(rho0, t, p); };
  traj.generator = [rho0, p](double t) { return jc_generator(jc_evolve(rho0, t, p), t, p); };
  traj.t_max = t_max;
  return traj;
}

}  // namespace qsl
