#pragma once

// Pure dephasing of a qubit by a bosonic bath with Ohmic-family spectral
// density J(w) = eta w^s w_c^{1-s} e^{-w/w_c}. Coherences decay as
// q_t = exp(-Gamma_t) with the decoherence function
//
//   Gamma_t = integral_0^inf J(w) coth(w / 2T) (1 - cos w t) / w^2 dw.
//
// At T = 0 this has the closed form
//   eta [1 - cos((s-1) atan(w_c t)) / (1 + w_c^2 t^2)^{(s-1)/2}] Gamma(s-1),
// whose s -> 1 limit is (eta/2) ln(1 + w_c^2 t^2). The instantaneous
// generator rate is dGamma/dt / 2, acting as rate * (sigma_z rho sigma_z - rho).

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

/// |s - 1| at or below which the Ohmic (logarithmic) branch is used.
inline constexpr double ohmic_threshold = 1e-6;

enum class BathClass { sub_ohmic, ohmic, super_ohmic };

inline const char* to_string(BathClass c) {
  switch (c) {
    case BathClass::sub_ohmic:
      return "sub-Ohmic";
    case BathClass::ohmic:
      return "Ohmic";
    case BathClass::super_ohmic:
      return "super-Ohmic";
  }
  return "?";
}

class DephasingParams {
 public:
  DephasingParams(double eta, double s, double omega_c) : eta_(eta), s_(s), omega_c_(omega_c) {
    if (!(eta > 0.0) || !std::isfinite(eta)) throw std::invalid_argument("DephasingParams: eta must be > 0");
    if (!(s > 0.0) || !std::isfinite(s)) throw std::invalid_argument("DephasingParams: s must be > 0");
    if (!(omega_c > 0.0) || !std::isfinite(omega_c)) {
      throw std::invalid_argument("DephasingParams: omega_c must be > 0");
    }
  }

  double eta() const { return eta_; }
  double s() const { return s_; }
  double omega_c() const { return omega_c_; }

  BathClass bath_class() const {
    if (std::abs(s_ - 1.0) <= ohmic_threshold) return BathClass::ohmic;
    return s_ < 1.0 ? BathClass::sub_ohmic : BathClass::super_ohmic;
  }

 private:
  double eta_;
  double s_;
  double omega_c_;
};

inline double ohmic_spectral_density(double omega, const DephasingParams& p) {
  if (!(omega >= 0.0)) throw std::invalid_argument("ohmic_spectral_density: omega must be >= 0");
  const double wc = p.omega_c();
  return p.eta() * wc * std::pow(omega / wc, p.s()) * std::exp(-omega / wc);
}

namespace detail {

inline void check_dephasing_time(double t) {
  if (!(t >= 0.0) || !std::isfinite(t)) throw std::invalid_argument("time must be finite and >= 0");
}

/// Zero-temperature closed form with an injectable Gamma function. The
/// bracket 1 - e^u cos(a) is evaluated as -expm1(u) + 2 e^u sin^2(a/2) so it
/// keeps full relative accuracy as s -> 1.
template <class GammaFn>
double decoherence_closed_form(double t, const DephasingParams& p, GammaFn&& gamma) {
  const double x = p.omega_c() * t;
  const double log_term = std::log1p(x * x);
  const double eps = p.s() - 1.0;
  if (std::abs(eps) <= ohmic_threshold) return 0.5 * p.eta() * log_term;
  const double u = -0.5 * eps * log_term;
  const double half_angle = 0.5 * eps * std::atan(x);
  const double sin_half = std::sin(half_angle);
  const double bracket = -std::expm1(u) + 2.0 * std::exp(u) * sin_half * sin_half;
  return p.eta() * bracket * gamma(eps);
}

/// Times in (a, b) where dGamma/dt changes sign: s atan(w_c t) = k pi.
inline std::vector<double> dephasing_kinks(const DephasingParams& p, double a, double b) {
  std::vector<double> out;
  for (int k = 1;; ++k) {
    const double phase = k * std::numbers::pi / p.s();
    if (phase >= 0.5 * std::numbers::pi) break;
    const double t = std::tan(phase) / p.omega_c();
    if (t >= b) break;
    if (t > a) out.push_back(t);
  }
  return out;
}

}  // namespace detail

/// Decoherence function Gamma_t at zero temperature (closed form).
inline double decoherence_function_T0(double t, const DephasingParams& p) {
  detail::check_dephasing_time(t);
  return detail::decoherence_closed_form(t, p, [](double x) { return num::gamma_function(x); });
}

/// dGamma_t/dt at zero temperature:
///   eta w_c Gamma(s) sin(s atan(w_c t)) / (1 + w_c^2 t^2)^{s/2}.
inline double decoherence_rate_T0(double t, const DephasingParams& p) {
  detail::check_dephasing_time(t);
  const double x = p.omega_c() * t;
  return p.eta() * p.omega_c() * num::gamma_function(p.s()) * std::sin(p.s() * std::atan(x)) *
         std::pow(1.0 + x * x, -0.5 * p.s());
}

/// Gamma_t at temperature T (in frequency units, hbar = k_B = 1) by
/// quadrature of the defining integral. T = 0 drops the coth factor.
inline double decoherence_function_finiteT(double t, const DephasingParams& p, double temperature,
                                           const num::QuadratureOptions& quad = {1e-12, 1e-12, 4000}) {
  detail::check_dephasing_time(t);
  if (!(temperature >= 0.0) || !std::isfinite(temperature)) {
    throw std::invalid_argument("temperature must be finite and >= 0");
  }
  if (t == 0.0) return 0.0;
  const double wc = p.omega_c();
  auto integrand = [&](double w) {
    if (w <= 0.0) return 0.0;
    const double sin_half = std::sin(0.5 * w * t);
    double thermal = 1.0;
    if (temperature > 0.0) {
      const double x = w / (2.0 * temperature);
      thermal = x < 1e-4 ? 1.0 / x + x / 3.0 : 1.0 / std::tanh(x);
    }
    const double ratio = w / wc;
    return p.eta() * wc * std::pow(ratio, p.s()) * std::exp(-ratio) * thermal * 2.0 * sin_half * sin_half / (w * w);
  };
  const auto q = num::integrate_semi_infinite(integrand, 0.0, wc, quad);
  if (!q.converged) {
    std::ostringstream msg;
    msg << "finite-temperature decoherence integral did not converge (error estimate " << q.error_estimate << ")";
    throw numerical_error(msg.str(), q.error_estimate);
  }
  return q.value;
}

/// q_t = exp(-Gamma_t) at zero temperature.
inline double coherence_factor(double t, const DephasingParams& p) { return std::exp(-decoherence_function_T0(t, p)); }

/// dq_t/dt = -q_t dGamma_t/dt.
inline double coherence_factor_derivative(double t, const DephasingParams& p) {
  return -decoherence_rate_T0(t, p) * coherence_factor(t, p);
}

/// Populations untouched, coherences scaled by q_t.
inline QubitState dephasing_evolve(const QubitState& rho0, double t, const DephasingParams& p) {
  detail::check_dephasing_time(t);
  return QubitState::from_elements(rho0.rho11(), rho0.rho22(), coherence_factor(t, p) * rho0.rho12());
}

/// (dGamma_t/dt / 2) (sigma_z rho sigma_z - rho), i.e. -dGamma_t/dt times the
/// off-diagonal part of rho.
inline Matrix2 dephasing_generator(const QubitState& rho, double t, const DephasingParams& p) {
  const double rate = 0.5 * decoherence_rate_T0(t, p);
  const Matrix2 m = rho.matrix();
  return cplx(rate) * (pauli::z * m * pauli::z - m);
}

/// Closed-form ML speed limit for the dephasing qubit prepared in the
/// horizon-dressed state of `bloch`:
///   tau_QSL = j- C |q_tau^2 - q_tau q_{tau+tau_D}| / avg |dq/dt|.
/// The diagnostics carry these numerator and denominator factors. An
/// incoherent input (C = 0) does not evolve and is reported stationary.
inline QSLResult dephasing_qsl(const BlochVector& bloch, const HawkingFactors& h, const DephasingParams& p,
                               double tau, double tau_d, const num::QuadratureOptions& quad = qsl_quadrature()) {
  validate_segment(tau, tau_d);
  const double coherence = h.j_minus * physical_bloch(bloch).transverse();
  if (coherence == 0.0) return make_qsl_result(0.0, 0.0, tau_d, BoundKind::ml);

  const double q1 = coherence_factor(tau, p);
  const double q2 = coherence_factor(tau + tau_d, p);
  const double numerator = coherence * q1 * std::abs(q1 - q2);
  const auto kinks = detail::dephasing_kinks(p, tau, tau + tau_d);
  auto speed = [&](double t) { return std::abs(coherence_factor_derivative(t, p)); };
  const auto avg = time_average(speed, tau, tau_d, quad, kinks);
  return make_qsl_result(numerator, avg.value, tau_d, BoundKind::ml, avg.error_estimate);
}

inline Trajectory dephasing_trajectory(const QubitState& rho0, const DephasingParams& p, double t_max) {
  Trajectory traj;
  traj.state = [rho0, p](double t) { return dephasing_evolve(rho0, t, p); };
  traj.generator = [rho0, p](double t) { return dephasing_generator(dephasing_evolve(rho0, t, p), t, p); };
  traj.t_max = t_max;
  return traj;
}

}  // namespace qsl
