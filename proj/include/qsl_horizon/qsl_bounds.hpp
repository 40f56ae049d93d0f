#pragma once

// Model-agnostic quantum speed limit bounds based on relative purity.
//
// Given a trajectory rho_t with generator L_t, the bound for evolving from
// rho_tau to rho_{tau+tau_D} is
//
//   tau_QSL = |f(tau+tau_D) - 1| tr(rho_tau^2) / avg_{[tau, tau+tau_D]} S(t)
//
// with f the relative purity and S(t) one of
//   ML:      sum_i sigma_i(L_t(rho_t)) * eig_i(rho_tau)   (both descending)
//   MT:      sqrt(sum_i sigma_i^2)
//   MT(sq):  sum_i sigma_i^2
// The unified bound takes the larger of the ML and MT values.

#include <algorithm>
#include <functional>
#include <span>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "core.hpp"
#include "numerics.hpp"

namespace qsl {

inline constexpr double stationary_threshold = 1e-14;

enum class BoundKind { ml, mt, unified };

enum class QSLStatus { evolving, stationary };

inline const char* to_string(BoundKind k) {
  switch (k) {
    case BoundKind::ml:
      return "ML";
    case BoundKind::mt:
      return "MT";
    case BoundKind::unified:
      return "unified";
  }
  return "?";
}

struct QSLResult {
  double tau_qsl = 0.0;
  BoundKind bound_kind = BoundKind::ml;
  /// tau_qsl / tau_D.
  double ratio = 0.0;
  /// |f(tau+tau_D) - 1| tr(rho_tau^2).
  double numerator = 0.0;
  /// Time average of the speed functional over [tau, tau+tau_D].
  double denominator_avg = 0.0;
  double quadrature_error = 0.0;
  QSLStatus status = QSLStatus::evolving;

  bool stationary() const { return status == QSLStatus::stationary; }
};

/// Builds the result from a numerator and time-averaged denominator. A
/// denominator below `stationary_threshold` marks the segment stationary and
/// reports tau_qsl = 0.
inline QSLResult make_qsl_result(double numerator, double denominator_avg, double tau_d, BoundKind kind,
                                 double quadrature_error = 0.0) {
  QSLResult r;
  r.bound_kind = kind;
  r.numerator = numerator;
  r.denominator_avg = denominator_avg;
  r.quadrature_error = quadrature_error;
  if (!(denominator_avg >= stationary_threshold)) {
    r.status = QSLStatus::stationary;
    return r;
  }
  r.tau_qsl = numerator / denominator_avg;
  r.ratio = r.tau_qsl / tau_d;
  return r;
}

/// Quadrature settings for speed-limit time averages: relative accuracy far
/// below the 1e-9 cross-check tolerance, with an absolute floor for
/// vanishing integrands.
inline num::QuadratureOptions qsl_quadrature() {
  num::QuadratureOptions opts;
  opts.abs_tol = 1e-16;
  opts.rel_tol = 1e-13;
  opts.max_subdivisions = 4000;
  return opts;
}

inline void validate_segment(double tau, double tau_d) {
  if (!(tau >= 0.0) || !std::isfinite(tau)) throw std::invalid_argument("tau must be finite and >= 0");
  if (!(tau_d > 0.0) || !std::isfinite(tau_d)) throw std::invalid_argument("tau_D must be finite and > 0");
}

struct TimeAverage {
  double value;
  double error_estimate;
};

/// (1/tau_D) * integral of f over [tau, tau + tau_D].
template <class F>
TimeAverage time_average(F&& f, double tau, double tau_d, const num::QuadratureOptions& opts,
                         std::span<const double> breakpoints = {}) {
  const auto q = num::integrate_adaptive(std::forward<F>(f), tau, tau + tau_d, opts, breakpoints);
  if (!q.converged) {
    std::ostringstream msg;
    msg << "time average over [" << tau << ", " << tau + tau_d << "] did not converge (error estimate "
        << q.error_estimate << ")";
    throw numerical_error(msg.str(), q.error_estimate);
  }
  return {q.value / tau_d, q.error_estimate / tau_d};
}

/// A state trajectory together with its (time-local) generator.
struct Trajectory {
  std::function<QubitState(double)> state;
  std::function<Matrix2(double)> generator;
  double t_max = 0.0;
  /// Optional points where the speed integrand may have kinks.
  std::vector<double> breakpoints;
};

enum class MTForm {
  /// sqrt(sum sigma_i^2), the form that enters the unified bound.
  sqrt_sum_squares,
  /// sum sigma_i^2 without the square root.
  sum_squares,
};

struct BoundOptions {
  num::QuadratureOptions quadrature = qsl_quadrature();
  MTForm mt_form = MTForm::sqrt_sum_squares;
};

namespace detail {

inline void check_domain(const Trajectory& traj, double tau, double tau_d) {
  validate_segment(tau, tau_d);
  if (!traj.state || !traj.generator) throw std::invalid_argument("trajectory is missing state or generator");
  if (tau + tau_d > traj.t_max * (1.0 + 1e-15)) {
    std::ostringstream msg;
    msg << "segment end " << tau + tau_d << " exceeds trajectory domain [0, " << traj.t_max << "]";
    throw std::invalid_argument(msg.str());
  }
}

inline double ml_speed(const Matrix2& generator, const SingularPair& rho_tau) {
  const auto s = singular_values_2x2(generator);
  return s.sigma1 * rho_tau.sigma1 + s.sigma2 * rho_tau.sigma2;
}

inline double mt_speed(const Matrix2& generator, MTForm form) {
  const auto s = singular_values_2x2(generator);
  const double sum_sq = s.sigma1 * s.sigma1 + s.sigma2 * s.sigma2;
  return form == MTForm::sqrt_sum_squares ? std::sqrt(sum_sq) : sum_sq;
}

}  // namespace detail

/// |f(tau+tau_D) - 1| tr(rho_tau^2) = |tr(rho_tau (rho_{tau+tau_D} - rho_tau))|.
/// The difference of states is formed element by element, so the result
/// keeps its relative accuracy when the two states nearly coincide.
inline double qsl_numerator(const Trajectory& traj, double tau, double tau_d) {
  detail::check_domain(traj, tau, tau_d);
  const auto rho_tau = traj.state(tau);
  const auto rho_end = traj.state(tau + tau_d);
  const double d11 = rho_end.rho11() - rho_tau.rho11();
  const double d22 = rho_end.rho22() - rho_tau.rho22();
  const cplx d12 = rho_end.rho12() - rho_tau.rho12();
  return std::abs(rho_tau.rho11() * d11 + rho_tau.rho22() * d22 + 2.0 * std::real(rho_tau.rho12() * std::conj(d12)));
}

inline QSLResult ml_bound_numeric(const Trajectory& traj, double tau, double tau_d, const BoundOptions& opts = {}) {
  const double numerator = qsl_numerator(traj, tau, tau_d);
  const auto rho_tau = eigenvalues_hermitian_2x2(traj.state(tau));
  auto speed = [&](double t) { return detail::ml_speed(traj.generator(t), rho_tau); };
  const auto avg = time_average(speed, tau, tau_d, opts.quadrature, traj.breakpoints);
  return make_qsl_result(numerator, avg.value, tau_d, BoundKind::ml, avg.error_estimate);
}

inline QSLResult mt_bound_numeric(const Trajectory& traj, double tau, double tau_d, const BoundOptions& opts = {}) {
  const double numerator = qsl_numerator(traj, tau, tau_d);
  auto speed = [&](double t) { return detail::mt_speed(traj.generator(t), opts.mt_form); };
  const auto avg = time_average(speed, tau, tau_d, opts.quadrature, traj.breakpoints);
  return make_qsl_result(numerator, avg.value, tau_d, BoundKind::mt, avg.error_estimate);
}

/// max(ML, MT) sharing one numerator evaluation. `bound_kind` names the
/// bound that attained the maximum (ML on ties).
inline QSLResult unified_bound_numeric(const Trajectory& traj, double tau, double tau_d,
                                       const BoundOptions& opts = {}) {
  const double numerator = qsl_numerator(traj, tau, tau_d);
  const auto rho_tau = eigenvalues_hermitian_2x2(traj.state(tau));
  auto ml = [&](double t) { return detail::ml_speed(traj.generator(t), rho_tau); };
  auto mt = [&](double t) { return detail::mt_speed(traj.generator(t), opts.mt_form); };
  const auto ml_avg = time_average(ml, tau, tau_d, opts.quadrature, traj.breakpoints);
  const auto mt_avg = time_average(mt, tau, tau_d, opts.quadrature, traj.breakpoints);

  const auto ml_result = make_qsl_result(numerator, ml_avg.value, tau_d, BoundKind::ml, ml_avg.error_estimate);
  const auto mt_result = make_qsl_result(numerator, mt_avg.value, tau_d, BoundKind::mt, mt_avg.error_estimate);
  if (ml_result.stationary() && mt_result.stationary()) {
    auto r = ml_result;
    r.bound_kind = BoundKind::unified;
    return r;
  }
  return mt_result.tau_qsl > ml_result.tau_qsl ? mt_result : ml_result;
}

}  // namespace qsl
