#pragma once

// Hartle-Hawking vacuum seen by a static detector near a Schwarzschild
// horizon, in the single-mode approximation. Physics enters only through the
// dimensionless mode frequency Omega = omega / T_H and the relative distance
// R0 = r0 / r_h.

#include <cmath>
#include <functional>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "core.hpp"

namespace qsl {

/// Upper end of the near-horizon (Rindler) window, R0 - 1 << 1.
inline constexpr double rindler_window_r0 = 1.05;

using WarningHandler = std::function<void(const std::string&)>;

inline WarningHandler stderr_warnings() {
  return [](const std::string& msg) { std::cerr << "warning: " << msg << '\n'; };
}

struct HawkingFactors {
  double omega = 0.0;
  double r0_rel = 1.0;
  double j_minus = 0.0;
  double j_plus = 0.0;

  /// Omega * sqrt(1 - 1/R0).
  double exponent() const { return omega * std::sqrt(1.0 - 1.0 / r0_rel); }
  bool beyond_rindler_window() const { return r0_rel > rindler_window_r0; }
};

/// Boulware-mode weights of the Hartle-Hawking vacuum,
/// j- = (1 + e^{-x})^{-1/2}, j+ = (1 + e^{x})^{-1/2}, x = Omega sqrt(1 - 1/R0).
/// Distances beyond the Rindler window are accepted but reported through
/// `warn`; pass an empty handler to silence.
inline HawkingFactors hawking_factors(double omega, double r0_rel,
                                      const WarningHandler& warn = stderr_warnings()) {
  if (!(omega > 0.0) || !std::isfinite(omega)) {
    throw std::invalid_argument("hawking_factors: omega must be positive and finite");
  }
  if (!(r0_rel >= 1.0) || !std::isfinite(r0_rel)) {
    throw std::invalid_argument("hawking_factors: R0 must be >= 1 (outside the horizon)");
  }
  HawkingFactors h;
  h.omega = omega;
  h.r0_rel = r0_rel;
  const double x = h.exponent();
  h.j_minus = 1.0 / std::sqrt(1.0 + std::exp(-x));
  h.j_plus = 1.0 / std::sqrt(1.0 + std::exp(x));
  if (h.beyond_rindler_window() && warn) {
    std::ostringstream msg;
    msg << "R0 = " << r0_rel << " exceeds " << rindler_window_r0
        << "; the near-horizon approximation behind j+- is not reliable there";
    warn(msg.str());
  }
  return h;
}

/// Qubit state after the vacuum decomposition and the trace over the
/// inaccessible region:
///   1/2 [[j-^2 (1+r3),      j- (r1 - i r2)],
///        [j- (r1 + i r2),   (1-r3) + j+^2 (1+r3)]].
inline QubitState horizon_state(const BlochVector& bloch, const HawkingFactors& h) {
  const auto b = physical_bloch(bloch);
  const double jm2 = h.j_minus * h.j_minus;
  const double jp2 = h.j_plus * h.j_plus;
  return QubitState::from_elements(0.5 * jm2 * (1.0 + b.r3), 0.5 * ((1.0 - b.r3) + jp2 * (1.0 + b.r3)),
                                   0.5 * h.j_minus * cplx(b.r1, -b.r2));
}

inline double coherence_after_dressing(const BlochVector& b, const HawkingFactors& h) {
  validate_bloch(b);
  return h.j_minus * b.transverse();
}

}  // namespace qsl
