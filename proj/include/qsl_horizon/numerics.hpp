#pragma once

// Shared numerical kernels: adaptive Gauss-Kronrod quadrature, the Euler
// Gamma function and central finite differences.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <queue>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace qsl {

/// Raised when an iterative numerical kernel exhausts its budget without
/// meeting the requested accuracy. Carries the best error estimate reached.
class numerical_error : public std::runtime_error {
 public:
  numerical_error(const std::string& what, double error_estimate)
      : std::runtime_error(what), error_estimate_(error_estimate) {}
  double error_estimate() const noexcept { return error_estimate_; }

 private:
  double error_estimate_;
};

namespace num {

inline constexpr double default_abs_tol = 1e-10;

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  std::size_t evaluations = 0;
  bool converged = true;
};

struct QuadratureOptions {
  double abs_tol = default_abs_tol;
  double rel_tol = 0.0;
  std::size_t max_subdivisions = 4000;
};

namespace detail {

// 21-point Kronrod extension of the 10-point Gauss rule (QUADPACK qk21).
inline constexpr std::array<double, 11> kronrod_nodes = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.0};

inline constexpr std::array<double, 11> kronrod_weights = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077208745694290, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};

// Gauss weights for kronrod_nodes[1], [3], [5], [7], [9].
inline constexpr std::array<double, 5> gauss_weights = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

struct Segment {
  double a;
  double b;
  double value;
  double error;
  bool operator<(const Segment& other) const { return error < other.error; }
};

template <class F>
Segment gauss_kronrod_21(F& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double f_center = f(center);

  double kronrod = f_center * kronrod_weights[10];
  double gauss = 0.0;
  double abs_sum = std::abs(kronrod);
  std::array<double, 10> f_left{};
  std::array<double, 10> f_right{};
  for (std::size_t i = 0; i < 10; ++i) {
    const double dx = half * kronrod_nodes[i];
    f_left[i] = f(center - dx);
    f_right[i] = f(center + dx);
    const double pair = f_left[i] + f_right[i];
    kronrod += kronrod_weights[i] * pair;
    abs_sum += kronrod_weights[i] * (std::abs(f_left[i]) + std::abs(f_right[i]));
    if (i % 2 == 1) gauss += gauss_weights[i / 2] * pair;
  }

  const double mean = 0.5 * kronrod;
  double asc = kronrod_weights[10] * std::abs(f_center - mean);
  for (std::size_t i = 0; i < 10; ++i) {
    asc += kronrod_weights[i] * (std::abs(f_left[i] - mean) + std::abs(f_right[i] - mean));
  }

  const double value = kronrod * half;
  const double res_abs = abs_sum * std::abs(half);
  const double res_asc = asc * std::abs(half);
  double error = std::abs((kronrod - gauss) * half);
  if (res_asc != 0.0 && error != 0.0) {
    error = res_asc * std::min(1.0, std::pow(200.0 * error / res_asc, 1.5));
  }
  constexpr double eps = std::numeric_limits<double>::epsilon();
  if (res_abs > std::numeric_limits<double>::min() / (50.0 * eps)) {
    error = std::max(50.0 * eps * res_abs, error);
  }
  return {a, b, value, error};
}

}  // namespace detail

/// Globally adaptive 21-point Gauss-Kronrod quadrature on [a, b].
///
/// The interval is first split at every breakpoint strictly inside (a, b);
/// integrands with known kinks (|g(t)| where g changes sign) converge much
/// faster when the kinks are supplied here. Subdivision continues on the
/// segment with the largest error until the summed estimate is below
/// max(abs_tol, rel_tol * |value|) or the budget is spent, in which case
/// `converged` is false and the best estimate is returned.
template <class F>
QuadratureResult integrate_adaptive(F&& f, double a, double b, const QuadratureOptions& opts,
                                    std::span<const double> breakpoints = {}) {
  if (!(a <= b)) throw std::invalid_argument("integrate_adaptive: require a <= b");
  QuadratureResult result;
  if (a == b) return result;

  std::vector<double> cuts{a};
  for (double p : breakpoints) {
    if (p > a && p < b) cuts.push_back(p);
  }
  cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  std::priority_queue<detail::Segment> heap;
  double total = 0.0;
  double total_error = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    auto seg = detail::gauss_kronrod_21(f, cuts[i], cuts[i + 1]);
    result.evaluations += 21;
    total += seg.value;
    total_error += seg.error;
    heap.push(seg);
  }

  std::size_t splits = 0;
  auto tolerance = [&] { return std::max(opts.abs_tol, opts.rel_tol * std::abs(total)); };
  while (!(total_error <= tolerance())) {
    if (splits >= opts.max_subdivisions || !std::isfinite(total_error)) {
      result.converged = false;
      break;
    }
    const auto worst = heap.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      // Segment at floating-point resolution; nothing further to gain.
      result.converged = false;
      break;
    }
    heap.pop();
    const auto left = detail::gauss_kronrod_21(f, worst.a, mid);
    const auto right = detail::gauss_kronrod_21(f, mid, worst.b);
    result.evaluations += 42;
    total += left.value + right.value - worst.value;
    total_error += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    ++splits;
  }

  // Re-sum from the segments to shed accumulated cancellation in `total`.
  double value = 0.0;
  double error = 0.0;
  while (!heap.empty()) {
    value += heap.top().value;
    error += heap.top().error;
    heap.pop();
  }
  result.value = value;
  result.error_estimate = error;
  return result;
}

template <class F>
QuadratureResult integrate_adaptive(F&& f, double a, double b, double abs_tol = default_abs_tol) {
  QuadratureOptions opts;
  opts.abs_tol = abs_tol;
  return integrate_adaptive(std::forward<F>(f), a, b, opts);
}

/// Integral of f over [a, inf) through the substitution x = a + scale*u/(1-u),
/// which maps onto u in [0, 1). `scale` should be the decay length of f.
template <class F>
QuadratureResult integrate_semi_infinite(F&& f, double a, double scale, const QuadratureOptions& opts) {
  if (!(scale > 0.0)) throw std::invalid_argument("integrate_semi_infinite: scale must be positive");
  auto mapped = [&](double u) {
    const double one_minus = 1.0 - u;
    const double x = a + scale * u / one_minus;
    const double jacobian = scale / (one_minus * one_minus);
    const double fx = f(x);
    // f decays faster than the Jacobian grows; guard inf*0 at u -> 1.
    if (fx == 0.0 || !std::isfinite(jacobian)) return 0.0;
    return fx * jacobian;
  };
  return integrate_adaptive(mapped, 0.0, 1.0, opts);
}

/// Euler Gamma function. Poles (non-positive integers) are rejected within a
/// radius of 1e-6. Backed by std::tgamma, which applies the reflection
/// identity internally for negative arguments.
inline double gamma_function(double x) {
  const double nearest = std::round(x);
  if (nearest <= 0.0 && std::abs(x - nearest) < 1e-6) {
    std::ostringstream msg;
    msg << "gamma_function: argument " << x << " is within 1e-6 of the pole at " << nearest;
    throw std::domain_error(msg.str());
  }
  return std::tgamma(x);
}

/// Symmetric difference (f(t+h) - f(t-h)) / 2h with O(h^2) truncation error.
/// When t - h falls below `lower_bound` (the start of f's domain) the
/// second-order one-sided stencil (-3f(t) + 4f(t+h) - f(t+2h)) / 2h is used.
template <class F>
double central_difference(F&& f, double t, double h,
                          double lower_bound = -std::numeric_limits<double>::infinity()) {
  if (!(h > 0.0)) throw std::invalid_argument("central_difference: step must be positive");
  if (t - h < lower_bound) {
    return (-3.0 * f(t) + 4.0 * f(t + h) - f(t + 2.0 * h)) / (2.0 * h);
  }
  return (f(t + h) - f(t - h)) / (2.0 * h);
}

}  // namespace num
}  // namespace qsl
