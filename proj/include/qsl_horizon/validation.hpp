#pragma once

// Cross-module oracle checks. Each check returns a CheckResult made of named
// items; a check passes only if all of its items pass. Shared by the
// acceptance binary and `qsl-horizon validate`.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "core.hpp"
#include "dephasing_model.hpp"
#include "figures.hpp"
#include "hawking.hpp"
#include "jc_model.hpp"
#include "numerics.hpp"
#include "qsl_bounds.hpp"

namespace qsl::validation {

struct Item {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct CheckResult {
  int id = 0;
  std::string title;
  std::vector<Item> items;
  double seconds = 0.0;

  bool passed() const {
    for (const auto& i : items) {
      if (!i.passed) return false;
    }
    return !items.empty();
  }
};

/// Replaceable pieces used by the negative controls.
struct Hooks {
  std::function<double(double)> gamma = [](double x) { return num::gamma_function(x); };
  std::function<Matrix2(const QubitState&, double, const JCParams&)> jc_generator =
      [](const QubitState& rho, double t, const JCParams& p) { return qsl::jc_generator(rho, t, p); };
  /// Worker threads for figure sweeps (0 = automatic).
  unsigned threads = 0;
};

namespace detail {

inline std::string sci(double v) {
  std::ostringstream s;
  s << std::scientific << std::setprecision(2) << v;
  return s.str();
}

inline double rel_diff(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng_); }
  double log_uniform(double a, double b) { return std::exp(uniform(std::log(a), std::log(b))); }

  /// Uniform in the closed unit ball.
  BlochVector bloch() {
    std::normal_distribution<double> n;
    double x = n(rng_), y = n(rng_), z = n(rng_);
    const double norm = std::sqrt(x * x + y * y + z * z);
    const double r = std::cbrt(uniform(0.0, 1.0)) / norm;
    return {x * r, y * r, z * r};
  }

  ParameterRecord dephasing_record() {
    ParameterRecord rec;
    rec.s = uniform(0.3, 5.0);
    rec.eta = uniform(0.5, 2.0);
    rec.omega = uniform(1.0, 20.0);
    rec.r0 = uniform(1.0, 1.05);
    rec.tau = uniform(0.0, 5.0);
    rec.tau_d = uniform(0.1, 2.0);
    rec.bloch = bloch();
    return rec;
  }

  ParameterRecord jc_record() {
    ParameterRecord rec;
    rec.gamma0 = log_uniform(0.05, 20.0);
    rec.omega = uniform(1.0, 20.0);
    rec.r0 = uniform(1.0, 1.05);
    rec.tau = uniform(0.0, 5.0);
    rec.tau_d = uniform(0.1, 2.0);
    rec.bloch = bloch();
    return rec;
  }

 private:
  std::mt19937_64 rng_;
};

template <class Fn>
CheckResult timed(int id, std::string title, Fn&& fn) {
  const auto start = std::chrono::steady_clock::now();
  CheckResult r{id, std::move(title), {}, 0.0};
  try {
    fn(r);
  } catch (const std::exception& e) {
    r.items.push_back({"unexpected exception", false, e.what()});
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

inline Item oracle_item(Model model, int samples, double tol, std::uint64_t seed) {
  Sampler rng(seed);
  double worst = 0.0;
  int failures = 0;
  for (int i = 0; i < samples; ++i) {
    const auto rec = model == Model::jc ? rng.jc_record() : rng.dephasing_record();
    const auto closed = evaluate_qsl(model, rec);
    const auto oracle = evaluate_oracle(model, rec);
    const double d = rel_diff(closed.tau_qsl, oracle.tau_qsl);
    worst = std::max(worst, d);
    if (!(d <= tol) || closed.stationary() != oracle.stationary()) ++failures;
  }
  return {std::to_string(samples) + " random tuples, relative " + sci(tol), failures == 0,
          "worst relative deviation " + sci(worst) + ", failures " + std::to_string(failures)};
}

// (rho(t+h) - rho(t-h)) / 2h, one-sided second order near t = 0.
template <class StateFn>
Matrix2 state_derivative(StateFn&& state, double t, double h) {
  if (t - h < 0.0) {
    const Matrix2 a = state(t).matrix(), b = state(t + h).matrix(), c = state(t + 2.0 * h).matrix();
    return cplx(1.0 / (2.0 * h)) * (cplx(-3.0) * a + cplx(4.0) * b - c);
  }
  return cplx(1.0 / (2.0 * h)) * (state(t + h).matrix() - state(t - h).matrix());
}

// Zeros of G(t) = cos(y) + (lambda/|d|) sin(y), y = |d| t / 2, on (0, t_max],
// bracketed on a fine grid and refined by bisection.
inline std::vector<double> strong_survival_zeros(const JCParams& p, double t_max) {
  std::vector<double> out;
  if (p.regime() != CouplingRegime::strong) return out;
  const double d = p.d_magnitude();
  auto g = [&](double t) { return std::cos(0.5 * d * t) + p.lambda() / d * std::sin(0.5 * d * t); };
  const int n = 20000;
  for (int i = 0; i < n; ++i) {
    double a = t_max * i / n, b = t_max * (i + 1) / n;
    if (g(a) * g(b) > 0.0) continue;
    for (int k = 0; k < 200 && b - a > 1e-16 * b; ++k) {
      const double m = 0.5 * (a + b);
      (g(a) * g(m) <= 0.0 ? b : a) = m;
    }
    out.push_back(0.5 * (a + b));
  }
  return out;
}

}  // namespace detail

/// 1: dephasing closed form against the numeric ML bound.
inline CheckResult check_dephasing_oracle() {
  return detail::timed(1, "Oracle equivalence, dephasing closed form vs numeric ML bound", [](CheckResult& r) {
    const auto start = std::chrono::steady_clock::now();
    r.items.push_back(detail::oracle_item(Model::dephasing, 200, 1e-9, 0xD3F1));
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    r.items.push_back({"runtime < 30 s", secs < 30.0, detail::sci(secs) + " s"});
  });
}

/// 2: Jaynes-Cummings closed form against the numeric ML bound.
inline CheckResult check_jc_oracle() {
  return detail::timed(2, "Oracle equivalence, JC closed form vs numeric ML bound", [](CheckResult& r) {
    const auto start = std::chrono::steady_clock::now();
    r.items.push_back(detail::oracle_item(Model::jc, 200, 1e-6, 0x1C0A));
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    r.items.push_back({"runtime < 60 s", secs < 60.0, detail::sci(secs) + " s"});

    detail::Sampler rng(0x1C0A);
    int printed_off = 0;
    for (int i = 0; i < 200; ++i) {
      const auto rec = rng.jc_record();
      const auto h = hawking_factors(rec.omega, rec.r0, WarningHandler{});
      const JCParams p(rec.gamma0, rec.lambda);
      const double exact = jc_qsl_numerator(rec.bloch, h, p, rec.tau, rec.tau_d);
      const double printed = jc_qsl_numerator_as_printed(rec.bloch, h, p, rec.tau, rec.tau_d);
      const double oracle = evaluate_oracle(Model::jc, rec).numerator;
      if (detail::rel_diff(exact, oracle) > 1e-9) {
        r.items.push_back({"closed-form numerator equals the overlap numerator", false,
                           "tuple " + std::to_string(i) + " deviates by " + detail::sci(detail::rel_diff(exact, oracle))});
        return;
      }
      if (detail::rel_diff(printed, oracle) > 1e-6) ++printed_off;
    }
    r.items.push_back({"closed-form numerator equals the overlap numerator", true,
                       "alternative j- grouping of the first term disagrees on " + std::to_string(printed_off) +
                           "/200 tuples and is not used"});
  });
}

/// 3: finite-difference d(rho)/dt against the generator output.
inline CheckResult check_master_equation(const Hooks& hooks = {}) {
  return detail::timed(3, "Master-equation consistency", [&](CheckResult& r) {
    const auto h = hawking_factors(10.0, 1.05, WarningHandler{});
    const std::vector<QubitState> states{horizon_state({1.0, 0.0, 0.0}, h), horizon_state({0.3, -0.4, -0.5}, h),
                                         horizon_state({0.0, 0.6, 0.7}, h)};
    const int n = 500;
    const double t_max = 5.0;

    for (double g0 : {0.1, 0.5, 2.0, 10.0}) {
      const JCParams p(g0, 1.0);
      const double step = 1e-5 / p.lambda();
      const auto zeros = detail::strong_survival_zeros(p, t_max + 1.0);
      double worst = 0.0;
      int used = 0;
      for (const auto& rho0 : states) {
        for (int i = 0; i <= n; ++i) {
          const double t = t_max * i / n;
          bool near_zero = false;
          for (double z : zeros) near_zero |= std::abs(t - z) < 1e-3;
          if (near_zero) continue;
          const auto fd = detail::state_derivative([&](double s) { return jc_evolve(rho0, s, p); }, t, step);
          const auto gen = hooks.jc_generator(jc_evolve(rho0, t, p), t, p);
          worst = std::max(worst, (fd - gen).max_abs());
          ++used;
        }
      }
      r.items.push_back({std::string("JC ") + to_string(p.regime()) + " gamma0=" + format_number(g0, 4),
                         worst <= 1e-6, "sup-norm " + detail::sci(worst) + " over " + std::to_string(used) + " points"});
    }

    for (double s : {0.5, 1.0, 2.0, 4.5}) {
      const DephasingParams p(1.0, s, 1.0);
      double worst = 0.0;
      for (const auto& rho0 : states) {
        for (int i = 0; i <= n; ++i) {
          const double t = t_max * i / n;
          const auto fd = detail::state_derivative([&](double u) { return dephasing_evolve(rho0, u, p); }, t, 1e-5);
          const auto gen = dephasing_generator(dephasing_evolve(rho0, t, p), t, p);
          worst = std::max(worst, (fd - gen).max_abs());
        }
      }
      r.items.push_back({"dephasing s=" + format_number(s, 4), worst <= 1e-6, "sup-norm " + detail::sci(worst)});
    }
  });
}

/// 4: p_t against exp(-integral of gamma_t). In the strong regime the
/// simple poles of gamma_t (residue -2 at each zero t_k of p_t) are
/// subtracted before quadrature and integrated analytically:
///   p_t = exp(-integral [gamma + sum 2/(s - t_k)]) prod ((t - t_k)/t_k)^2.
inline CheckResult check_survival_quadrature() {
  return detail::timed(4, "Survival p_t closed form vs quadrature of the decay rate", [](CheckResult& r) {
    const double t_max = 5.0;
    for (double g0 : {0.1, 0.5, 10.0}) {
      const JCParams p(g0, 1.0);
      const auto zeros = detail::strong_survival_zeros(p, t_max);
      auto regular = [&](double s) {
        double v = jc_decay_rate(s, p);
        for (double z : zeros) v += 2.0 / (s - z);
        return v;
      };
      std::vector<double> ts;
      for (int i = 0; i <= 100; ++i) ts.push_back(t_max * i / 100);
      ts.insert(ts.end(), zeros.begin(), zeros.end());
      double worst = 0.0;
      bool converged = true;
      for (double t : ts) {
        std::vector<double> bps;
        for (double z : zeros) {
          if (z < t) bps.push_back(z);
        }
        const auto q = num::integrate_adaptive(regular, 0.0, t, {1e-11, 0.0, 4000}, bps);
        converged &= q.converged;
        double oracle = std::exp(-q.value);
        for (double z : zeros) oracle *= ((t - z) / z) * ((t - z) / z);
        worst = std::max(worst, std::abs(oracle - jc_survival(t, p)));
      }
      r.items.push_back({std::string(to_string(p.regime())) + " gamma0=" + format_number(g0, 4),
                         worst <= 1e-8 && converged,
                         "max |difference| " + detail::sci(worst) + ", " + std::to_string(zeros.size()) +
                             " zeros of p_t on [0, 5]"});
    }
  });
}

/// 5: zero-temperature decoherence function.
inline CheckResult check_decoherence_function(const Hooks& hooks = {}) {
  return detail::timed(5, "Zero-temperature decoherence function", [&](CheckResult& r) {
    auto closed = [&](double t, const DephasingParams& p) { return qsl::detail::decoherence_closed_form(t, p, hooks.gamma); };
    for (double s : {0.5, 2.0, 4.5}) {
      const DephasingParams p(1.0, s, 1.0);
      double worst = 0.0;
      for (double t : {0.25, 0.5, 1.0, 2.0, 5.0}) {
        worst = std::max(worst, std::abs(closed(t, p) - decoherence_function_finiteT(t, p, 0.0)));
      }
      r.items.push_back({"closed form vs integral, s=" + format_number(s, 3), worst <= 1e-8,
                         "max |difference| " + detail::sci(worst)});
    }

    double jump = 0.0;
    double to_log = 0.0;
    for (double eta : {1.0, 2.0}) {
      for (double x : {0.5, 1.0, 2.0}) {
        const double at_one = closed(x, DephasingParams(eta, 1.0, 1.0));
        for (double s : {1.0 - 1e-4, 1.0 + 1e-4}) {
          const double g = closed(x, DephasingParams(eta, s, 1.0));
          jump = std::max(jump, std::abs(g - at_one) / eta);
          to_log = std::max(to_log, std::abs(g - eta * std::log1p(x * x)) / eta);
        }
      }
    }
    r.items.push_back({"continuity across the Ohmic branch at |s-1| = 1e-4", jump <= 1e-3,
                       "max |difference|/eta " + detail::sci(jump)});
    r.items.push_back({"|s-1| = 1e-4 against eta ln(1 + w_c^2 t^2)", to_log <= 1e-3,
                       "max |difference|/eta " + detail::sci(to_log) +
                           "; the quadrature-consistent limit is (eta/2) ln(1 + w_c^2 t^2)"});
  });
}

/// 6: Hawking factor identities and the coherence trend.
inline CheckResult check_hawking_invariants() {
  return detail::timed(6, "Hawking invariants", [](CheckResult& r) {
    const std::vector<double> omegas{0.1, 1.0, 5.0, 10.0, 20.0, 50.0};
    const auto r0s = SweepRange{1.0, 1.05, 101}.grid();
    double worst = 0.0;
    for (double om : omegas) {
      for (double r0 : r0s) {
        const auto h = hawking_factors(om, r0, WarningHandler{});
        worst = std::max(worst, std::abs(h.j_minus * h.j_minus + h.j_plus * h.j_plus - 1.0));
      }
    }
    r.items.push_back({"j-^2 + j+^2 = 1", worst <= 1e-12, "max |deviation| " + detail::sci(worst)});

    bool exact = true;
    for (double om : omegas) {
      const auto h = hawking_factors(om, 1.0, WarningHandler{});
      exact &= coherence_after_dressing({1.0, 0.0, 0.0}, h) == 1.0 / std::sqrt(2.0);
      exact &= coherence_after_dressing({0.0, 0.6, 0.0}, h) == 0.6 / std::sqrt(2.0);
    }
    r.items.push_back({"coherence at R0 = 1 equals C0 / sqrt(2)", exact, exact ? "bitwise equal" : "mismatch"});

    int bad_r0 = 0, bad_omega = 0;
    for (std::size_t k = 0; k < omegas.size(); ++k) {
      for (std::size_t i = 0; i < r0s.size(); ++i) {
        const double c = coherence_after_dressing({1.0, 0.0, 0.0}, hawking_factors(omegas[k], r0s[i], WarningHandler{}));
        if (i > 0 &&
            !(c > coherence_after_dressing({1.0, 0.0, 0.0}, hawking_factors(omegas[k], r0s[i - 1], WarningHandler{})))) {
          ++bad_r0;
        }
        if (k > 0 && i > 0 &&
            !(c > coherence_after_dressing({1.0, 0.0, 0.0}, hawking_factors(omegas[k - 1], r0s[i], WarningHandler{})))) {
          ++bad_omega;
        }
      }
    }
    r.items.push_back({"coherence strictly increasing in R0", bad_r0 == 0, std::to_string(bad_r0) + " violations"});
    r.items.push_back(
        {"coherence strictly increasing in Omega (R0 > 1)", bad_omega == 0, std::to_string(bad_omega) + " violations"});
  });
}

inline std::vector<Figure> all_figures(unsigned threads = 0) {
  std::vector<Figure> out;
  for (const auto& id : figure_ids()) out.push_back(reproduce_figure(id, threads));
  return out;
}

namespace detail {

// Counts grid points where columns are not strictly ordered as `sign`
// requires (sign = -1: later curves lie strictly lower). Also records the
// x-range of the violations.
inline Item ordering_item(const std::string& name, const Table& t, const std::vector<std::string>& labels, int sign,
                          double x_from = -INFINITY) {
  int bad = 0, checked = 0;
  double lo = INFINITY, hi = -INFINITY;
  for (std::size_t i = 0; i < t.x.size(); ++i) {
    if (!(t.x[i] > x_from)) continue;
    ++checked;
    for (std::size_t c = 1; c < labels.size(); ++c) {
      const double prev = t.column(labels[c - 1]).values[i];
      const double cur = t.column(labels[c]).values[i];
      if (!(sign * (cur - prev) > 0.0)) {
        ++bad;
        lo = std::min(lo, t.x[i]);
        hi = std::max(hi, t.x[i]);
        break;
      }
    }
  }
  std::string d = std::to_string(bad) + "/" + std::to_string(checked) + " grid points violate";
  if (bad > 0) d += ", x in [" + format_number(lo, 4) + ", " + format_number(hi, 4) + "]";
  return {name, bad == 0 && checked >= 50, d};
}

// Strict monotonicity of one column along x.
inline Item along_x_item(const std::string& name, const Table& t, const std::string& label, int sign) {
  const auto& v = t.column(label).values;
  int bad = 0;
  for (std::size_t i = 1; i < v.size(); ++i) bad += !(sign * (v[i] - v[i - 1]) > 0.0);
  return {name, bad == 0 && v.size() >= 50,
          std::to_string(bad) + "/" + std::to_string(v.size() - 1) + " steps violate"};
}

inline const Figure& find_figure(const std::vector<Figure>& figs, const std::string& id) {
  for (const auto& f : figs) {
    if (f.id == id) return f;
  }
  throw std::out_of_range("figure " + id + " missing");
}

inline std::vector<std::string> r0_labels() {
  return {"tau_qsl[R0=1]", "tau_qsl[R0=1.01]", "tau_qsl[R0=1.03]", "tau_qsl[R0=1.05]"};
}

inline std::vector<std::string> omega_labels(const std::string& prefix) {
  return {"tau_qsl[" + prefix + "Omega=5]", "tau_qsl[" + prefix + "Omega=10]", "tau_qsl[" + prefix + "Omega=20]"};
}

}  // namespace detail

/// 7: qualitative trends of the published figures on the default grids.
inline CheckResult check_figure_trends(const std::vector<Figure>& figs) {
  return detail::timed(7, "Figure trends", [&](CheckResult& r) {
    using detail::find_figure;
    using detail::ordering_item;
    const auto r0 = detail::r0_labels();
    for (const char* id : {"fig2", "fig3", "fig4"}) {
      r.items.push_back(ordering_item(std::string(id) + " JC tau_QSL strictly decreasing in R0",
                                      find_figure(figs, id).table, r0, -1));
    }
    const auto& f5 = find_figure(figs, "fig5").table;
    for (const char* g : {"0.1", "10"}) {
      const std::string prefix = std::string("gamma0=") + g + ";";
      for (const auto& label : detail::omega_labels(prefix)) {
        r.items.push_back(detail::along_x_item("fig5 " + label + " strictly decreasing in R0", f5, label, -1));
      }
      r.items.push_back(ordering_item("fig5 gamma0=" + std::string(g) + " strictly decreasing in Omega (R0 > 1)", f5,
                                      detail::omega_labels(prefix), -1, 1.0));
    }

    const auto& weak = find_figure(figs, "fig2").table;
    const auto& strong = find_figure(figs, "fig3").table;
    int bad = 0, checked = 0;
    for (const auto& label : r0) {
      for (std::size_t i = 0; i < weak.x.size(); ++i, ++checked) {
        bad += !(strong.column(label).values[i] < weak.column(label).values[i]);
      }
    }
    r.items.push_back({"fig3 strong coupling below fig2 weak coupling", bad == 0,
                       std::to_string(bad) + "/" + std::to_string(checked) + " matched points violate"});

    for (const char* id : {"fig6", "fig7", "fig8"}) {
      r.items.push_back(ordering_item(std::string(id) + " dephasing tau_QSL strictly increasing in R0",
                                      find_figure(figs, id).table, r0, +1));
    }
    const auto& f9 = find_figure(figs, "fig9").table;
    for (const char* s : {"0.5", "4.5"}) {
      const std::string prefix = std::string("s=") + s + ";";
      for (const auto& label : detail::omega_labels(prefix)) {
        r.items.push_back(detail::along_x_item("fig9 " + label + " strictly increasing in R0", f9, label, +1));
      }
      r.items.push_back(ordering_item("fig9 s=" + std::string(s) + " strictly increasing in Omega (R0 > 1)", f9,
                                      detail::omega_labels(prefix), +1, 1.0));
    }

    auto monotone_in_tau = [](const Table& t, const std::string& label) {
      const auto& v = t.column(label).values;
      bool up = true, down = true;
      for (std::size_t i = 1; i < v.size(); ++i) {
        up &= v[i] >= v[i - 1];
        down &= v[i] <= v[i - 1];
      }
      return up || down;
    };
    const auto& f6 = find_figure(figs, "fig6").table;
    const auto& f7 = find_figure(figs, "fig7").table;
    int s05_nonmono = 0, s45_nonmono = 0;
    for (const auto& label : r0) {
      s05_nonmono += !monotone_in_tau(f6, label);
      s45_nonmono += !monotone_in_tau(f7, label);
    }
    r.items.push_back({"s = 0.5 curves monotone in tau", s05_nonmono == 0,
                       std::to_string(s05_nonmono) + "/4 curves non-monotone"});
    r.items.push_back({"s = 4.5 curves non-monotone in tau", s45_nonmono == 4,
                       std::to_string(s45_nonmono) + "/4 curves non-monotone"});
  });
}

/// 8: tau = 0 with monotone coherence decay gives tau_QSL = j- C tau_D.
inline CheckResult check_exact_cancellation() {
  return detail::timed(8, "Exact cancellation at tau = 0", [](CheckResult& r) {
    detail::Sampler rng(0xCA9C);
    double worst = 0.0;
    for (int i = 0; i < 200; ++i) {
      auto rec = rng.dephasing_record();
      rec.s = rng.uniform(0.3, 2.0);
      rec.tau = 0.0;
      const auto h = hawking_factors(rec.omega, rec.r0, WarningHandler{});
      const double expected = h.j_minus * rec.bloch.transverse() * rec.tau_d;
      worst = std::max(worst, std::abs(evaluate_qsl(Model::dephasing, rec).tau_qsl - expected));
    }
    r.items.push_back({"200 random tuples, s in [0.3, 2]", worst <= 1e-9, "max |difference| " + detail::sci(worst)});
  });
}

/// 9: tau_QSL / tau_D <= 1 + 1e-9 on every computed point.
inline CheckResult check_ratio_bound(const std::vector<Figure>& figs) {
  return detail::timed(9, "Speed-limit sanity tau_QSL / tau_D <= 1", [&](CheckResult& r) {
    double worst = 0.0;
    std::size_t points = 0;
    for (const auto& f : figs) {
      for (const auto& c : f.table.columns) {
        if (c.label.rfind("ratio[", 0) != 0) continue;
        for (double v : c.values) worst = std::max(worst, v), ++points;
      }
    }
    r.items.push_back({"figure sweeps", worst <= 1.0 + 1e-9 && points > 0,
                       std::to_string(points) + " points, max ratio " + format_number(worst, 10)});
    for (Model m : {Model::dephasing, Model::jc}) {
      detail::Sampler rng(m == Model::jc ? 0x1C0A : 0xD3F1);
      double w = 0.0;
      for (int i = 0; i < 200; ++i) {
        const auto rec = m == Model::jc ? rng.jc_record() : rng.dephasing_record();
        w = std::max({w, evaluate_qsl(m, rec).ratio, evaluate_oracle(m, rec).ratio});
      }
      r.items.push_back({std::string("random tuples, ") + to_string(m), w <= 1.0 + 1e-9,
                         "200 tuples, max ratio " + format_number(w, 10)});
    }
  });
}

/// 10: dephasing tau_QSL ignores r3 and scales linearly with C.
inline CheckResult check_state_dependence() {
  return detail::timed(10, "Dephasing r3-independence and linearity in coherence", [](CheckResult& r) {
    detail::Sampler rng(0x5A7E);
    double worst_r3 = 0.0, worst_lin = 0.0;
    for (int i = 0; i < 200; ++i) {
      auto rec = rng.dephasing_record();
      const double c = rec.bloch.transverse();
      const double room = std::sqrt(std::max(0.0, 1.0 - c * c));
      auto other = rec;
      other.bloch.r3 = rng.uniform(-room, room);
      const double base = evaluate_qsl(Model::dephasing, rec).tau_qsl;
      worst_r3 = std::max(worst_r3, std::abs(base - evaluate_qsl(Model::dephasing, other).tau_qsl));

      const double k = rng.uniform(0.0, 1.0);
      auto scaled = rec;
      scaled.bloch.r1 *= k;
      scaled.bloch.r2 *= k;
      worst_lin = std::max(worst_lin, std::abs(evaluate_qsl(Model::dephasing, scaled).tau_qsl - k * base));
    }
    r.items.push_back({"independent of r3", worst_r3 <= 1e-12, "max |difference| " + detail::sci(worst_r3)});
    r.items.push_back({"linear in C", worst_lin <= 1e-12, "max |difference| " + detail::sci(worst_lin)});
  });
}

/// 11: all figures twice on one worker; timing and byte equality.
inline CheckResult check_reproduce_determinism() {
  return detail::timed(11, "Full reproduce: runtime and determinism", [](CheckResult& r) {
    auto render = [] {
      std::string bytes;
      for (const auto& f : all_figures(1)) bytes += f.table.to_csv() + render_svg(f);
      return bytes;
    };
    const auto start = std::chrono::steady_clock::now();
    const auto first = render();
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const auto second = render();
    r.items.push_back({"nine figures single-core < 300 s", secs < 300.0, detail::sci(secs) + " s"});
    r.items.push_back({"byte-identical across two runs", first == second, std::to_string(first.size()) + " bytes"});
  });
}

inline std::vector<CheckResult> run_all(const Hooks& hooks = {}) {
  std::vector<CheckResult> out;
  out.push_back(check_dephasing_oracle());
  out.push_back(check_jc_oracle());
  out.push_back(check_master_equation(hooks));
  out.push_back(check_survival_quadrature());
  out.push_back(check_decoherence_function(hooks));
  out.push_back(check_hawking_invariants());
  std::vector<Figure> figs;
  try {
    figs = all_figures(hooks.threads);
  } catch (const std::exception& e) {
    CheckResult fail{7, "Figure trends", {{"figure generation", false, e.what()}}, 0.0};
    out.push_back(fail);
    fail.id = 9;
    fail.title = "Speed-limit sanity tau_QSL / tau_D <= 1";
    out.push_back(fail);
  }
  if (!figs.empty()) out.push_back(check_figure_trends(figs));
  out.push_back(check_exact_cancellation());
  if (!figs.empty()) out.push_back(check_ratio_bound(figs));
  out.push_back(check_state_dependence());
  out.push_back(check_reproduce_determinism());
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
  return out;
}

/// One PASS/FAIL line per check followed by indented item lines, marked
/// "." when the item holds and "!" when it does not.
inline std::string format_report(const std::vector<CheckResult>& results) {
  std::ostringstream s;
  for (const auto& c : results) {
    s << (c.passed() ? "PASS" : "FAIL") << "  " << std::setw(2) << c.id << "  " << c.title << "  ("
      << std::fixed << std::setprecision(2) << c.seconds << " s)\n";
    s.unsetf(std::ios::floatfield);
    for (const auto& i : c.items) {
      s << "          " << (i.passed ? ". " : "! ") << i.name << ": " << i.detail << "\n";
    }
  }
  return s.str();
}

}  // namespace qsl::validation
