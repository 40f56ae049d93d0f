#pragma once

// Parameter sweeps behind the published figures, their CSV serialization and
// a minimal SVG line plot.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "core.hpp"
#include "dephasing_model.hpp"
#include "hawking.hpp"
#include "jc_model.hpp"
#include "qsl_bounds.hpp"

namespace qsl {

enum class Model { jc, dephasing };

enum class SweepVariable { tau, gamma0, s, r0, omega };

inline const char* to_string(Model m) { return m == Model::jc ? "jc" : "dephasing"; }

inline const char* to_string(SweepVariable v) {
  switch (v) {
    case SweepVariable::tau:
      return "tau";
    case SweepVariable::gamma0:
      return "gamma0";
    case SweepVariable::s:
      return "s";
    case SweepVariable::r0:
      return "r0";
    case SweepVariable::omega:
      return "omega";
  }
  return "?";
}

/// Every parameter either model can consume. Units: lambda = 1 for the JC
/// defaults, omega_c = eta = 1 for dephasing.
struct ParameterRecord {
  double omega = 10.0;
  double r0 = 1.0;
  double tau = 0.0;
  double tau_d = 1.0;
  double gamma0 = 0.1;
  double lambda = 1.0;
  double s = 0.5;
  double eta = 1.0;
  double omega_c = 1.0;
  /// Only used by the exploratory finite-temperature report.
  double temperature = 0.0;
  BlochVector bloch{1.0, 0.0, 0.0};
};

/// Throws std::invalid_argument if `rec` violates any invariant of `model`.
inline void validate(const ParameterRecord& rec, Model model) {
  hawking_factors(rec.omega, rec.r0, WarningHandler{});
  validate_segment(rec.tau, rec.tau_d);
  validate_bloch(rec.bloch);
  if (model == Model::jc) {
    JCParams(rec.gamma0, rec.lambda);
  } else {
    DephasingParams(rec.eta, rec.s, rec.omega_c);
  }
  if (!(rec.temperature >= 0.0) || !std::isfinite(rec.temperature)) {
    throw std::invalid_argument("temperature must be finite and >= 0");
  }
}

inline void set_variable(ParameterRecord& rec, SweepVariable v, double x) {
  switch (v) {
    case SweepVariable::tau:
      rec.tau = x;
      break;
    case SweepVariable::gamma0:
      rec.gamma0 = x;
      break;
    case SweepVariable::s:
      rec.s = x;
      break;
    case SweepVariable::r0:
      rec.r0 = x;
      break;
    case SweepVariable::omega:
      rec.omega = x;
      break;
  }
}

struct SweepRange {
  double start = 0.0;
  double stop = 1.0;
  int steps = 201;

  void validate() const {
    if (steps < 2) throw std::invalid_argument("sweep range needs steps >= 2");
    if (!std::isfinite(start) || !std::isfinite(stop) || !(start < stop)) {
      throw std::invalid_argument("sweep range needs finite start < stop");
    }
  }

  /// Evenly spaced points; the last one is exactly `stop`.
  std::vector<double> grid() const {
    validate();
    std::vector<double> out(static_cast<std::size_t>(steps));
    for (int i = 0; i < steps; ++i) out[i] = start + (stop - start) * i / (steps - 1);
    out.back() = stop;
    return out;
  }
};

struct SweepConfig {
  Model model = Model::jc;
  SweepVariable variable = SweepVariable::tau;
  SweepRange range;
  ParameterRecord fixed;
  std::string output;

  /// Checks the range and the fixed record at both ends of the range.
  void validate() const {
    range.validate();
    if (model == Model::jc && variable == SweepVariable::s) {
      throw std::invalid_argument("the jc model has no s parameter to sweep");
    }
    if (model == Model::dephasing && variable == SweepVariable::gamma0) {
      throw std::invalid_argument("the dephasing model has no gamma0 parameter to sweep");
    }
    for (double x : {range.start, range.stop}) {
      ParameterRecord rec = fixed;
      set_variable(rec, variable, x);
      qsl::validate(rec, model);
    }
  }
};

/// Closed-form speed-limit time for one parameter record.
inline QSLResult evaluate_qsl(Model model, const ParameterRecord& rec, const WarningHandler& warn = {}) {
  const auto h = hawking_factors(rec.omega, rec.r0, warn);
  if (model == Model::jc) return jc_qsl(rec.bloch, h, JCParams(rec.gamma0, rec.lambda), rec.tau, rec.tau_d);
  return dephasing_qsl(rec.bloch, h, DephasingParams(rec.eta, rec.s, rec.omega_c), rec.tau, rec.tau_d);
}

/// The same quantity from the generic numeric ML bound on the model's
/// trajectory.
inline QSLResult evaluate_oracle(Model model, const ParameterRecord& rec, const WarningHandler& warn = {}) {
  const auto h = hawking_factors(rec.omega, rec.r0, warn);
  const auto rho0 = horizon_state(rec.bloch, h);
  const double t_end = rec.tau + rec.tau_d;
  Trajectory traj;
  if (model == Model::jc) {
    const JCParams p(rec.gamma0, rec.lambda);
    traj = jc_trajectory(rho0, p, t_end);
    traj.breakpoints = detail::jc_kinks(p, rec.tau, t_end);
  } else {
    const DephasingParams p(rec.eta, rec.s, rec.omega_c);
    traj = dephasing_trajectory(rho0, p, t_end);
    traj.breakpoints = detail::dephasing_kinks(p, rec.tau, t_end);
  }
  return ml_bound_numeric(traj, rec.tau, rec.tau_d);
}

/// Worker count: hardware concurrency, capped by QSL_HORIZON_THREADS.
inline unsigned worker_count() {
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("QSL_HORIZON_THREADS")) {
    char* end = nullptr;
    const long cap = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && cap > 0) n = std::min<unsigned>(n, static_cast<unsigned>(cap));
  }
  return n;
}

/// out[i] = f(i) for i < n, evaluated on up to `threads` workers (0 picks
/// worker_count()). The first exception thrown by any call is rethrown.
template <class F>
std::vector<double> parallel_map(std::size_t n, F&& f, unsigned threads = 0) {
  std::vector<double> out(n);
  if (threads == 0) threads = worker_count();
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(n, 1)));
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto work = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        out[i] = f(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        next = n;
      }
    }
  };
  if (threads <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned k = 0; k < threads; ++k) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  if (error) std::rethrow_exception(error);
  return out;
}

inline std::string format_number(double v, int digits = 12) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

struct Column {
  std::string label;
  std::vector<double> values;
};

/// Wide table: one x column followed by one column per curve.
struct Table {
  std::vector<double> x;
  std::vector<Column> columns;

  const Column& column(std::string_view label) const {
    for (const auto& c : columns) {
      if (c.label == label) return c;
    }
    throw std::out_of_range("no column " + std::string(label));
  }

  std::string to_csv() const {
    std::string out = "x";
    for (const auto& c : columns) out += "," + c.label;
    out += '\n';
    for (std::size_t i = 0; i < x.size(); ++i) {
      out += format_number(x[i]);
      for (const auto& c : columns) out += "," + format_number(c.values[i]);
      out += '\n';
    }
    return out;
  }
};

struct Curve {
  std::string label;
  ParameterRecord params;
};

struct Figure {
  std::string id;
  std::string title;
  std::string x_name;
  std::string y_name;
  Table table;
  /// Number of leading columns drawn in the SVG plot.
  std::size_t plotted = 0;
};

namespace detail {

// tau_qsl[label] columns for every curve, then ratio[label] columns.
inline Table qsl_table(Model model, SweepVariable var, const std::vector<double>& xs,
                       const std::vector<Curve>& curves, unsigned threads) {
  const std::size_t nx = xs.size();
  const std::size_t n = nx * curves.size();
  std::vector<double> ratios(n);
  auto taus = parallel_map(
      n,
      [&](std::size_t i) {
        ParameterRecord rec = curves[i / nx].params;
        set_variable(rec, var, xs[i % nx]);
        const auto r = evaluate_qsl(model, rec);
        ratios[i] = r.ratio;
        return r.tau_qsl;
      },
      threads);
  Table t;
  t.x = xs;
  for (std::size_t c = 0; c < curves.size(); ++c) {
    t.columns.push_back({"tau_qsl[" + curves[c].label + "]", {taus.begin() + c * nx, taus.begin() + (c + 1) * nx}});
  }
  for (std::size_t c = 0; c < curves.size(); ++c) {
    t.columns.push_back({"ratio[" + curves[c].label + "]", {ratios.begin() + c * nx, ratios.begin() + (c + 1) * nx}});
  }
  return t;
}

inline std::vector<Curve> r0_curves(const ParameterRecord& base) {
  std::vector<Curve> out;
  for (double r0 : {1.0, 1.01, 1.03, 1.05}) {
    Curve c{"R0=" + format_number(r0, 6), base};
    c.params.r0 = r0;
    out.push_back(c);
  }
  return out;
}

inline std::vector<Curve> omega_curves(const ParameterRecord& base, const std::string& prefix) {
  std::vector<Curve> out;
  for (double omega : {5.0, 10.0, 20.0}) {
    Curve c{prefix + "Omega=" + format_number(omega, 6), base};
    c.params.omega = omega;
    out.push_back(c);
  }
  return out;
}

inline Figure qsl_figure(std::string id, std::string title, Model model, SweepVariable var, SweepRange range,
                         std::string x_name, const std::vector<Curve>& curves, unsigned threads) {
  Figure f{std::move(id), std::move(title), std::move(x_name), "tau_QSL", {}, curves.size()};
  f.table = qsl_table(model, var, range.grid(), curves, threads);
  return f;
}

}  // namespace detail

inline const std::vector<std::string>& figure_ids() {
  static const std::vector<std::string> ids{"fig1", "fig2", "fig3", "fig4", "fig5",
                                            "fig6", "fig7", "fig8", "fig9"};
  return ids;
}

inline constexpr int default_grid_points = 201;

/// Builds one figure on its default grid. Throws std::invalid_argument for
/// an unknown id.
inline Figure reproduce_figure(std::string_view id, unsigned threads = 0) {
  using detail::omega_curves;
  using detail::qsl_figure;
  using detail::r0_curves;
  const int n = default_grid_points;
  ParameterRecord jc;
  ParameterRecord deph;

  if (id == "fig1") {
    Figure f{"fig1", "Coherence after horizon dressing, C0 = 1", "R0", "coherence", {}, 3};
    f.table.x = SweepRange{1.0, 1.05, n}.grid();
    for (double omega : {5.0, 10.0, 20.0}) {
      Column c{"coherence[Omega=" + format_number(omega, 6) + "]", {}};
      for (double r0 : f.table.x) {
        c.values.push_back(coherence_after_dressing(jc.bloch, hawking_factors(omega, r0, WarningHandler{})));
      }
      f.table.columns.push_back(std::move(c));
    }
    return f;
  }
  if (id == "fig2") {
    jc.gamma0 = 0.1;
    return qsl_figure("fig2", "JC, weak coupling gamma0 = 0.1 lambda, tau_D = 1", Model::jc, SweepVariable::tau,
                      {0.0, 5.0, n}, "tau", r0_curves(jc), threads);
  }
  if (id == "fig3") {
    jc.gamma0 = 10.0;
    return qsl_figure("fig3", "JC, strong coupling gamma0 = 10 lambda, tau_D = 1", Model::jc, SweepVariable::tau,
                      {0.0, 5.0, n}, "tau", r0_curves(jc), threads);
  }
  if (id == "fig4") {
    return qsl_figure("fig4", "JC versus gamma0, tau = 0, tau_D = 1", Model::jc, SweepVariable::gamma0,
                      {0.1, 10.0, n}, "gamma0", r0_curves(jc), threads);
  }
  if (id == "fig5") {
    std::vector<Curve> curves;
    for (double g0 : {0.1, 10.0}) {
      ParameterRecord base = jc;
      base.gamma0 = g0;
      for (auto& c : omega_curves(base, "gamma0=" + format_number(g0, 6) + ";")) curves.push_back(c);
    }
    return qsl_figure("fig5", "JC versus R0, tau = 0, tau_D = 1", Model::jc, SweepVariable::r0, {1.0, 1.05, n},
                      "R0", curves, threads);
  }
  if (id == "fig6") {
    deph.s = 0.5;
    return qsl_figure("fig6", "Dephasing, s = 0.5, tau_D = 1", Model::dephasing, SweepVariable::tau,
                      {0.0, 5.0, n}, "tau", r0_curves(deph), threads);
  }
  if (id == "fig7") {
    deph.s = 4.5;
    return qsl_figure("fig7", "Dephasing, s = 4.5, tau_D = 1", Model::dephasing, SweepVariable::tau,
                      {0.0, 5.0, n}, "tau", r0_curves(deph), threads);
  }
  if (id == "fig8") {
    return qsl_figure("fig8", "Dephasing versus s, tau = 0, tau_D = 1", Model::dephasing, SweepVariable::s,
                      {0.1, 5.0, n}, "s", r0_curves(deph), threads);
  }
  if (id == "fig9") {
    std::vector<Curve> curves;
    for (double s : {0.5, 4.5}) {
      ParameterRecord base = deph;
      base.s = s;
      for (auto& c : omega_curves(base, "s=" + format_number(s, 6) + ";")) curves.push_back(c);
    }
    return qsl_figure("fig9", "Dephasing versus R0, tau = 0, tau_D = 1", Model::dephasing, SweepVariable::r0,
                      {1.0, 1.05, n}, "R0", curves, threads);
  }
  throw std::invalid_argument("unknown figure id '" + std::string(id) + "' (expected fig1..fig9)");
}

/// One curve over the configured range: columns tau_qsl and ratio.
inline Table run_sweep(const SweepConfig& cfg, unsigned threads = 0) {
  cfg.validate();
  auto t = detail::qsl_table(cfg.model, cfg.variable, cfg.range.grid(), {{"", cfg.fixed}}, threads);
  t.columns[0].label = "tau_qsl";
  t.columns[1].label = "ratio";
  return t;
}

/// Rows r0,omega,coherence over an R0 grid.
inline std::string coherence_csv(double omega, const SweepRange& r0_range, const BlochVector& bloch,
                                 const WarningHandler& warn = {}) {
  validate_bloch(bloch);
  std::string out = "r0,omega,coherence\n";
  for (double r0 : r0_range.grid()) {
    const auto h = hawking_factors(omega, r0, WarningHandler{});
    out += format_number(r0) + "," + format_number(omega) + "," + format_number(coherence_after_dressing(bloch, h)) +
           "\n";
  }
  if (warn && r0_range.stop > rindler_window_r0) hawking_factors(omega, r0_range.stop, warn);
  return out;
}

/// Self-contained SVG line plot of the first `fig.plotted` columns.
inline std::string render_svg(const Figure& fig) {
  const double width = 720, height = 480, left = 70, right = 190, top = 40, bottom = 50;
  const double pw = width - left - right, ph = height - top - bottom;
  const auto& xs = fig.table.x;
  const std::size_t ncol = std::min(fig.plotted, fig.table.columns.size());
  double xmin = xs.front(), xmax = xs.back();
  double ymin = 0.0, ymax = 0.0;
  bool first = true;
  for (std::size_t c = 0; c < ncol; ++c) {
    for (double v : fig.table.columns[c].values) {
      if (first) ymin = ymax = v, first = false;
      ymin = std::min(ymin, v);
      ymax = std::max(ymax, v);
    }
  }
  if (ymax - ymin < 1e-12) ymin -= 0.5, ymax += 0.5;
  const double pad = 0.05 * (ymax - ymin);
  ymin -= pad;
  ymax += pad;
  auto px = [&](double x) { return left + (x - xmin) / (xmax - xmin) * pw; };
  auto py = [&](double y) { return top + (ymax - y) / (ymax - ymin) * ph; };
  auto num = [](double v) { return format_number(v, 6); };
  static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

  std::string s;
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(width) + "\" height=\"" + num(height) +
       "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  s += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  s += "<text x=\"" + num(left) + "\" y=\"22\" font-size=\"14\">" + fig.id + ": " + fig.title + "</text>\n";
  s += "<rect x=\"" + num(left) + "\" y=\"" + num(top) + "\" width=\"" + num(pw) + "\" height=\"" + num(ph) +
       "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int k = 0; k <= 5; ++k) {
    const double xv = xmin + (xmax - xmin) * k / 5.0;
    const double yv = ymin + (ymax - ymin) * k / 5.0;
    s += "<text x=\"" + num(px(xv)) + "\" y=\"" + num(top + ph + 18) + "\" text-anchor=\"middle\">" +
         format_number(xv, 4) + "</text>\n";
    s += "<text x=\"" + num(left - 6) + "\" y=\"" + num(py(yv) + 4) + "\" text-anchor=\"end\">" +
         format_number(yv, 4) + "</text>\n";
  }
  s += "<text x=\"" + num(left + pw / 2) + "\" y=\"" + num(height - 10) + "\" text-anchor=\"middle\">" + fig.x_name +
       "</text>\n";
  s += "<text x=\"16\" y=\"" + num(top + ph / 2) + "\" transform=\"rotate(-90 16 " + num(top + ph / 2) +
       ")\" text-anchor=\"middle\">" + fig.y_name + "</text>\n";
  for (std::size_t c = 0; c < ncol; ++c) {
    const auto& col = fig.table.columns[c];
    const char* color = colors[c % 6];
    s += "<polyline fill=\"none\" stroke-width=\"1.5\" stroke=\"" + std::string(color) + "\" points=\"";
    for (std::size_t i = 0; i < xs.size(); ++i) {
      s += num(px(xs[i])) + "," + num(py(col.values[i])) + (i + 1 < xs.size() ? " " : "");
    }
    s += "\"/>\n";
    const double ly = top + 14 + 18 * static_cast<double>(c);
    s += "<line x1=\"" + num(left + pw + 12) + "\" y1=\"" + num(ly - 4) + "\" x2=\"" + num(left + pw + 36) +
         "\" y2=\"" + num(ly - 4) + "\" stroke=\"" + color + "\" stroke-width=\"2\"/>\n";
    s += "<text x=\"" + num(left + pw + 42) + "\" y=\"" + num(ly) + "\">" + col.label + "</text>\n";
  }
  s += "</svg>\n";
  return s;
}

}  // namespace qsl
