// qsl-horizon: figure sweeps, single-point queries and validation for the
// near-horizon quantum speed limit models.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "qsl_horizon/qsl_horizon.hpp"

namespace {

namespace fs = std::filesystem;
using qsl::Model;
using qsl::ParameterRecord;
using qsl::SweepVariable;

struct Flags {
  std::optional<std::string> config;
  std::map<std::string, std::optional<double>> numbers;
  std::optional<std::string> out;
  std::optional<std::string> format;
  std::optional<std::string> model;
  std::optional<std::string> variable;
  std::optional<double> from;
  std::optional<double> to;
  std::optional<int> steps;
};

const char* const number_keys[] = {"omega", "r0",          "tau",         "tau-d", "gamma0", "lambda", "s",
                                   "eta",   "omega-c",     "temperature", "r1",    "r2",     "r3"};

// Flat `key = value` file; '#' starts a comment.
std::map<std::string, std::pair<std::string, int>> read_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file " + path);
  std::map<std::string, std::pair<std::string, int>> out;
  std::string line;
  for (int no = 1; std::getline(in, line); ++no) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      if (b == std::string::npos) return std::string();
      return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
    };
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument(path + ":" + std::to_string(no) + ": expected `key = value`");
    }
    std::string key = trim(line.substr(0, eq));
    for (auto& c : key) c = c == '_' ? '-' : c;
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty()) {
      throw std::invalid_argument(path + ":" + std::to_string(no) + ": empty key or value");
    }
    out[key] = {value, no};
  }
  return out;
}

double parse_number(const std::string& text, const std::string& where) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || used == 0) throw std::invalid_argument(where + ": '" + text + "' is not a number");
  return v;
}

double& field(ParameterRecord& rec, const std::string& key) {
  if (key == "omega") return rec.omega;
  if (key == "r0") return rec.r0;
  if (key == "tau") return rec.tau;
  if (key == "tau-d") return rec.tau_d;
  if (key == "gamma0") return rec.gamma0;
  if (key == "lambda") return rec.lambda;
  if (key == "s") return rec.s;
  if (key == "eta") return rec.eta;
  if (key == "omega-c") return rec.omega_c;
  if (key == "temperature") return rec.temperature;
  if (key == "r1") return rec.bloch.r1;
  if (key == "r2") return rec.bloch.r2;
  return rec.bloch.r3;
}

struct Settings {
  ParameterRecord rec;
  std::string out;
  std::string format = "csv";
  Model model = Model::jc;
  SweepVariable variable = SweepVariable::tau;
  qsl::SweepRange range{0.0, 5.0, qsl::default_grid_points};
};

Model parse_model(const std::string& s, const std::string& where) {
  if (s == "jc") return Model::jc;
  if (s == "dephasing") return Model::dephasing;
  throw std::invalid_argument(where + ": model must be jc or dephasing, got '" + s + "'");
}

SweepVariable parse_variable(const std::string& s, const std::string& where) {
  for (auto v : {SweepVariable::tau, SweepVariable::gamma0, SweepVariable::s, SweepVariable::r0,
                 SweepVariable::omega}) {
    if (s == qsl::to_string(v)) return v;
  }
  throw std::invalid_argument(where + ": variable must be one of tau, gamma0, s, r0, omega; got '" + s + "'");
}

// Defaults, then the config file, then explicit flags.
Settings resolve(const Flags& flags, Settings base) {
  Settings st = std::move(base);
  if (flags.config) {
    const std::string& path = *flags.config;
    for (const auto& [key, entry] : read_config(path)) {
      const std::string where = path + ":" + std::to_string(entry.second) + ": " + key;
      bool known = false;
      for (const char* k : number_keys) {
        if (key == k) {
          field(st.rec, key) = parse_number(entry.first, where);
          known = true;
        }
      }
      if (known) continue;
      if (key == "out") {
        st.out = entry.first;
      } else if (key == "format") {
        st.format = entry.first;
      } else if (key == "model") {
        st.model = parse_model(entry.first, where);
      } else if (key == "variable") {
        st.variable = parse_variable(entry.first, where);
      } else if (key == "from") {
        st.range.start = parse_number(entry.first, where);
      } else if (key == "to") {
        st.range.stop = parse_number(entry.first, where);
      } else if (key == "steps") {
        st.range.steps = static_cast<int>(parse_number(entry.first, where));
      } else {
        throw std::invalid_argument(path + ":" + std::to_string(entry.second) + ": unknown key '" + key + "'");
      }
    }
  }
  for (const auto& [key, value] : flags.numbers) {
    if (value) field(st.rec, key) = *value;
  }
  if (flags.out) st.out = *flags.out;
  if (flags.format) st.format = *flags.format;
  if (flags.model) st.model = parse_model(*flags.model, "--model");
  if (flags.variable) st.variable = parse_variable(*flags.variable, "--variable");
  if (flags.from) st.range.start = *flags.from;
  if (flags.to) st.range.stop = *flags.to;
  if (flags.steps) st.range.steps = *flags.steps;
  if (st.format != "csv" && st.format != "svg" && st.format != "both") {
    throw std::invalid_argument("format must be csv, svg or both, got '" + st.format + "'");
  }
  return st;
}

void add_shared(CLI::App* app, Flags& flags) {
  app->add_option("--config", flags.config, "key = value file; flags override its entries");
  app->add_option("--out", flags.out, "output file (or directory for reproduce)");
  app->add_option("--format", flags.format, "csv, svg or both");
  for (const char* key : number_keys) {
    app->add_option(std::string("--") + key, flags.numbers[key]);
  }
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  if (const auto dir = fs::path(path).parent_path(); !dir.empty()) fs::create_directories(dir);
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::invalid_argument("cannot write " + path);
  f << text;
}

void warn_once_beyond_window(double r0) {
  if (r0 > qsl::rindler_window_r0) qsl::hawking_factors(1.0, r0, qsl::stderr_warnings());
}

int run_coherence(const Settings& st) {
  qsl::SweepRange range = st.range;
  write_output(st.out, qsl::coherence_csv(st.rec.omega, range, st.rec.bloch, qsl::stderr_warnings()));
  return 0;
}

int run_reproduce(const Settings& st, const std::string& id) {
  const std::string dir = st.out.empty() ? "figures" : st.out;
  std::vector<std::string> ids;
  if (id == "all") {
    ids = qsl::figure_ids();
  } else {
    ids.push_back(id);
  }
  for (const auto& fig_id : ids) {
    const auto fig = qsl::reproduce_figure(fig_id);
    const fs::path base = fs::path(dir) / fig.id;
    if (st.format != "svg") write_output(base.string() + ".csv", fig.table.to_csv());
    if (st.format != "csv") write_output(base.string() + ".svg", qsl::render_svg(fig));
    std::cerr << "wrote " << base.string() << (st.format == "both" ? ".{csv,svg}" : "." + st.format) << '\n';
  }
  return 0;
}

int run_point(const Settings& st, bool oracle) {
  qsl::validate(st.rec, st.model);
  warn_once_beyond_window(st.rec.r0);
  const auto r = qsl::evaluate_qsl(st.model, st.rec);
  std::string header = "model,tau,tau_d,tau_qsl,ratio,bound,status";
  std::string row = std::string(qsl::to_string(st.model)) + "," + qsl::format_number(st.rec.tau) + "," +
                    qsl::format_number(st.rec.tau_d) + "," + qsl::format_number(r.tau_qsl) + "," +
                    qsl::format_number(r.ratio) + "," + qsl::to_string(r.bound_kind) + "," +
                    (r.stationary() ? "stationary" : "evolving");
  if (oracle) {
    const auto o = qsl::evaluate_oracle(st.model, st.rec);
    const double scale = std::max(std::abs(r.tau_qsl), std::abs(o.tau_qsl));
    const double dev = scale == 0.0 ? 0.0 : std::abs(r.tau_qsl - o.tau_qsl) / scale;
    header += ",oracle_tau_qsl,relative_deviation";
    row += "," + qsl::format_number(o.tau_qsl) + "," + qsl::format_number(dev, 3);
  }
  if (st.model == Model::dephasing && st.rec.temperature > 0.0) {
    const qsl::DephasingParams p(st.rec.eta, st.rec.s, st.rec.omega_c);
    const double t_end = st.rec.tau + st.rec.tau_d;
    header += ",decoherence_T0,decoherence_T";
    row += "," + qsl::format_number(qsl::decoherence_function_T0(t_end, p)) + "," +
           qsl::format_number(qsl::decoherence_function_finiteT(t_end, p, st.rec.temperature));
  }
  write_output(st.out, header + "\n" + row + "\n");
  return 0;
}

int run_sweep(const Settings& st) {
  qsl::SweepConfig cfg;
  cfg.model = st.model;
  cfg.variable = st.variable;
  cfg.range = st.range;
  cfg.fixed = st.rec;
  cfg.output = st.out;
  cfg.validate();
  warn_once_beyond_window(st.variable == SweepVariable::r0 ? st.range.stop : st.rec.r0);
  qsl::Figure fig{"sweep", std::string(qsl::to_string(cfg.model)) + " versus " + qsl::to_string(cfg.variable),
                  qsl::to_string(cfg.variable), "tau_QSL", qsl::run_sweep(cfg), 1};
  if (st.format == "csv") {
    write_output(st.out, fig.table.to_csv());
  } else if (st.format == "svg") {
    write_output(st.out, qsl::render_svg(fig));
  } else {
    const std::string stem = st.out.empty() ? "sweep" : fs::path(st.out).replace_extension().string();
    write_output(stem + ".csv", fig.table.to_csv());
    write_output(stem + ".svg", qsl::render_svg(fig));
  }
  return 0;
}

int run_validate() {
  const auto results = qsl::validation::run_all();
  std::cout << qsl::validation::format_report(results);
  int failed = 0;
  for (const auto& r : results) failed += !r.passed();
  std::cout << (results.size() - failed) << "/" << results.size() << " checks passed\n";
  return failed == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum speed limits of a qubit near a Schwarzschild horizon"};
  app.require_subcommand(1);

  Flags coherence_flags, reproduce_flags, point_flags, sweep_flags;
  std::string figure;
  bool oracle = false;

  auto* coherence = app.add_subcommand("coherence", "coherence versus R0 as CSV (r0,omega,coherence)");
  add_shared(coherence, coherence_flags);
  coherence->add_option("--from", coherence_flags.from, "first R0 (default 1)");
  coherence->add_option("--to", coherence_flags.to, "last R0 (default 1.05)");
  coherence->add_option("--steps", coherence_flags.steps, "grid points (default 201)");

  auto* reproduce = app.add_subcommand("reproduce", "write fig1..fig9 (or all) as CSV and/or SVG");
  reproduce->add_option("figure", figure, "fig1..fig9 or all")->required();
  add_shared(reproduce, reproduce_flags);

  auto* point = app.add_subcommand("point", "speed-limit time at one parameter point");
  add_shared(point, point_flags);
  point->add_option("--model", point_flags.model, "jc or dephasing");
  point->add_flag("--oracle", oracle, "also evaluate the numeric ML bound");

  auto* validate = app.add_subcommand("validate", "run every cross-module check");

  auto* sweep = app.add_subcommand("sweep", "one-curve sweep over a chosen variable");
  add_shared(sweep, sweep_flags);
  sweep->add_option("--model", sweep_flags.model, "jc or dephasing");
  sweep->add_option("--variable", sweep_flags.variable, "tau, gamma0, s, r0 or omega");
  sweep->add_option("--from", sweep_flags.from);
  sweep->add_option("--to", sweep_flags.to);
  sweep->add_option("--steps", sweep_flags.steps);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (coherence->parsed()) {
      Settings base;
      base.range = {1.0, 1.05, qsl::default_grid_points};
      return run_coherence(resolve(coherence_flags, base));
    }
    if (reproduce->parsed()) return run_reproduce(resolve(reproduce_flags, {}), figure);
    if (point->parsed()) return run_point(resolve(point_flags, {}), oracle);
    if (validate->parsed()) return run_validate();
    if (sweep->parsed()) return run_sweep(resolve(sweep_flags, {}));
  } catch (const qsl::numerical_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
