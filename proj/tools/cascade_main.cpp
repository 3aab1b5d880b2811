// cascade - command-line front end: runs the semiclassical, number-state
// and coherent-state simulations, emits CSV/JSON series and SVG plots,
// prints dressed-state data, and cross-checks closed forms against the
// brute-force propagators.
//
// Exit codes: 0 success, 2 config error, 3 domain error, 4 tolerance failure.

#include <CLI11.hpp>

#include "cascade/core.hpp"
#include "cascade/fieldstats.hpp"
#include "cascade/jcm.hpp"
#include "cascade/oracle.hpp"
#include "cascade/semiclassical.hpp"
#include "cascade/series_io.hpp"
#include "cascade/svg_plot.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>

namespace {

using namespace cascade;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitDomain = 3;
constexpr int kExitTolerance = 4;

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ToleranceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string config_path;
  std::string mode;     // run mode, or checked model under oracle-check
  std::string check;    // model checked by oracle-check (overrides --mode)
  std::string initial;  // upper | middle | lower
  double omega0 = 0.0;
  double omega = 0.0;
  double omega1 = 0.0;
  double g = 0.0;
  double delta = 0.0;
  int n = 0;
  double nbar = 0.0;
  double t_start = 0.0;
  double t_max = 0.0;
  int steps = 1000;
  std::string format = "csv";
  std::string output;
  std::string plot;
  double tol = 1e-8;
  double tail_tol = 1e-12;
};

struct Binding {
  CLI::Option* opt = nullptr;
  std::function<void(const std::string&)> apply;
  bool from_file = false;
};

double parse_double(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(value, &pos);
    if (pos != value.size()) throw std::invalid_argument("trailing junk");
    return v;
  } catch (const std::exception&) {
    throw ConfigError("config: bad numeric value for '" + key + "': " + value);
  }
}

int parse_int(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const int v = std::stoi(value, &pos);
    if (pos != value.size()) throw std::invalid_argument("trailing junk");
    return v;
  } catch (const std::exception&) {
    throw ConfigError("config: bad integer value for '" + key + "': " + value);
  }
}

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

// Plain `key = value` lines; '#' starts a comment.
std::map<std::string, std::string> load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open file: " + path);
  std::map<std::string, std::string> kv;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string stripped = trim(line);
    if (stripped.empty()) continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config: line " + std::to_string(lineno) +
                        " is not 'key = value': " + path);
    }
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value = trim(stripped.substr(eq + 1));
    if (key.empty() || value.empty()) {
      throw ConfigError("config: empty key or value on line " +
                        std::to_string(lineno) + ": " + path);
    }
    kv[key] = value;
  }
  return kv;
}

AtomicLevel parse_initial(const std::string& s) {
  if (s == "upper") return AtomicLevel::Upper;
  if (s == "middle") return AtomicLevel::Middle;
  if (s == "lower") return AtomicLevel::Lower;
  throw ConfigError("initial must be one of upper/middle/lower, got '" + s +
                    "'");
}

std::string with_output_dir(const std::string& path) {
  if (path.empty() || path.front() == '/') return path;
  const char* dir = std::getenv("CASCADE_OUTPUT_DIR");
  if (dir == nullptr || dir[0] == '\0') return path;
  std::string prefixed(dir);
  if (prefixed.back() != '/') prefixed += '/';
  return prefixed + path;
}

std::string format_g(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

class Runner {
 public:
  Runner(const Options& opts, const std::set<std::string>& present)
      : o_(opts), present_(present) {}

  int run(const std::string& mode) {
    if (mode == "semiclassical") return run_semiclassical();
    if (mode == "jcm-number") return run_jcm_number();
    if (mode == "jcm-coherent") return run_jcm_coherent();
    if (mode == "oracle-check") return run_oracle_check();
    if (mode == "dressed-info") return run_dressed_info();
    throw ConfigError("unknown mode '" + mode + "'");
  }

 private:
  bool present(const std::string& key) const { return present_.count(key) > 0; }

  void require(std::initializer_list<const char*> keys,
               const std::string& mode) const {
    std::string missing;
    for (const char* k : keys) {
      if (!present(k)) missing += std::string(missing.empty() ? "" : ", ") + k;
    }
    if (!missing.empty()) {
      throw ConfigError("mode " + mode + " requires: " + missing);
    }
  }

  void forbid(std::initializer_list<const char*> keys,
              const std::string& mode) const {
    for (const char* k : keys) {
      if (present(k)) {
        throw ConfigError("parameter '" + std::string(k) +
                          "' does not apply to mode " + mode);
      }
    }
  }

  TimeGrid grid() const {
    if (!(o_.t_max > o_.t_start)) {
      throw ConfigError("t-max must be greater than t-start");
    }
    if (o_.steps < 1) throw ConfigError("steps must be >= 1");
    return TimeGrid(o_.t_start, o_.t_max, o_.steps);
  }

  void emit_series(const PopulationSeries& series,
                   const nlohmann::ordered_json& echo,
                   const std::string& title) const {
    std::string text;
    if (o_.format == "csv") {
      text = io::to_csv(series);
    } else if (o_.format == "json") {
      text = io::to_json(series, echo).dump(2) + "\n";
    } else {
      throw ConfigError("format must be csv or json, got '" + o_.format + "'");
    }

    if (o_.output.empty()) {
      std::cout << text;
    } else {
      write_checked(with_output_dir(o_.output), text);
    }
    if (!o_.plot.empty()) {
      write_checked(with_output_dir(o_.plot), io::to_svg(series, title));
    }
  }

  static void write_checked(const std::string& path, const std::string& text) {
    try {
      io::write_file(path, text);
    } catch (const std::runtime_error& e) {
      throw ConfigError(e.what());
    }
  }

  int run_semiclassical() const {
    require({"initial", "omega0", "omega", "omega1", "t-max"}, "semiclassical");
    forbid({"g", "delta", "n", "nbar", "tol", "tail-tol"}, "semiclassical");
    const SemiclassicalParams params(o_.omega0, o_.omega, o_.omega1);
    const auto c = semiclassical::case_for_initial(parse_initial(o_.initial));
    const PopulationSeries series =
        semiclassical::population_series(params, c, grid());

    nlohmann::ordered_json echo;
    echo["mode"] = "semiclassical";
    echo["initial"] = o_.initial;
    echo["omega0"] = o_.omega0;
    echo["omega"] = o_.omega;
    echo["omega1"] = o_.omega1;
    echo["t_start"] = o_.t_start;
    echo["t_max"] = o_.t_max;
    echo["steps"] = o_.steps;
    emit_series(series, echo,
                "semiclassical, start " + o_.initial + ", omega0=" +
                    format_g(o_.omega0) + " omega=" + format_g(o_.omega) +
                    " omega1=" + format_g(o_.omega1));
    return kExitOk;
  }

  int run_jcm_number() const {
    require({"initial", "g", "n", "t-max"}, "jcm-number");
    forbid({"omega0", "omega", "omega1", "nbar", "tol", "tail-tol"},
           "jcm-number");
    const JcmParams params(o_.g, o_.delta, o_.n);
    const auto level = parse_initial(o_.initial);
    const TimeGrid tg = grid();

    PopulationSeries series;
    series.times = tg.times();
    if (o_.delta == 0.0) {
      const auto c = jcm::case_for_initial(level);
      for (double t : series.times) {
        const Populations p = jcm::evolve_closed_form(params, c, t);
        series.p_upper.push_back(p.upper);
        series.p_middle.push_back(p.middle);
        series.p_lower.push_back(p.lower);
      }
    } else {
      // Detuned manifolds have no printed closed form; use the dressed
      // propagator.
      const ThreeLevelAmplitudes init = bare_state(level);
      if (level == AtomicLevel::Upper && params.n == 0) {
        throw std::domain_error(
            "jcm-number: upper-level start needs n >= 1");
      }
      for (double t : series.times) {
        const ThreeLevelAmplitudes s = jcm::evolve_general(params, init, t);
        series.p_upper.push_back(std::norm(s.c_upper));
        series.p_middle.push_back(std::norm(s.c_middle));
        series.p_lower.push_back(std::norm(s.c_lower));
      }
    }

    nlohmann::ordered_json echo;
    echo["mode"] = "jcm-number";
    echo["initial"] = o_.initial;
    echo["g"] = o_.g;
    echo["delta"] = o_.delta;
    echo["n"] = o_.n;
    echo["t_start"] = o_.t_start;
    echo["t_max"] = o_.t_max;
    echo["steps"] = o_.steps;
    emit_series(series, echo,
                "number state n=" + std::to_string(o_.n) + ", start " +
                    o_.initial + ", g=" + format_g(o_.g) +
                    " delta=" + format_g(o_.delta));
    return kExitOk;
  }

  int run_jcm_coherent() const {
    require({"initial", "g", "nbar", "t-max"}, "jcm-coherent");
    forbid({"omega0", "omega", "omega1", "n", "tol"}, "jcm-coherent");
    if (present("delta") && o_.delta != 0.0) {
      throw ConfigError(
          "jcm-coherent averages the resonant closed forms; delta must be 0");
    }
    if (o_.nbar < 0.0) throw ConfigError("nbar must be >= 0");
    if (!(o_.g > 0.0)) throw ConfigError("g must be > 0");
    if (!(o_.tail_tol > 0.0 && o_.tail_tol < 1.0)) {
      throw ConfigError("tail-tol must be in (0, 1)");
    }

    const auto field = fieldstats::poisson_weights(o_.nbar, o_.tail_tol);
    const auto c = jcm::case_for_initial(parse_initial(o_.initial));
    const PopulationSeries series =
        fieldstats::averaged_populations(field, o_.g, c, grid());

    nlohmann::ordered_json echo;
    echo["mode"] = "jcm-coherent";
    echo["initial"] = o_.initial;
    echo["g"] = o_.g;
    echo["nbar"] = o_.nbar;
    echo["tail_tol"] = o_.tail_tol;
    echo["truncation"] = field.truncation;
    echo["t_start"] = o_.t_start;
    echo["t_max"] = o_.t_max;
    echo["steps"] = o_.steps;
    emit_series(series, echo,
                "coherent field nbar=" + format_g(o_.nbar) + ", start " +
                    o_.initial + ", g=" + format_g(o_.g));
    return kExitOk;
  }

  int run_oracle_check() const {
    const std::string model = !o_.check.empty() ? o_.check : o_.mode;
    if (model.empty() || model == "oracle-check") {
      throw ConfigError(
          "oracle-check needs the model to check: --mode semiclassical or "
          "--mode jcm-number");
    }

    PopulationSeries closed;
    PopulationSeries reference;
    if (model == "semiclassical") {
      require({"initial", "omega0", "omega", "omega1", "t-max"},
              "oracle-check");
      const SemiclassicalParams params(o_.omega0, o_.omega, o_.omega1);
      const auto level = parse_initial(o_.initial);
      const TimeGrid tg = grid();
      closed = semiclassical::population_series(
          params, semiclassical::case_for_initial(level), tg);
      reference = oracle::semiclassical_series(params, bare_state(level), tg);
    } else if (model == "jcm-number") {
      require({"initial", "g", "n", "t-max"}, "oracle-check");
      const JcmParams params(o_.g, o_.delta, o_.n);
      const auto level = parse_initial(o_.initial);
      const TimeGrid tg = grid();
      closed.times = tg.times();
      if (o_.delta == 0.0) {
        const auto c = jcm::case_for_initial(level);
        for (double t : closed.times) {
          const Populations p = jcm::evolve_closed_form(params, c, t);
          closed.p_upper.push_back(p.upper);
          closed.p_middle.push_back(p.middle);
          closed.p_lower.push_back(p.lower);
        }
      } else {
        const ThreeLevelAmplitudes init = bare_state(level);
        for (double t : closed.times) {
          const ThreeLevelAmplitudes s = jcm::evolve_general(params, init, t);
          closed.p_upper.push_back(std::norm(s.c_upper));
          closed.p_middle.push_back(std::norm(s.c_middle));
          closed.p_lower.push_back(std::norm(s.c_lower));
        }
      }
      reference = oracle::jcm_series(params, bare_state(level), tg);
    } else {
      throw ConfigError("oracle-check model must be semiclassical or "
                        "jcm-number, got '" + model + "'");
    }

    double max_dev = 0.0;
    for (std::size_t i = 0; i < closed.size(); ++i) {
      max_dev = std::max(
          {max_dev, std::abs(closed.p_upper[i] - reference.p_upper[i]),
           std::abs(closed.p_middle[i] - reference.p_middle[i]),
           std::abs(closed.p_lower[i] - reference.p_lower[i])});
    }
    std::printf("oracle-check %s: max deviation %.3e over %zu grid points "
                "(tolerance %.1e)\n",
                model.c_str(), max_dev, closed.size(), o_.tol);
    if (max_dev > o_.tol) {
      throw ToleranceError("oracle-check: deviation above tolerance");
    }
    return kExitOk;
  }

  int run_dressed_info() const {
    require({"g", "n"}, "dressed-info");
    forbid({"omega0", "omega", "omega1", "nbar", "initial", "t-max", "tol",
            "tail-tol"},
           "dressed-info");
    const JcmParams params(o_.g, o_.delta, o_.n);
    const jcm::DressedSpectrum sp = jcm::dressed_spectrum(params);

    std::ostringstream out;
    char buf[160];
    std::snprintf(buf, sizeof buf, "n = %d, g = %.12g, delta = %.12g\n", o_.n,
                  o_.g, o_.delta);
    out << buf;
    std::snprintf(buf, sizeof buf,
                  "eigenvalues: lambda_plus = %.12g, lambda_zero = %.12g, "
                  "lambda_minus = %.12g\n",
                  sp.lambda_plus, sp.lambda_zero, sp.lambda_minus);
    out << buf;
    out << "T (rows pair with lambda_plus, lambda_zero, lambda_minus):\n";
    for (int r = 0; r < 3; ++r) {
      std::snprintf(buf, sizeof buf, "  [ %15.12f %15.12f %15.12f ]\n",
                    sp.t_matrix.entries(r, 0), sp.t_matrix.entries(r, 1),
                    sp.t_matrix.entries(r, 2));
      out << buf;
    }
    std::snprintf(buf, sizeof buf,
                  "euler angles: psi = %.12g, theta = %.12g, phi = %.12g\n",
                  sp.t_matrix.psi, sp.t_matrix.theta, sp.t_matrix.phi);
    out << buf;

    std::cout << out.str();
    if (!o_.output.empty()) {
      write_checked(with_output_dir(o_.output), out.str());
    }
    return kExitOk;
  }

  const Options& o_;
  const std::set<std::string>& present_;
};

}  // namespace

int main(int argc, char** argv) {
  Options o;
  CLI::App app{"Exact dynamics of a driven cascade three-level atom"};
  app.name("cascade");

  std::map<std::string, Binding> bindings;
  auto bind = [&](const std::string& key, CLI::Option* opt,
                  std::function<void(const std::string&)> apply) {
    bindings[key] = Binding{opt, std::move(apply), false};
  };

  app.add_option("--config", o.config_path,
                 "Config file with key = value lines; flags override it");

  bind("mode", app.add_option("--mode", o.mode,
                              "Run mode (or model checked by oracle-check)"),
       [&](const std::string& v) { o.mode = v; });
  bind("check",
       app.add_option("--check", o.check,
                      "Model checked by oracle-check "
                      "(semiclassical or jcm-number)"),
       [&](const std::string& v) { o.check = v; });
  bind("initial",
       app.add_option("--initial", o.initial,
                      "Initial atomic level: upper, middle or lower"),
       [&](const std::string& v) { o.initial = v; });
  bind("omega0", app.add_option("--omega0", o.omega0, "Atomic gap (rad/time)"),
       [&](const std::string& v) { o.omega0 = parse_double("omega0", v); });
  bind("omega", app.add_option("--omega", o.omega, "Drive frequency"),
       [&](const std::string& v) { o.omega = parse_double("omega", v); });
  bind("omega1", app.add_option("--omega1", o.omega1, "Classical coupling"),
       [&](const std::string& v) { o.omega1 = parse_double("omega1", v); });
  bind("g", app.add_option("--g", o.g, "Quantized coupling"),
       [&](const std::string& v) { o.g = parse_double("g", v); });
  bind("delta",
       app.add_option("--delta", o.delta, "Detuning omega0 - omega (JCM)"),
       [&](const std::string& v) { o.delta = parse_double("delta", v); });
  bind("n", app.add_option("--n", o.n, "Photon number of the middle state"),
       [&](const std::string& v) { o.n = parse_int("n", v); });
  bind("nbar", app.add_option("--nbar", o.nbar, "Coherent mean photon number"),
       [&](const std::string& v) { o.nbar = parse_double("nbar", v); });
  bind("t-start", app.add_option("--t-start", o.t_start, "Grid start time"),
       [&](const std::string& v) { o.t_start = parse_double("t-start", v); });
  bind("t-max", app.add_option("--t-max", o.t_max, "Grid end time"),
       [&](const std::string& v) { o.t_max = parse_double("t-max", v); });
  bind("steps", app.add_option("--steps", o.steps, "Grid points"),
       [&](const std::string& v) { o.steps = parse_int("steps", v); });
  bind("format", app.add_option("--format", o.format, "Output format: csv|json"),
       [&](const std::string& v) { o.format = v; });
  bind("output", app.add_option("--output", o.output, "Output path (default stdout)"),
       [&](const std::string& v) { o.output = v; });
  bind("plot", app.add_option("--plot", o.plot, "Optional SVG plot path"),
       [&](const std::string& v) { o.plot = v; });
  bind("tol", app.add_option("--tol", o.tol, "oracle-check tolerance"),
       [&](const std::string& v) { o.tol = parse_double("tol", v); });
  bind("tail-tol",
       app.add_option("--tail-tol", o.tail_tol, "Poisson tail tolerance"),
       [&](const std::string& v) { o.tail_tol = parse_double("tail-tol", v); });

  const char* subcommands[] = {"semiclassical", "jcm-number", "jcm-coherent",
                               "oracle-check", "dressed-info"};
  const char* sub_help[] = {
      "Classical-drive closed forms over a time grid",
      "Number-state manifold populations",
      "Coherent-state (Poisson) averaged populations",
      "Closed form vs brute-force propagator, exit 4 above tolerance",
      "Eigenvalues, rotation matrix and Euler angles of one manifold"};
  for (int i = 0; i < 5; ++i) {
    auto* sub = app.add_subcommand(subcommands[i], sub_help[i]);
    sub->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    // Config-file values fill in everything not given on the command line.
    if (!o.config_path.empty()) {
      for (const auto& [key, value] : load_config_file(o.config_path)) {
        auto it = bindings.find(key);
        if (it == bindings.end()) {
          throw ConfigError("config: unknown key '" + key + "'");
        }
        if (it->second.opt->count() == 0) it->second.apply(value);
        it->second.from_file = true;
      }
    }

    std::set<std::string> present;
    for (const auto& [key, b] : bindings) {
      if (b.opt->count() > 0 || b.from_file) present.insert(key);
    }

    std::string action;
    const auto parsed_subs = app.get_subcommands();
    if (!parsed_subs.empty()) {
      action = parsed_subs.front()->get_name();
    } else if (present.count("mode") > 0) {
      action = o.mode;
    }
    if (action.empty()) {
      throw ConfigError(
          "no mode selected; pass a subcommand (semiclassical, jcm-number, "
          "jcm-coherent, oracle-check, dressed-info) or a config file with a "
          "'mode' entry");
    }
    if (action != "oracle-check" && present.count("mode") > 0 &&
        o.mode != action) {
      throw ConfigError("mode '" + o.mode + "' conflicts with subcommand '" +
                        action + "'");
    }

    return Runner(o, present).run(action);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const ToleranceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitTolerance;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDomain;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDomain;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitTolerance;
  }
}
