#include "recoilq/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

namespace recoilq {

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
  double x = 0.0;
  auto s = trim(v);
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
  if (s.empty() || ec != std::errc() || p != s.data() + s.size() || !std::isfinite(x))
    throw ConfigError("invalid value for " + key + ": '" + v + "'");
  return x;
}

long long to_int(const std::string& key, const std::string& v) {
  long long x = 0;
  auto s = trim(v);
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
  if (s.empty() || ec != std::errc() || p != s.data() + s.size())
    throw ConfigError("invalid value for " + key + ": '" + v + "'");
  return x;
}

Mass to_mass(const std::string& key, const std::string& v) {
  auto s = trim(v);
  if (s == "inf" || s == "infinity" || s == "Inf") return Mass::infinite();
  double m = to_double(key, v);
  if (!(m > 0.0)) throw ConfigError("invalid value for " + key + ": mstar must be positive");
  return Mass::finite(m);
}

const char* mode_name(Mode m) {
  switch (m) {
    case Mode::trajectory: return "trajectory";
    case Mode::sweep: return "sweep";
    case Mode::oracle_compare: return "oracle-compare";
  }
  return "?";
}

using nlohmann::json;

json num(double x) { return std::isfinite(x) ? json(x) : json(format_double(x)); }

}  // namespace

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = {
      "mode", "mstar", "mstar-log-min", "mstar-log-max", "mstar-points", "lambda", "sigma",
      "cutoff", "tmax", "nsamples", "output", "format", "seed"};
  return keys;
}

void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value) {
  const std::string v = trim(value);
  if (key == "mode") {
    if (v == "trajectory") cfg.mode = Mode::trajectory;
    else if (v == "sweep") cfg.mode = Mode::sweep;
    else if (v == "oracle-compare") cfg.mode = Mode::oracle_compare;
    else throw ConfigError("invalid value for mode: '" + value + "'");
  } else if (key == "mstar") {
    cfg.mstar = to_mass(key, v);
  } else if (key == "mstar-log-min") {
    cfg.log_min = to_double(key, v);
  } else if (key == "mstar-log-max") {
    cfg.log_max = to_double(key, v);
  } else if (key == "mstar-points") {
    auto n = to_int(key, v);
    if (n < 1) throw ConfigError("invalid value for mstar-points: must be at least 1");
    cfg.points = static_cast<int>(n);
  } else if (key == "lambda") {
    cfg.params.lambda = to_double(key, v);
  } else if (key == "sigma") {
    cfg.params.sigma = to_double(key, v);
  } else if (key == "cutoff") {
    cfg.params.cutoff = to_double(key, v);
  } else if (key == "tmax") {
    cfg.params.tmax = to_double(key, v);
  } else if (key == "nsamples") {
    auto n = to_int(key, v);
    if (n < 2 || n > 10000000) throw ConfigError("invalid value for nsamples: '" + value + "'");
    cfg.params.nsamples = static_cast<int>(n);
  } else if (key == "output") {
    cfg.output = v;
  } else if (key == "format") {
    if (v == "csv") cfg.format = Format::csv;
    else if (v == "json") cfg.format = Format::json;
    else throw ConfigError("invalid value for format: '" + value + "'");
  } else if (key == "seed") {
    auto n = to_int(key, v);
    if (n < 0) throw ConfigError("invalid value for seed: '" + value + "'");
    cfg.seed = static_cast<std::uint64_t>(n);
  } else {
    throw ConfigError("unknown key '" + key + "'");
  }
}

RunConfig config_from_text(const std::string& text, RunConfig cfg) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(lineno) + ": expected key=value");
    std::string key = trim(line.substr(0, eq));
    if (key.empty()) throw ConfigError("line " + std::to_string(lineno) + ": missing key");
    apply_setting(cfg, key, line.substr(eq + 1));
  }
  return cfg;
}

RunConfig parse_config(int argc, const char* const* argv) {
  CLI::App app{"recoil decoherence of a two-level atom"};
  std::string config_path;
  std::map<std::string, std::string> flags;
  app.add_option("--config", config_path, "key=value file; flags override it");
  const std::map<std::string, std::string> help = {
      {"mode", "trajectory, sweep or oracle-compare (default sweep)"},
      {"mstar", "single mass in hbar omega0/c^2 units, or inf"},
      {"mstar-log-min", "sweep grid, log10 of the smallest mass (default 1)"},
      {"mstar-log-max", "sweep grid, log10 of the largest mass (default 8)"},
      {"mstar-points", "sweep grid size (default 8)"},
      {"lambda", "coupling (default 0.1)"},
      {"sigma", "packet width in c/omega0 (default 1)"},
      {"cutoff", "UV cutoff in omega0 (default 50)"},
      {"tmax", "final time in 1/omega0 (default 40)"},
      {"nsamples", "time samples (default 200)"},
      {"output", "output file, '-' for stdout; a sweep also writes FILE.plotdata"},
      {"format", "csv or json (default csv)"}};
  for (const auto& k : config_keys()) {
    if (k == "seed") continue;
    app.add_option("--" + k, flags[k], help.at(k));
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    throw ConfigError("help:" + app.help());
  } catch (const CLI::ParseError& e) {
    throw ConfigError(e.what());
  }

  RunConfig cfg;
  if (!config_path.empty()) {
    std::ifstream f(config_path);
    if (!f) throw ConfigError("cannot read config file '" + config_path + "'");
    std::stringstream ss;
    ss << f.rdbuf();
    cfg = config_from_text(ss.str(), cfg);
  }
  for (const auto& k : config_keys()) {
    if (k == "seed") continue;
    if (app.count("--" + k) > 0) apply_setting(cfg, k, flags[k]);
  }
  if (cfg.mode != Mode::sweep && !cfg.mstar)
    throw ConfigError("missing required field: mstar (needed by mode " +
                      std::string(mode_name(cfg.mode)) + ")");
  auto problems = check(cfg.params);
  if (!problems.empty()) throw ConfigError(ValidationError(problems).what());
  return cfg;
}

std::string format_double(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (std::isnan(x)) return "nan";
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, p);
}

std::string format_mass(const Mass& m) {
  return m.is_infinite() ? "inf" : format_double(m.value());
}

void write_sweep(std::ostream& os, const SweepResult& r, Format f) {
  const auto& p = r.params;
  if (f == Format::csv) {
    os << "mstar,sigma,lambda,cutoff,gamma_coh,gamma_pop,gamma_stationary,pct_increase\n";
    for (const auto& pt : r.points) {
      os << format_mass(pt.mstar) << ',' << format_double(p.sigma) << ','
         << format_double(p.lambda) << ',' << format_double(p.cutoff) << ','
         << format_double(pt.coh.gamma) << ',' << format_double(pt.pop.gamma) << ','
         << format_double(r.stationary_coh.gamma) << ',' << format_double(pt.pct_increase) << '\n';
    }
    return;
  }
  json rows = json::array();
  for (const auto& pt : r.points) {
    rows.push_back({{"mstar", pt.mstar.is_infinite() ? json("inf") : json(pt.mstar.value())},
                    {"sigma", num(p.sigma)},
                    {"lambda", num(p.lambda)},
                    {"cutoff", num(p.cutoff)},
                    {"gamma_coh", num(pt.coh.gamma)},
                    {"gamma_pop", num(pt.pop.gamma)},
                    {"gamma_stationary", num(r.stationary_coh.gamma)},
                    {"pct_increase", num(pt.pct_increase)},
                    {"fit_residual", num(pt.coh.residual)}});
  }
  json doc = {{"mode", "sweep"}, {"monotone", r.monotone}, {"rows", rows}};
  os << doc.dump(1) << '\n';
}

void write_trajectory(std::ostream& os, const Trajectory& tr, Format f) {
  if (f == Format::csv) {
    os << "t,re_rho10,im_rho10,abs_rho10,rho11\n";
    for (std::size_t i = 0; i < tr.times.size(); ++i) {
      os << format_double(tr.times[i]) << ',' << format_double(tr.rho10[i].real()) << ','
         << format_double(tr.rho10[i].imag()) << ',' << format_double(std::abs(tr.rho10[i]))
         << ',' << format_double(tr.rho11[i]) << '\n';
    }
    return;
  }
  json rows = json::array();
  for (std::size_t i = 0; i < tr.times.size(); ++i)
    rows.push_back({{"t", num(tr.times[i])},
                    {"re_rho10", num(tr.rho10[i].real())},
                    {"im_rho10", num(tr.rho10[i].imag())},
                    {"abs_rho10", num(std::abs(tr.rho10[i]))},
                    {"rho11", num(tr.rho11[i])}});
  json doc = {{"mode", "trajectory"}, {"mstar", format_mass(tr.params.mstar)}, {"rows", rows}};
  os << doc.dump(1) << '\n';
}

void write_comparison(std::ostream& os, const Trajectory& pole, const Trajectory& oracle, Format f) {
  if (pole.times.size() != oracle.times.size()) throw std::invalid_argument("comparison: time grids differ");
  if (f == Format::csv) {
    os << "t,abs_rho10_pole,abs_rho10_oracle,abs_diff\n";
    for (std::size_t i = 0; i < pole.times.size(); ++i) {
      double a = std::abs(pole.rho10[i]), b = std::abs(oracle.rho10[i]);
      os << format_double(pole.times[i]) << ',' << format_double(a) << ',' << format_double(b)
         << ',' << format_double(std::abs(a - b)) << '\n';
    }
    return;
  }
  json rows = json::array();
  for (std::size_t i = 0; i < pole.times.size(); ++i) {
    double a = std::abs(pole.rho10[i]), b = std::abs(oracle.rho10[i]);
    rows.push_back({{"t", num(pole.times[i])},
                    {"abs_rho10_pole", num(a)},
                    {"abs_rho10_oracle", num(b)},
                    {"abs_diff", num(std::abs(a - b))}});
  }
  json doc = {{"mode", "oracle-compare"}, {"mstar", format_mass(pole.params.mstar)}, {"rows", rows}};
  os << doc.dump(1) << '\n';
}

void emit_plotdata(const SweepResult& r, std::ostream& os) {
  for (const auto& pt : r.points) {
    if (pt.mstar.is_infinite()) continue;
    os << format_double(std::log10(pt.mstar.value())) << ' ' << format_double(pt.pct_increase) << '\n';
  }
}

void emit_plotdata(const SweepResult& r, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open '" + path + "' for writing");
  emit_plotdata(r, f);
  f.flush();
  if (!f) throw std::runtime_error("write to '" + path + "' failed");
}

int run(const RunConfig& cfg, std::ostream& err) {
  std::ostringstream body;
  const SweepResult* sweep_for_plot = nullptr;
  SweepResult sw;
  try {
    ModelParams p = validate(cfg.params);
    switch (cfg.mode) {
      case Mode::sweep: {
        std::vector<Mass> grid = cfg.mstar ? std::vector<Mass>{*cfg.mstar}
                                           : log_grid(cfg.log_min, cfg.log_max, cfg.points);
        sw = sweep(grid, p, cfg.workers);
        for (const auto& pt : sw.points) {
          if (!pt.ok) {
            err << "sweep point mstar=" << format_mass(pt.mstar) << " failed: " << pt.note << '\n';
            return 2;
          }
        }
        for (const auto& pt : sw.points)
          if (pt.unconverged)
            err << "warning: mstar=" << format_mass(pt.mstar) << ": " << pt.unconverged
                << " early samples did not converge\n";
        if (!sw.monotone) err << "warning: pct_increase is not non-increasing in mstar\n";
        write_sweep(body, sw, cfg.format);
        sweep_for_plot = &sw;
        break;
      }
      case Mode::trajectory: {
        p.mstar = *cfg.mstar;
        Trajectory tr = evolve(p, cfg.workers);
        if (tr.unconverged())
          err << "warning: " << tr.unconverged() << " early samples did not converge\n";
        write_trajectory(body, tr, cfg.format);
        break;
      }
      case Mode::oracle_compare: {
        p.mstar = *cfg.mstar;
        Trajectory pole = evolve(p, cfg.workers);
        SectorOptions opt;
        opt.workers = cfg.workers;
        ModeGrid g = build_grid(128, 16, p.cutoff, p.lambda);
        SectorTrajectory s = evolve_sector(g, p, pole.times, opt);
        if (s.max_norm_drift > 1e-8)
          err << "warning: oracle norm drift " << format_double(s.max_norm_drift) << '\n';
        write_comparison(body, pole, reduce(s), cfg.format);
        break;
      }
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }

  try {
    if (cfg.output.empty() || cfg.output == "-") {
      std::cout << body.str();
      std::cout.flush();
    } else {
      std::ofstream f(cfg.output, std::ios::binary);
      if (!f) throw std::runtime_error("cannot open '" + cfg.output + "' for writing");
      f << body.str();
      f.flush();
      if (!f) throw std::runtime_error("write to '" + cfg.output + "' failed");
      if (sweep_for_plot) emit_plotdata(*sweep_for_plot, cfg.output + ".plotdata");
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 3;
  }
  return 0;
}

}  // namespace recoilq
