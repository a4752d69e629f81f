#pragma once

#include "recoilq/oracle.hpp"
#include "recoilq/rates.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace recoilq {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Mode { trajectory, sweep, oracle_compare };
enum class Format { csv, json };

struct RunConfig {
  Mode mode = Mode::sweep;
  ModelParams params;             // lambda, sigma, cutoff, tmax, nsamples
  std::optional<Mass> mstar;      // single mass; required for trajectory and oracle-compare
  double log_min = 1.0;
  double log_max = 8.0;
  int points = 8;
  std::string output;             // empty or "-" means stdout
  Format format = Format::csv;
  std::uint64_t seed = 0;         // reserved, nothing is random
  int workers = 0;
};

// Keys accepted in config files; the same names as the long flags.
const std::vector<std::string>& config_keys();

// Sets one key.  Throws ConfigError naming the key on unknown keys or bad values.
void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value);

// Flat "key = value" text, '#' starts a comment.
RunConfig config_from_text(const std::string& text, RunConfig base = {});

// Command line: --config FILE is read first, then every flag overrides it.
RunConfig parse_config(int argc, const char* const* argv);

// Shortest decimal that reads back to the same double.
std::string format_double(double x);
std::string format_mass(const Mass& m);

void write_sweep(std::ostream& os, const SweepResult& r, Format f);
void write_trajectory(std::ostream& os, const Trajectory& tr, Format f);
void write_comparison(std::ostream& os, const Trajectory& pole, const Trajectory& oracle, Format f);

// Two columns: log10 mstar and pct_increase, finite masses only.
void emit_plotdata(const SweepResult& r, const std::string& path);
void emit_plotdata(const SweepResult& r, std::ostream& os);

// Executes the configured mode.  Returns the process exit status; diagnostics
// go to err.
int run(const RunConfig& cfg, std::ostream& err);

}  // namespace recoilq
