#pragma once

#include "recoilq/reduced_dynamics.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace recoilq {

class FitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RateEstimate {
  double gamma = 0.0;
  double residual = 0.0;  // rms of the log-magnitude residuals
  double t_lo = 0.0;
  double t_hi = 0.0;
  std::size_t samples = 0;
};

// Least-squares slope of -log|y| against t over samples with t_lo <= t <= t_hi.
RateEstimate fit_decay(const std::vector<double>& t, const std::vector<double>& magnitude,
                       double t_lo, double t_hi);

enum class Component { coherence, population };

// Window [lo_frac, hi_frac] * tmax of the trajectory's parameters.
RateEstimate fit_decay(const Trajectory& tr, Component c, double lo_frac = 0.1,
                       double hi_frac = 0.9);

inline double percent_increase(double gamma, double gamma_stationary) {
  return 100.0 * (gamma - gamma_stationary) / gamma_stationary;
}

// 100 (gamma(m) - gamma_inf)/gamma_inf from fitted coherence rates.
double percent_increase(const Mass& m, const ModelParams& p, int workers = 0);

struct SweepPoint {
  Mass mstar = Mass::infinite();
  RateEstimate coh;
  RateEstimate pop;
  double pct_increase = 0.0;
  bool ok = true;
  std::size_t unconverged = 0;  // samples whose x-average did not settle
  std::string note;  // failure diagnostic or soft-check remark
};

struct SweepResult {
  ModelParams params;
  std::vector<SweepPoint> points;  // ascending mass, infinite last
  RateEstimate stationary_coh;
  RateEstimate stationary_pop;
  bool monotone = true;  // pct non-increasing in mass within kMonotoneTol
};

inline constexpr double kMonotoneTol = 1e-3;

std::vector<Mass> log_grid(double log_min, double log_max, int points);

SweepResult sweep(const std::vector<Mass>& masses, const ModelParams& p, int workers = 0);

}  // namespace recoilq
