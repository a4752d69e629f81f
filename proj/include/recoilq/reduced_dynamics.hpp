#pragma once

#include "recoilq/influence.hpp"

#include <functional>
#include <vector>

namespace recoilq {

struct GaussianWeight {
  cplx a;          // M^2 s^2 / (t^2 + 2 i M s^2 t)
  cplx prefactor;  // (4/sqrt(pi)) a^{3/2}
};

GaussianWeight gaussian_weight(double t, double m, double sigma);

using UFunc = std::function<cplx(double x)>;

struct XAverage {
  cplx coherence;   // <u>
  cplx population;  // <conj(u) u>
  bool ray = false; // true when the integral was taken on the steepest-descent ray
  int nodes = 0;    // number of u evaluations
  // false when neither route settled; only happens at t of order 1 or less,
  // where the weight reaches x/t > 1 and u is rough on the scale of the weight
  bool converged = true;
  double error = 0.0;  // estimate, absolute
};

enum class XRoute { automatic, axis, ray };

// Radial average of u against the Gaussian weight, and of conj(u) u.
// u only has to be supplied for real x >= 0.
XAverage x_average(double t, double m, double sigma, const UFunc& u,
                   XRoute route = XRoute::automatic);

cplx coherence(double t, const ModelParams& p);
double population(double t, const ModelParams& p);
// Both at once, sharing the u evaluations.
XAverage evolution_factors(double t, const ModelParams& p);

struct Trajectory {
  std::vector<double> times;
  std::vector<cplx> rho10;
  std::vector<double> rho11;
  std::vector<char> converged;  // per sample, see XAverage
  ModelParams params;
  std::size_t unconverged() const;
};

// Samples at t_i = tmax i / nsamples, i = 1..nsamples.
std::vector<double> time_grid(const ModelParams& p);
Trajectory evolve(const ModelParams& p, int workers = 0);

}  // namespace recoilq
