#pragma once

#include "recoilq/params.hpp"
#include "recoilq/quadrature.hpp"

#include <stdexcept>

namespace recoilq {

class NumericalError : public std::runtime_error {
 public:
  NumericalError(const std::string& what, double estimate)
      : std::runtime_error(what), estimate_(estimate) {}
  double estimate() const { return estimate_; }

 private:
  double estimate_;
};

// (m/(2 pi i t))^{3/2} exp(i m dx^2 / 2t), principal branch.
cplx free_propagator(double m, double t, double dx);

// Phase factors of the centre-of-mass path integral.  cos_theta is the angle
// between the photon wavevector and the displacement.
cplx one_point_kernel(double k, double cos_theta, double s, double t, double dx, const Mass& m);
cplx two_point_kernel(double k, double cos_theta, double sr, double t, double dx, const Mass& m);
cplx memory_kernel(double k, double cos_theta, double s, double t, double dx, const Mass& m);

// Mode-sum weight.  A sharp edge at the cutoff makes the chirped s-integral
// ring, so the coupling is rolled off with exp(-(2k/cutoff)^4), which is entire
// and leaves k ~ 1 untouched to a few parts in 1e6 for cutoff = 50.
double taper(double k, double cutoff);
cplx taper(cplx k, double cutoff);

struct SelfEnergy {
  cplx value;
  double error = 0.0;  // quadrature estimate, absolute
};

struct SelfEnergyOptions {
  int per_panel = 24;
  bool estimate_error = true;
  double rel_tol = 1e-6;
};

// mu~_t(-i omega0): real part is the half decay rate, imaginary part the shift.
// The s-integral is done in closed form (Faddeeva), which is its exact
// eps -> 0 limit; the k-integral runs along a ray slightly below the real axis.
SelfEnergy self_energy(const Mass& m, double dx, double t, double lambda, double cutoff,
                       const SelfEnergyOptions& opt = {});

// Same integral with an explicit damping exp(-eps s) on the real k axis.
SelfEnergy self_energy_damped(const Mass& m, double dx, double t, double lambda, double cutoff,
                              double eps);
// Quadratic extrapolation of the damped values at eps = 0.1, 0.01, 0.001.
SelfEnergy self_energy_extrapolated(const Mass& m, double dx, double t, double lambda,
                                    double cutoff);

// Infinite mass, zero displacement: real part is lambda^2/(2 pi) times the
// taper at resonance, imaginary part from the principal-value integral.
SelfEnergy stationary_self_energy(double lambda, double cutoff);

// lambda^2 omega0 / (2 pi)
inline double stationary_half_rate(double lambda) {
  return lambda * lambda / (2.0 * 3.14159265358979323846);
}

}  // namespace recoilq
