#pragma once

#include "recoilq/com_kernels.hpp"

namespace recoilq {

struct PoleResult {
  cplx z0;
  SelfEnergy self_energy;
  int order = 2;  // accurate through lambda^2
};

// z0 = -i omega0 - mu~_t(-i omega0)
PoleResult pole(const Mass& m, double dx, double t, double lambda, double cutoff,
                const SelfEnergyOptions& opt = {});

// exp(z0(x, t) t)
cplx u_function(double x, double t, const Mass& m, double lambda, double cutoff,
                const SelfEnergyOptions& opt = {});

// Infinite-mass u, independent of x.
cplx stationary_u(double t, double lambda, double cutoff);

}  // namespace recoilq
