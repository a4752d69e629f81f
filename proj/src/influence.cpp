#include "recoilq/influence.hpp"

#include <cmath>

namespace recoilq {

PoleResult pole(const Mass& m, double dx, double t, double lambda, double cutoff,
                const SelfEnergyOptions& opt) {
  if (!(t > 0.0)) throw std::domain_error("pole: t must be positive");
  SelfEnergy se = (m.is_infinite() || lambda == 0.0)
                      ? (lambda == 0.0 ? SelfEnergy{} : stationary_self_energy(lambda, cutoff))
                      : self_energy(m, dx, t, lambda, cutoff, opt);
  return {cplx(0.0, -1.0) - se.value, se, 2};
}

cplx u_function(double x, double t, const Mass& m, double lambda, double cutoff,
                const SelfEnergyOptions& opt) {
  if (x < 0.0) throw std::domain_error("u_function: x must be non-negative");
  return std::exp(pole(m, x, t, lambda, cutoff, opt).z0 * t);
}

cplx stationary_u(double t, double lambda, double cutoff) {
  if (!(t > 0.0)) throw std::domain_error("stationary_u: t must be positive");
  cplx z0 = cplx(0.0, -1.0) - stationary_self_energy(lambda, cutoff).value;
  return std::exp(z0 * t);
}

}  // namespace recoilq
