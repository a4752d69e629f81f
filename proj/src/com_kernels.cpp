#include "recoilq/com_kernels.hpp"

#include "recoilq/faddeeva.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace recoilq {

namespace {

constexpr double pi = std::numbers::pi;
const cplx I1(0.0, 1.0);

void require_time(double t, const char* who) {
  if (!(t > 0.0)) throw std::domain_error(std::string(who) + ": t must be positive");
}

void require_interval(double s, double t, const char* who) {
  require_time(t, who);
  if (s < 0.0 || s > t) throw std::domain_error(std::string(who) + ": time argument outside [0, t]");
}

// recoil phase -(1/2M) (s(t-s)/t) k^2
double recoil(double k, double s, double t, const Mass& m) {
  return -m.inv2m() * (s * (t - s) / t) * k * k;
}

// Ray angle below the real k axis.  exp(-(2k/L)^4) still decays along it
// because cos(4 theta) > 0.
constexpr double kTheta = 0.25;
constexpr int kCos = 16;

std::vector<double> ray_edges(double cutoff) {
  double tau_max = 0.5 * cutoff * std::pow(40.0 / std::cos(4.0 * kTheta), 0.25);
  std::vector<double> e;
  for (double x : {0.0, 0.3, 0.7, 0.9, 1.1, 1.4, 2.0, 3.0})
    if (x < tau_max) e.push_back(x);
  double x = e.back();
  while (x * 1.5 < tau_max) {
    x *= 1.5;
    e.push_back(x);
  }
  e.push_back(tau_max);
  return e;
}

// int_0^inf exp(-A s + i beta s^2) ds with beta = k^2/(2Mt), written as
// sqrt(pi) r w(i A r), r = sqrt(2Mt) e^{i pi/4} / (2k).  q = r k.
cplx laplace(cplx k, cplx A, const Mass& m, cplx q) {
  if (m.is_infinite()) return 1.0 / A;
  cplx r = q / k;
  return std::sqrt(pi) * r * faddeeva(I1 * A * r);
}

cplx chirp_scale(const Mass& m, double t) {
  if (m.is_infinite()) return 0.0;
  return 0.5 * std::sqrt(2.0 * m.value() * t) * std::polar(1.0, 0.25 * pi);
}

// int_0^inf k dk S(k) int dc I(k, c), k on the ray
cplx ray_integral(const Mass& m, double v, double t, double cutoff, const Rule& rule) {
  const cplx e = std::polar(1.0, -kTheta);
  const cplx q = chirp_scale(m, t);
  const Rule& gc = gauss_legendre(kCos);
  const double h = m.inv2m();
  cplx acc{};
  for (std::size_t i = 0; i < rule.x.size(); ++i) {
    cplx k = rule.x[i] * e;
    cplx base = k - 1.0 + h * k * k;
    cplx inner{};
    if (v == 0.0) {
      inner = 2.0 * laplace(k, I1 * base, m, q);
    } else {
      for (int j = 0; j < kCos; ++j)
        inner += gc.w[j] * laplace(k, I1 * (base + k * v * gc.x[j]), m, q);
    }
    acc += rule.w[i] * k * taper(k, cutoff) * inner;
  }
  return acc * e;
}

double prefactor(double lambda) { return lambda * lambda / (4.0 * pi * pi); }

}  // namespace

cplx free_propagator(double m, double t, double dx) {
  require_time(t, "free_propagator");
  if (!(m > 0.0) || !std::isfinite(m)) throw std::domain_error("free_propagator: mass must be finite and positive");
  cplx base = m / (2.0 * pi * I1 * t);
  return std::pow(base, 1.5) * std::exp(I1 * (m * dx * dx / (2.0 * t)));
}

cplx one_point_kernel(double k, double cos_theta, double s, double t, double dx, const Mass& m) {
  require_interval(s, t, "one_point_kernel");
  double ph = (s / t) * k * dx * cos_theta + recoil(k, s, t, m);
  return std::polar(1.0, ph);
}

cplx two_point_kernel(double k, double cos_theta, double sr, double t, double dx, const Mass& m) {
  require_interval(sr, t, "two_point_kernel");
  double ph = -(sr / t) * k * dx * cos_theta + recoil(k, sr, t, m);
  return std::polar(1.0, ph);
}

cplx memory_kernel(double k, double cos_theta, double s, double t, double dx, const Mass& m) {
  require_interval(s, t, "memory_kernel");
  double ph = -k * s - (s / t) * k * dx * cos_theta + recoil(k, s, t, m);
  return std::polar(1.0, ph);
}

double taper(double k, double cutoff) {
  double y = 2.0 * k / cutoff;
  y *= y;
  return std::exp(-y * y);
}

cplx taper(cplx k, double cutoff) {
  cplx y = 2.0 * k / cutoff;
  y *= y;
  return std::exp(-y * y);
}

SelfEnergy self_energy(const Mass& m, double dx, double t, double lambda, double cutoff,
                       const SelfEnergyOptions& opt) {
  require_time(t, "self_energy");
  if (!(cutoff > 1.0)) throw std::domain_error("self_energy: cutoff must exceed omega0");
  if (lambda == 0.0) return {};
  const double v = dx / t;
  auto edges = ray_edges(cutoff);
  cplx val = prefactor(lambda) * ray_integral(m, v, t, cutoff, composite_rule(edges, opt.per_panel));
  SelfEnergy out{val, 0.0};
  if (opt.estimate_error) {
    cplx low = prefactor(lambda) *
               ray_integral(m, v, t, cutoff, composite_rule(edges, std::max(4, opt.per_panel * 2 / 3)));
    out.error = std::abs(val - low);
    double scale = std::max(std::abs(val), prefactor(lambda) * 1e-8);
    if (!std::isfinite(out.error) || out.error > opt.rel_tol * scale)
      throw NumericalError("self_energy: k quadrature did not converge", out.error);
  }
  if (!std::isfinite(val.real()) || !std::isfinite(val.imag()))
    throw NumericalError("self_energy: non-finite result", INFINITY);
  return out;
}

SelfEnergy self_energy_damped(const Mass& m, double dx, double t, double lambda, double cutoff,
                              double eps) {
  require_time(t, "self_energy_damped");
  if (!(eps > 0.0)) throw std::domain_error("self_energy_damped: eps must be positive");
  if (lambda == 0.0) return {};
  const double v = dx / t;
  const double h = m.inv2m();
  const cplx q = chirp_scale(m, t);
  const double kmax = 0.5 * cutoff * std::pow(40.0, 0.25);
  const Rule& gc = gauss_legendre(kCos);

  cplx total{};
  for (int j = 0; j < kCos; ++j) {
    double b = 1.0 + v * gc.x[j];
    // resonance: b k + h k^2 = 1
    double kr = h > 0.0 ? 2.0 / (b + std::sqrt(b * b + 4.0 * h)) : (b > 0.0 ? 1.0 / b : -1.0);
    std::vector<double> edges{0.0, kmax};
    if (kr > 0.0 && kr < kmax) {
      edges.push_back(kr);
      for (double d = 0.25 * eps; d < kmax; d *= 2.0) {
        if (kr - d > 0.0) edges.push_back(kr - d);
        if (kr + d < kmax) edges.push_back(kr + d);
      }
    } else {
      for (double x = 0.5; x < kmax; x *= 2.0) edges.push_back(x);
    }
    std::sort(edges.begin(), edges.end());
    // Above resonance the chirp has a stationary point in s, which leaves an
    // undamped phase alpha^2 M t / 2k^2 on the real k axis.  Keep panels
    // below ~8 rad of it.
    if (h > 0.0) {
      auto phase = [&](double k) {
        double al = b * k - 1.0 + h * k * k;
        return al > 0.0 ? al * al * t / (4.0 * h * k * k) : 0.0;
      };
      std::vector<double> fine{edges.front()};
      for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        double lo = edges[i], hi = edges[i + 1];
        int n = 1 + static_cast<int>(std::abs(phase(hi) - phase(lo)) / 8.0);
        for (int s = 1; s <= n; ++s) fine.push_back(lo + (hi - lo) * s / n);
      }
      edges.swap(fine);
    }
    Rule r = composite_rule(edges, 16);
    cplx acc{};
    for (std::size_t i = 0; i < r.x.size(); ++i) {
      double k = r.x[i];
      double alpha = b * k - 1.0 + h * k * k;
      acc += r.w[i] * k * taper(k, cutoff) * laplace(cplx(k), cplx(eps, alpha), m, q);
    }
    total += gc.w[j] * acc;
  }
  return {prefactor(lambda) * total, 0.0};
}

SelfEnergy self_energy_extrapolated(const Mass& m, double dx, double t, double lambda,
                                    double cutoff) {
  const double e[3] = {1e-1, 1e-2, 1e-3};
  cplx f[3];
  for (int i = 0; i < 3; ++i) f[i] = self_energy_damped(m, dx, t, lambda, cutoff, e[i]).value;
  cplx quad{};
  for (int i = 0; i < 3; ++i) {
    double l = 1.0;
    for (int j = 0; j < 3; ++j)
      if (j != i) l *= (0.0 - e[j]) / (e[i] - e[j]);
    quad += l * f[i];
  }
  cplx lin = f[2] + (f[2] - f[1]) * (0.0 - e[2]) / (e[2] - e[1]);
  return {quad, std::abs(quad - lin)};
}

SelfEnergy stationary_self_energy(double lambda, double cutoff) {
  if (!(cutoff > 1.0)) throw std::domain_error("stationary_self_energy: cutoff must exceed omega0");
  if (lambda == 0.0) return {};
  SelfEnergy s = self_energy(Mass::infinite(), 0.0, 1.0, lambda, cutoff);
  s.value.real(stationary_half_rate(lambda) * taper(1.0, cutoff));
  return s;
}

}  // namespace recoilq
