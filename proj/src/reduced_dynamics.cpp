#include "recoilq/reduced_dynamics.hpp"

#include "recoilq/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace recoilq {

namespace {

constexpr double pi = std::numbers::pi;

// |a| t^2 is the inverse squared spread of x/t under the weight.  Above this
// the weight is so narrow in x that u is smooth across it and the average is
// taken on the ray x^2 = y e^{-i arg a}/|a| with u continued as a polynomial
// in x^2.  Below it the weight is integrated on the real axis.
constexpr double kRayThreshold = 20.0;
constexpr int kRayChebSmall = 12;  // enough once M t is large
constexpr int kRayCheb = 32;
constexpr int kRayLaguerre = 24;
constexpr int kAxisCheb = 64;
constexpr int kAxisChebMax = 512;
constexpr std::size_t kRayTail = 8;
constexpr double kXTol = 1e-6;
// above this many panels the axis route is too slow to be worth trying
constexpr double kAxisMaxPanels = 2e4;
constexpr double kAxisTail = 40.0;  // exp(-40) of the envelope is dropped
// 16-point panels agree with 24-point ones to ~1e-11 relative (see tests)
constexpr int kHotPanel = 16;

XAverage ray_sum(const ChebSeries& P, const cplx& rot) {
  static const Rule lag = gauss_laguerre(kRayLaguerre, 0.5);
  XAverage out;
  for (std::size_t i = 0; i < lag.x.size(); ++i) {
    cplx yr = lag.x[i] * rot;
    cplx pu = P(yr);
    out.coherence += lag.w[i] * pu;
    out.population += lag.w[i] * pu * P.reflected(yr);
  }
  out.coherence *= 2.0 / std::sqrt(pi);
  out.population *= 2.0 / std::sqrt(pi);
  out.ray = true;
  return out;
}

XAverage ray_average(const GaussianWeight& g, const UFunc& u) {
  const double mod = std::abs(g.a);
  const cplx rot = std::polar(1.0, -std::arg(g.a)) / mod;
  const double Y = gauss_laguerre(kRayLaguerre, 0.5).x.back() / mod;

  auto fit = [&](int n) {
    auto y = ChebSeries::nodes(n, 0.0, Y);
    std::vector<cplx> f(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) f[i] = u(std::sqrt(y[i]));
    return ChebSeries(std::move(f), 0.0, Y, 1e-13);
  };
  ChebSeries P = fit(kRayChebSmall);
  if (P.size() + 2 <= static_cast<std::size_t>(kRayChebSmall)) {
    XAverage out = ray_sum(P, rot);
    out.nodes = kRayChebSmall;
    return out;
  }
  P = fit(kRayCheb);
  XAverage out = ray_sum(P, rot);
  out.nodes = kRayChebSmall + kRayCheb;
  // the tail of the series is what gets amplified off the real axis, so
  // dropping it is a fair measure of what the fit has not resolved
  if (P.size() <= kRayTail) return out;
  XAverage cut = ray_sum(P.truncated(P.size() - kRayTail), rot);
  out.error = std::max(std::abs(cut.coherence - out.coherence),
                       std::abs(cut.population - out.population));
  out.converged = out.error < kXTol;
  if (out.converged) return out;
  // unresolved: u is rough on the scale of the weight.  Fall back to the
  // truncation length whose neighbours agree best, which keeps the noisy
  // tail from being amplified.
  XAverage prev = ray_sum(P.truncated(kRayTail), rot);
  for (std::size_t n = 2 * kRayTail; n <= P.size(); n += kRayTail / 2) {
    XAverage cur = ray_sum(P.truncated(n), rot);
    double d = std::max(std::abs(cur.coherence - prev.coherence),
                        std::abs(cur.population - prev.population));
    if (d < out.error) {
      out = cur;
      out.error = d;
    }
    prev = cur;
  }
  out.nodes = kRayChebSmall + kRayCheb;
  out.converged = out.error < kXTol;
  return out;
}

XAverage axis_once(const GaussianWeight& g, const UFunc& u, int n) {
  const double xm = std::sqrt(kAxisTail / g.a.real());
  auto xs = ChebSeries::nodes(n, 0.0, xm);
  std::vector<cplx> f(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) f[i] = u(xs[i]);
  ChebSeries P(std::move(f), 0.0, xm);

  // panels short enough that the Gaussian phase turns by at most ~1 rad
  const int npan = 8 + static_cast<int>(std::ceil(std::abs(g.a.imag()) * xm * xm));
  std::vector<double> edges(npan + 1);
  for (int i = 0; i <= npan; ++i) edges[i] = xm * i / npan;
  Rule r = composite_rule(edges, 16);

  XAverage out;
  for (std::size_t i = 0; i < r.x.size(); ++i) {
    double x = r.x[i];
    cplx w = r.w[i] * x * x * std::exp(-g.a * x * x);
    cplx pu = P(x);
    out.coherence += w * pu;
    out.population += w * std::norm(pu);
  }
  out.coherence *= g.prefactor;
  out.population *= g.prefactor;
  out.nodes = n;
  return out;
}

XAverage axis_average(const GaussianWeight& g, const UFunc& u) {
  XAverage prev = axis_once(g, u, kAxisCheb);
  int used = prev.nodes;
  for (int n = 2 * kAxisCheb; n <= kAxisChebMax; n *= 2) {
    XAverage cur = axis_once(g, u, n);
    used += n;
    double d = std::max(std::abs(cur.coherence - prev.coherence),
                        std::abs(cur.population - prev.population));
    prev = cur;
    prev.error = d;
    if (d < kXTol) {
      prev.nodes = used;
      return prev;
    }
  }
  prev.nodes = used;
  prev.converged = false;
  return prev;
}

}  // namespace

GaussianWeight gaussian_weight(double t, double m, double sigma) {
  if (!(t > 0.0)) throw std::domain_error("gaussian_weight: t must be positive");
  if (!(m > 0.0) || !std::isfinite(m)) throw std::domain_error("gaussian_weight: mass must be finite and positive");
  double s2 = sigma * sigma;
  cplx a = m * m * s2 / cplx(t * t, 2.0 * m * s2 * t);
  return {a, 4.0 / std::sqrt(pi) * std::pow(a, 1.5)};
}

XAverage x_average(double t, double m, double sigma, const UFunc& u, XRoute route) {
  GaussianWeight g = gaussian_weight(t, m, sigma);
  if (route == XRoute::ray) return ray_average(g, u);
  if (route == XRoute::axis) return axis_average(g, u);
  if (std::abs(g.a) * t * t >= kRayThreshold) {
    XAverage r = ray_average(g, u);
    if (r.converged) return r;
    if (std::abs(g.a.imag() / g.a.real()) * kAxisTail > kAxisMaxPanels) return r;
    XAverage ax = axis_average(g, u);
    ax.nodes += r.nodes;
    return ax.error <= r.error ? ax : r;
  }
  return axis_average(g, u);
}

XAverage evolution_factors(double t, const ModelParams& p) {
  if (p.mstar.is_infinite()) {
    cplx u = stationary_u(t, p.lambda, p.cutoff);
    return {u, cplx(std::norm(u), 0.0), false, 0};
  }
  const double m = p.mstar.value();
  SelfEnergyOptions opt;
  opt.per_panel = kHotPanel;
  opt.estimate_error = false;
  return x_average(t, m, p.sigma,
                   [&](double x) { return u_function(x, t, p.mstar, p.lambda, p.cutoff, opt); });
}

cplx coherence(double t, const ModelParams& p) { return evolution_factors(t, p).coherence; }

double population(double t, const ModelParams& p) {
  return evolution_factors(t, p).population.real();
}

std::vector<double> time_grid(const ModelParams& p) {
  std::vector<double> t(p.nsamples);
  for (int i = 0; i < p.nsamples; ++i) t[i] = p.tmax * (i + 1) / p.nsamples;
  return t;
}

std::size_t Trajectory::unconverged() const {
  return std::count(converged.begin(), converged.end(), 0);
}

Trajectory evolve(const ModelParams& params, int workers) {
  ModelParams p = validate(params);
  Trajectory tr;
  tr.params = p;
  tr.times = time_grid(p);
  tr.rho10.resize(tr.times.size());
  tr.rho11.resize(tr.times.size());
  tr.converged.resize(tr.times.size());
  parallel_for(tr.times.size(), worker_count(workers), [&](std::size_t i) {
    XAverage f = evolution_factors(tr.times[i], p);
    tr.rho10[i] = f.coherence;
    tr.rho11[i] = f.population.real();
    tr.converged[i] = f.converged;
  });
  return tr;
}

}  // namespace recoilq
