#include "recoilq/oracle.hpp"

#include "recoilq/parallel.hpp"

#include <boost/numeric/odeint.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace recoilq {

namespace odeint = boost::numeric::odeint;
using State = std::vector<cplx>;

namespace {

constexpr double pi = std::numbers::pi;

std::vector<double> radial_edges(double cutoff) {
  std::vector<double> e;
  for (double x : {0.0, 0.5, 0.8, 0.95, 1.0, 1.05, 1.2, 1.5, 2.5, 5.0, 10.0, 20.0, 35.0})
    if (x < cutoff) e.push_back(x);
  if (cutoff - e.back() > 0.5 * e.back() && e.back() >= 5.0) {
    double x = e.back();
    while (x * 1.6 < cutoff) {
      x *= 1.6;
      e.push_back(x);
    }
  }
  e.push_back(cutoff);
  return e;
}

}  // namespace

ModeGrid build_grid(int nk, int ntheta, double cutoff, double lambda) {
  if (nk < 16) throw std::invalid_argument("build_grid: nk must be at least 16");
  if (ntheta < 8) throw std::invalid_argument("build_grid: ntheta must be at least 8");
  if (!(cutoff > 1.0)) throw std::invalid_argument("build_grid: cutoff must exceed omega0");

  auto edges = radial_edges(cutoff);
  const int npan = static_cast<int>(edges.size()) - 1;
  if (nk < 2 * npan) throw std::invalid_argument("build_grid: nk too small for the panel layout");

  // even share, remainder to the panels nearest resonance
  std::vector<int> per(npan, nk / npan);
  std::vector<int> order(npan);
  for (int i = 0; i < npan; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    auto d = [&](int i) { return std::abs(0.5 * (edges[i] + edges[i + 1]) - 1.0); };
    return d(a) < d(b);
  });
  for (int r = 0; r < nk % npan; ++r) per[order[r]] += 1;

  ModeGrid g;
  g.cutoff = cutoff;
  g.lambda = lambda;
  for (int i = 0; i < npan; ++i) {
    const Rule& gl = gauss_legendre(per[i]);
    double h = 0.5 * (edges[i + 1] - edges[i]), m = 0.5 * (edges[i + 1] + edges[i]);
    for (int j = 0; j < per[i]; ++j) {
      g.k.push_back(m + h * gl.x[j]);
      g.wk.push_back(h * gl.w[j]);
    }
  }
  const Rule& gc = gauss_legendre(ntheta);
  g.c = gc.x;
  g.wc = gc.w;
  for (std::size_t i = 0; i < g.k.size(); ++i) {
    double k = g.k[i];
    double s = taper(k, cutoff);
    for (int j = 0; j < ntheta; ++j)
      g.g.push_back(lambda * std::sqrt(s * k * g.wk[i] * g.wc[j] / (4.0 * pi * pi)));
  }
  return g;
}

SectorTrajectory evolve_sector(const ModeGrid& grid, const ModelParams& params,
                               const std::vector<double>& times_in, const SectorOptions& opt) {
  ModelParams p = validate(params);
  if (times_in.empty()) throw std::invalid_argument("evolve_sector: no output times");
  if (opt.np < 1) throw std::invalid_argument("evolve_sector: np must be at least 1");
  if (!std::is_sorted(times_in.begin(), times_in.end()) || times_in.front() < 0.0)
    throw std::invalid_argument("evolve_sector: times must be non-negative and sorted");

  SectorTrajectory out;
  out.params = p;
  out.times = times_in;
  if (out.times.front() > 0.0) out.times.insert(out.times.begin(), 0.0);

  // |p| nodes: int p^2 exp(-p^2 s^2) dp becomes a Laguerre rule in y = p^2 s^2
  const Rule lag = gauss_laguerre(opt.np, 0.5);
  double wsum = 0.0;
  for (double w : lag.w) wsum += w;
  const double h = p.mstar.inv2m();
  for (int i = 0; i < opt.np; ++i) {
    double pp = std::sqrt(lag.x[i]) / p.sigma;
    out.p.push_back(pp);
    out.wp.push_back(lag.w[i] / wsum);
    out.ea.push_back(h * pp * pp);
  }

  const std::size_t nm = grid.modes();
  const std::size_t nc = grid.c.size();
  out.a.assign(opt.np, std::vector<cplx>(out.times.size()));
  out.norm.assign(opt.np, std::vector<double>(out.times.size()));
  std::vector<double> drift(opt.np, 0.0);

  // without recoil every packet node has the same dynamics
  const std::size_t distinct = p.mstar.is_infinite() ? 1 : opt.np;
  parallel_for(distinct, worker_count(opt.workers), [&](std::size_t n) {
    const double pp = out.p[n];
    // energies relative to the excited level
    std::vector<double> eb(nm);
    double emax = out.ea[n];
    for (std::size_t i = 0; i < grid.k.size(); ++i) {
      for (std::size_t j = 0; j < nc; ++j) {
        double k = grid.k[i], c = grid.c[j];
        double e = k - 1.0 + h * (pp * pp - 2.0 * pp * k * c + k * k);
        eb[i * nc + j] = e;
        emax = std::max(emax, std::abs(e));
      }
    }
    const double ea = out.ea[n];
    auto rhs = [&](const State& x, State& dx, double) {
      cplx s{};
      for (std::size_t m = 0; m < nm; ++m) {
        s += grid.g[m] * x[m + 1];
        dx[m + 1] = cplx(0.0, -1.0) * (eb[m] * x[m + 1] + grid.g[m] * x[0]);
      }
      dx[0] = cplx(0.0, -1.0) * (ea * x[0] + s);
    };

    State x(nm + 1, cplx{});
    x[0] = 1.0;
    std::size_t ti = 0;
    auto obs = [&](const State& y, double) {
      double nrm = 0.0;
      for (const auto& v : y) nrm += std::norm(v);
      out.a[n][ti] = y[0];
      out.norm[n][ti] = nrm;
      drift[n] = std::max(drift[n], std::abs(nrm - 1.0));
      ++ti;
    };
    auto stepper = odeint::make_controlled(opt.abs_tol, opt.rel_tol,
                                           odeint::runge_kutta_dopri5<State>());
    try {
      odeint::integrate_times(stepper, rhs, x, out.times.begin(), out.times.end(), 0.05 / emax,
                              obs, odeint::max_step_checker(1000000));
    } catch (const std::exception& e) {
      throw NumericalError(std::string("evolve_sector: integrator failed: ") + e.what(),
                           opt.rel_tol);
    }
  });
  for (std::size_t n = distinct; n < static_cast<std::size_t>(opt.np); ++n) {
    out.a[n] = out.a[0];
    out.norm[n] = out.norm[0];
    drift[n] = drift[0];
  }
  out.max_norm_drift = *std::max_element(drift.begin(), drift.end());
  return out;
}

Trajectory reduce(const SectorTrajectory& s) {
  if (s.a.size() != s.wp.size() || s.ea.size() != s.wp.size())
    throw std::invalid_argument("reduce: grid mismatch");
  Trajectory tr;
  tr.params = s.params;
  for (std::size_t ti = 0; ti < s.times.size(); ++ti) {
    if (s.times[ti] == 0.0) continue;
    double t = s.times[ti];
    cplx r10{};
    double r11 = 0.0;
    for (std::size_t n = 0; n < s.wp.size(); ++n) {
      if (s.a[n].size() != s.times.size()) throw std::invalid_argument("reduce: grid mismatch");
      r10 += s.wp[n] * s.a[n][ti] * std::polar(1.0, s.ea[n] * t);
      r11 += s.wp[n] * std::norm(s.a[n][ti]);
    }
    tr.times.push_back(t);
    tr.rho10.push_back(r10);
    tr.rho11.push_back(r11);
    tr.converged.push_back(1);
  }
  return tr;
}

}  // namespace recoilq
