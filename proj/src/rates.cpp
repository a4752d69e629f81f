#include "recoilq/rates.hpp"

#include "recoilq/parallel.hpp"

#include <algorithm>
#include <cmath>

namespace recoilq {

RateEstimate fit_decay(const std::vector<double>& t, const std::vector<double>& magnitude,
                       double t_lo, double t_hi) {
  if (t.size() != magnitude.size()) throw FitError("fit_decay: length mismatch");
  if (!(t_lo < t_hi)) throw FitError("fit_decay: empty window");
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] < t_lo || t[i] > t_hi) continue;
    if (!(std::abs(magnitude[i]) > 1e-12)) throw FitError("fit_decay: magnitude underflow");
    xs.push_back(t[i]);
    ys.push_back(-std::log(std::abs(magnitude[i])));
  }
  const std::size_t n = xs.size();
  if (n < 8) throw FitError("fit_decay: fewer than 8 samples in window");

  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  RateEstimate r;
  r.gamma = sxy / sxx;
  double ss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double e = ys[i] - (my + r.gamma * (xs[i] - mx));
    ss += e * e;
  }
  r.residual = std::sqrt(ss / n);
  r.t_lo = t_lo;
  r.t_hi = t_hi;
  r.samples = n;
  return r;
}

RateEstimate fit_decay(const Trajectory& tr, Component c, double lo_frac, double hi_frac) {
  std::vector<double> mag(tr.times.size());
  for (std::size_t i = 0; i < mag.size(); ++i)
    mag[i] = c == Component::coherence ? std::abs(tr.rho10[i]) : tr.rho11[i];
  return fit_decay(tr.times, mag, lo_frac * tr.params.tmax, hi_frac * tr.params.tmax);
}

namespace {

Trajectory stationary_trajectory(const ModelParams& p) {
  ModelParams q = p;
  q.mstar = Mass::infinite();
  return evolve(q, 1);
}

}  // namespace

double percent_increase(const Mass& m, const ModelParams& p, int workers) {
  if (m.is_infinite()) return 0.0;
  ModelParams q = p;
  q.mstar = m;
  double g = fit_decay(evolve(q, workers), Component::coherence).gamma;
  double g0 = fit_decay(stationary_trajectory(p), Component::coherence).gamma;
  return percent_increase(g, g0);
}

std::vector<Mass> log_grid(double log_min, double log_max, int points) {
  if (points < 1) throw std::invalid_argument("mstar grid needs at least one point");
  if (points > 1 && !(log_max > log_min)) throw std::invalid_argument("mstar grid: log max must exceed log min");
  std::vector<Mass> out;
  for (int i = 0; i < points; ++i) {
    double e = points == 1 ? log_min : log_min + (log_max - log_min) * i / (points - 1);
    out.push_back(Mass::finite(std::pow(10.0, e)));
  }
  return out;
}

SweepResult sweep(const std::vector<Mass>& masses_in, const ModelParams& params, int workers) {
  if (masses_in.empty()) throw std::invalid_argument("sweep: empty mass list");
  ModelParams p = validate(params);

  std::vector<Mass> masses = masses_in;
  for (const auto& m : masses)
    if (!m.is_infinite() && !(m.value() > 0.0)) throw std::invalid_argument("sweep: mstar must be positive");
  std::stable_sort(masses.begin(), masses.end(), [](const Mass& a, const Mass& b) {
    if (a.is_infinite() || b.is_infinite()) return !a.is_infinite() && b.is_infinite();
    return a.value() < b.value();
  });

  SweepResult res;
  res.params = p;
  Trajectory st = stationary_trajectory(p);
  res.stationary_coh = fit_decay(st, Component::coherence);
  res.stationary_pop = fit_decay(st, Component::population);

  // one task per (mass, time) so all workers stay busy on a short list
  const auto times = time_grid(p);
  const std::size_t nt = times.size();
  std::vector<Trajectory> trs(masses.size());
  std::vector<std::string> errs(masses.size() * nt);
  for (std::size_t j = 0; j < masses.size(); ++j) {
    trs[j].params = p;
    trs[j].params.mstar = masses[j];
    trs[j].times = times;
    trs[j].rho10.resize(nt);
    trs[j].rho11.resize(nt);
    trs[j].converged.resize(nt);
  }
  parallel_for(masses.size() * nt, worker_count(workers), [&](std::size_t task) {
    std::size_t j = task / nt, i = task % nt;
    try {
      XAverage f = evolution_factors(times[i], trs[j].params);
      trs[j].rho10[i] = f.coherence;
      trs[j].rho11[i] = f.population.real();
      trs[j].converged[i] = f.converged;
    } catch (const std::exception& e) {
      errs[task] = e.what();
    }
  });

  for (std::size_t j = 0; j < masses.size(); ++j) {
    SweepPoint pt;
    pt.mstar = masses[j];
    pt.unconverged = trs[j].unconverged();
    for (std::size_t i = 0; i < nt && pt.ok; ++i) {
      if (!errs[j * nt + i].empty()) {
        pt.ok = false;
        pt.note = "t=" + std::to_string(times[i]) + ": " + errs[j * nt + i];
      }
    }
    if (pt.ok) {
      try {
        pt.coh = fit_decay(trs[j], Component::coherence);
        pt.pop = fit_decay(trs[j], Component::population);
        pt.pct_increase =
            masses[j].is_infinite() ? 0.0 : percent_increase(pt.coh.gamma, res.stationary_coh.gamma);
      } catch (const std::exception& e) {
        pt.ok = false;
        pt.note = e.what();
      }
    }
    res.points.push_back(pt);
  }

  for (std::size_t j = 1; j < res.points.size(); ++j) {
    const auto& a = res.points[j - 1];
    auto& b = res.points[j];
    if (a.ok && b.ok && b.pct_increase > a.pct_increase + kMonotoneTol) {
      res.monotone = false;
      if (b.note.empty()) b.note = "pct_increase rises with mass";
    }
  }
  return res;
}

}  // namespace recoilq
