#pragma once

#include "recoilq/reduced_dynamics.hpp"

#include <vector>

namespace recoilq {

// Discretised photon modes.  Node (i, j) has |k| = k[i], cos theta = c[j]
// (angle to the initial atom momentum) and coupling g[i * c.size() + j], which
// already carries the quadrature weight: sum_j g_j^2 f(k_j, c_j) approximates
// lambda^2/(4 pi^2) int k dk S(k) int dc f.
struct ModeGrid {
  std::vector<double> k, wk;
  std::vector<double> c, wc;
  std::vector<double> g;
  double cutoff = 0.0;
  double lambda = 0.0;
  std::size_t modes() const { return g.size(); }
};

ModeGrid build_grid(int nk, int ntheta, double cutoff, double lambda);

struct SectorOptions {
  int np = 16;           // |p| nodes of the initial packet
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  int workers = 0;
};

struct SectorTrajectory {
  ModelParams params;
  std::vector<double> times;            // includes t = 0
  std::vector<double> p, wp;            // packet nodes, weights sum to 1
  std::vector<double> ea;               // p^2/2M per node
  std::vector<std::vector<cplx>> a;     // a[node][time], excited amplitude
  std::vector<std::vector<double>> norm;  // total sector norm per node and time
  double max_norm_drift = 0.0;
};

// Single-excitation dynamics per initial |p|: the excited state couples to
// ground + photon k with atom momentum p - k.
SectorTrajectory evolve_sector(const ModeGrid& grid, const ModelParams& p,
                               const std::vector<double>& times, const SectorOptions& opt = {});

// rho11 = sum_p w |a|^2, rho10 = sum_p w a exp(i p^2 t / 2M).
// The t = 0 sample is dropped so times line up with time_grid().
Trajectory reduce(const SectorTrajectory& s);

}  // namespace recoilq
