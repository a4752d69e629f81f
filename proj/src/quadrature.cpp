#include "recoilq/quadrature.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace recoilq {

namespace {

Rule legendre(int n) {
  Rule r;
  r.x.resize(n);
  r.w.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
      }
      dp = n * (x * p0 - p1) / (x * x - 1.0);
      double dx = p0 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    r.x[i] = -x;
    r.x[n - 1 - i] = x;
    r.w[i] = r.w[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return r;
}

}  // namespace

const Rule& gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: n must be positive");
  static std::mutex mu;
  static std::map<int, Rule> cache;
  std::lock_guard lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, legendre(n)).first;
  return it->second;
}

Rule composite_rule(const std::vector<double>& edges, int per_panel) {
  const Rule& g = gauss_legendre(per_panel);
  Rule r;
  for (std::size_t p = 0; p + 1 < edges.size(); ++p) {
    double h = 0.5 * (edges[p + 1] - edges[p]);
    double m = 0.5 * (edges[p + 1] + edges[p]);
    for (int i = 0; i < per_panel; ++i) {
      r.x.push_back(m + h * g.x[i]);
      r.w.push_back(h * g.w[i]);
    }
  }
  return r;
}

// Golub-Welsch for the starting nodes, then Newton on the three-term
// recurrence so the nodes are good to the last bit.
Rule gauss_laguerre(int n, double alpha) {
  if (n < 1 || alpha <= -1.0) throw std::invalid_argument("gauss_laguerre: bad arguments");
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    J(i, i) = 2.0 * i + alpha + 1.0;
    if (i + 1 < n) J(i, i + 1) = J(i + 1, i) = -std::sqrt((i + 1.0) * (i + 1.0 + alpha));
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J, Eigen::EigenvaluesOnly);

  auto eval = [&](double x, int deg, double& p, double& pm1) {
    pm1 = 0.0;
    p = 1.0;
    for (int j = 0; j < deg; ++j) {
      double p2 = pm1;
      pm1 = p;
      p = ((2.0 * j + 1.0 + alpha - x) * pm1 - (j + alpha) * p2) / (j + 1.0);
    }
  };

  Rule r;
  r.x.resize(n);
  r.w.resize(n);
  double lg = std::lgamma(n + alpha + 1.0) - std::lgamma(n + 1.0);
  for (int i = 0; i < n; ++i) {
    double x = es.eigenvalues()[i];
    for (int it = 0; it < 20; ++it) {
      double p, pm1;
      eval(x, n, p, pm1);
      double dp = (n * p - (n + alpha) * pm1) / x;
      double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15 * std::max(1.0, x)) break;
    }
    double p, pm1;
    eval(x, n + 1, p, pm1);
    r.x[i] = x;
    r.w[i] = std::exp(lg) * x / ((n + 1.0) * (n + 1.0) * p * p);
  }
  return r;
}

std::vector<double> ChebSeries::nodes(int n, double lo, double hi) {
  std::vector<double> y(n);
  for (int j = 0; j < n; ++j) {
    double s = std::cos(std::numbers::pi * (j + 0.5) / n);
    y[j] = lo + 0.5 * (s + 1.0) * (hi - lo);
  }
  return y;
}

ChebSeries::ChebSeries(std::vector<cplx> f, double lo, double hi, double chop) : lo_(lo), hi_(hi) {
  const int n = static_cast<int>(f.size());
  c_.assign(n, cplx{});
  for (int k = 0; k < n; ++k) {
    cplx s{};
    for (int j = 0; j < n; ++j) s += f[j] * std::cos(std::numbers::pi * k * (j + 0.5) / n);
    c_[k] = s * (2.0 / n);
  }
  c_[0] *= 0.5;
  // drop the rounding-noise tail; it would be amplified off the interval
  double big = 0.0;
  for (const auto& c : c_) big = std::max(big, std::abs(c));
  while (c_.size() > 1 && std::abs(c_.back()) <= chop * big) c_.pop_back();
}

cplx ChebSeries::operator()(cplx y) const {
  cplx s = (2.0 * y - (lo_ + hi_)) / (hi_ - lo_);
  cplx b1{}, b2{};
  for (std::size_t k = c_.size(); k-- > 1;) {
    cplx b0 = 2.0 * s * b1 - b2 + c_[k];
    b2 = b1;
    b1 = b0;
  }
  return s * b1 - b2 + c_[0];
}

cplx ChebSeries::reflected(cplx y) const { return std::conj((*this)(std::conj(y))); }

}  // namespace recoilq
