#pragma once

#include <algorithm>
#include <complex>
#include <vector>

namespace recoilq {

using cplx = std::complex<double>;

struct Rule {
  std::vector<double> x;
  std::vector<double> w;
};

// n-point Gauss-Legendre on [-1, 1]; cached per n, thread safe.
const Rule& gauss_legendre(int n);

// Composite Gauss-Legendre over consecutive panel edges.
Rule composite_rule(const std::vector<double>& edges, int per_panel);

// Generalised Gauss-Laguerre, weight y^alpha e^{-y} on [0, inf).
Rule gauss_laguerre(int n, double alpha);

// Chebyshev series on [lo, hi] built from samples at first-kind nodes.
class ChebSeries {
 public:
  static std::vector<double> nodes(int n, double lo, double hi);
  // Trailing coefficients below chop * max|c| are dropped.
  ChebSeries(std::vector<cplx> samples, double lo, double hi, double chop = 1e-14);

  cplx operator()(cplx y) const;
  // conj(P(conj(y)))
  cplx reflected(cplx y) const;
  // the leading n terms
  ChebSeries truncated(std::size_t n) const {
    ChebSeries r = *this;
    if (n < r.c_.size()) r.c_.resize(std::max<std::size_t>(n, 1));
    return r;
  }
  const std::vector<cplx>& coeffs() const { return c_; }
  std::size_t size() const { return c_.size(); }

 private:
  std::vector<cplx> c_;
  double lo_, hi_;
};

}  // namespace recoilq
