#include <doctest.h>

#include "recoilq/faddeeva.hpp"
#include "recoilq/quadrature.hpp"

#include <cmath>
#include <numbers>

using namespace recoilq;

TEST_CASE("faddeeva matches frozen reference values") {
  // scipy.special.wofz
  const std::pair<cplx, cplx> ref[] = {
      {{0.0, 0.0}, {1.0, 0.0}},
      {{1.0, 0.0}, {0.36787944117144233, 0.6071577058413937}},
      {{-1.0, 0.0}, {0.36787944117144233, -0.6071577058413937}},
      {{0.5, 0.5}, {0.5331567079121748, 0.2304882313844585}},
      {{2.0, -1.0}, {-0.20532558064658757, 0.14685548503016754}},
      {{-3.0, 0.2}, {0.015626770455552136, -0.19966856321866638}},
      {{0.001, 1e-06}, {0.9999978716245895, 0.0011283764148472116}},
      {{7.9, 0.01}, {9.2665396146909e-05, 0.07200277353767219}},
      {{8.1, 0.01}, {8.803643333321387e-05, 0.0701963593403414}},
      {{-8.1, -0.3}, {-0.0026372707954815115, -0.07009643430669307}},
      {{15.0, 15.0}, {0.018827145325136758, 0.018785354277995648}},
      {{-45.8, 47.1}, {0.006157536268310533, -0.005986195933818073}},
      {{10000.0, 10000.0}, {2.820947924791151e-05, 2.8209479106864113e-05}},
      {{0.3, -2.5}, {66.76937263495908, 944.5063522622108}},
      {{3.0, -3.0}, {1.2242309109051157, -1.4107381675391335}},
      {{100.0, 0.0}, {0.0, 0.005642177972594138}},
      {{-2.2, -0.7}, {-0.12570725129331448, -0.24453546923635439}},
      {{5.0, 0.1}, {0.0024069117169427286, 0.11519442455072851}},
      {{0.0, 1e-08}, {0.9999999887162083, 0.0}},
      {{0.01, -4.0}, {17713608.672021203, 1420119.5869096052}},
  };
  for (const auto& [z, w] : ref) {
    CAPTURE(z);
    cplx got = faddeeva(z);
    CHECK(std::abs(got - w) <= 1e-13 * std::abs(w) + 1e-300);
  }
}

TEST_CASE("faddeeva symmetry w(-conj z) = conj w(z)") {
  for (double x : {-6.0, -0.7, 0.2, 3.3, 9.0})
    for (double y : {-2.0, -0.1, 0.0, 0.4, 5.0}) {
      cplx z(x, y);
      CHECK(std::abs(faddeeva(-std::conj(z)) - std::conj(faddeeva(z))) <=
            1e-14 * std::abs(faddeeva(z)));
    }
}

TEST_CASE("gauss-legendre is exact for polynomials") {
  for (int n : {2, 5, 16, 24}) {
    const Rule& r = gauss_legendre(n);
    for (int p = 0; p < 2 * n; ++p) {
      double s = 0.0;
      for (int i = 0; i < n; ++i) s += r.w[i] * std::pow(r.x[i], p);
      double exact = p % 2 ? 0.0 : 2.0 / (p + 1);
      CHECK(s == doctest::Approx(exact).epsilon(1e-13));
    }
  }
}

TEST_CASE("generalised gauss-laguerre moments") {
  for (double alpha : {0.0, 0.5}) {
    Rule r = gauss_laguerre(24, alpha);
    for (int p = 0; p < 12; ++p) {
      double s = 0.0;
      for (std::size_t i = 0; i < r.x.size(); ++i) s += r.w[i] * std::pow(r.x[i], p);
      CHECK(s == doctest::Approx(std::tgamma(p + alpha + 1.0)).epsilon(1e-12));
    }
  }
}

TEST_CASE("chebyshev series reproduces a smooth function off the interval") {
  auto f = [](cplx y) { return std::exp(cplx(0.3, -0.2) * y); };
  auto nodes = ChebSeries::nodes(24, 0.0, 2.0);
  std::vector<cplx> v;
  for (double y : nodes) v.push_back(f(y));
  ChebSeries P(v, 0.0, 2.0);
  for (cplx y : {cplx(0.7, 0.0), cplx(1.0, -0.5), cplx(0.2, 0.4)}) {
    CHECK(std::abs(P(y) - f(y)) < 1e-11);
    CHECK(std::abs(P.reflected(y) - std::conj(f(std::conj(y)))) < 1e-11);
  }
}
