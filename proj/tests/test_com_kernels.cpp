#include <doctest.h>

#include "recoilq/com_kernels.hpp"

#include "composition.hpp"

#include <cmath>
#include <numbers>

using namespace recoilq;

namespace {
const double pi = std::numbers::pi;
const double g0 = 0.01 / (2 * pi);  // lambda = 0.1
}

TEST_CASE("free propagator") {
  // zero displacement
  cplx p0 = free_propagator(2.0, 0.7, 0.0);
  CHECK(std::abs(p0 - std::pow(cplx(2.0 / (2 * pi * 0.7 * cplx(0, 1))), 1.5)) < 1e-14);
  // displacement is a pure phase
  for (double dx : {0.1, 1.0, 5.0})
    CHECK(std::abs(free_propagator(2.0, 0.7, dx)) == doctest::Approx(std::pow(2.0 / (2 * pi * 0.7), 1.5)));
  CHECK_THROWS_AS(free_propagator(1.0, 0.0, 0.1), std::domain_error);
  CHECK_THROWS_AS(free_propagator(1.0, -1.0, 0.1), std::domain_error);
}

TEST_CASE("free propagator composes") {
  cplx got = testing::composed_propagator(1.0, 0.5, 0.5, 0.3);
  cplx want = free_propagator(1.0, 1.0, 0.3);
  CHECK(std::abs(got - want) < 1e-5 * std::abs(want));
}

TEST_CASE("kernels are pure phases") {
  Mass m = Mass::finite(10.0);
  for (double k : {0.0, 0.3, 1.0, 7.5, 49.0})
    for (double c : {-1.0, -0.2, 0.4, 1.0})
      for (double s : {0.0, 0.5, 1.9, 2.0}) {
        CHECK(std::abs(std::abs(one_point_kernel(k, c, s, 2.0, 0.5, m)) - 1.0) < 1e-15);
        CHECK(std::abs(std::abs(two_point_kernel(k, c, s, 2.0, 0.5, m)) - 1.0) < 1e-15);
        CHECK(std::abs(std::abs(memory_kernel(k, c, s, 2.0, 0.5, m)) - 1.0) < 1e-15);
      }
}

TEST_CASE("kernel endpoints") {
  Mass m = Mass::finite(10.0);
  const double k = 1.3, c = 0.4, t = 2.0, dx = 0.5;
  CHECK(one_point_kernel(0.0, c, 0.7, t, dx, m) == cplx(1.0));
  CHECK(one_point_kernel(k, c, 0.0, t, dx, m) == cplx(1.0));
  CHECK(std::abs(one_point_kernel(k, c, t, t, dx, m) - std::polar(1.0, k * dx * c)) < 1e-15);
  CHECK(two_point_kernel(k, c, 0.0, t, dx, m) == cplx(1.0));
  CHECK(two_point_kernel(0.0, c, 0.7, t, dx, m) == cplx(1.0));
  CHECK(std::abs(two_point_kernel(k, c, t, t, dx, m) - std::polar(1.0, -k * dx * c)) < 1e-15);
  CHECK(memory_kernel(k, c, 0.0, t, dx, m) == cplx(1.0));
  CHECK(std::abs(memory_kernel(k, c, 0.7, t, 0.0, Mass::infinite()) - std::polar(1.0, -k * 0.7)) < 1e-15);
  CHECK_THROWS_AS(one_point_kernel(k, c, 2.1, t, dx, m), std::domain_error);
  CHECK_THROWS_AS(two_point_kernel(k, c, -0.1, t, dx, m), std::domain_error);
  CHECK_THROWS_AS(memory_kernel(k, c, 0.5, 0.0, dx, m), std::domain_error);
}

TEST_CASE("memory kernel factorises") {
  auto check_at = [](double k, double c, double s, double t, double dx, const Mass& m) {
    cplx lhs = memory_kernel(k, c, s, t, dx, m);
    cplx rhs = std::polar(1.0, -k * s) * two_point_kernel(k, c, s, t, dx, m);
    CHECK(std::abs(lhs - rhs) < 1e-12);
  };
  check_at(1.3, 0.4, 0.7, 2.0, 0.5, Mass::finite(10.0));
  for (double k : {0.1, 2.0, 30.0})
    for (double s : {0.2, 3.0, 9.9}) check_at(k, -0.6, s, 10.0, 1.7, Mass::finite(3.0));
}

TEST_CASE("taper") {
  CHECK(taper(0.0, 50.0) == 1.0);
  CHECK(taper(1.0, 50.0) == doctest::Approx(0.99999744).epsilon(1e-9));
  CHECK(taper(25.0, 50.0) == doctest::Approx(std::exp(-1.0)));
  CHECK(std::abs(taper(cplx(3.0, 0.0), 50.0) - taper(3.0, 50.0)) < 1e-16);
}

TEST_CASE("self energy vanishes without coupling") {
  CHECK(self_energy(Mass::finite(10), 0.3, 5, 0.0, 50).value == cplx(0.0));
  CHECK(stationary_self_energy(0.0, 50).value == cplx(0.0));
}

TEST_CASE("stationary self energy") {
  SelfEnergy s = stationary_self_energy(0.1, 50);
  CHECK(s.value.real() == doctest::Approx(stationary_half_rate(0.1)).epsilon(1e-5));
  // the ray integral gives the same real part as the closed form
  SelfEnergy r = self_energy(Mass::infinite(), 0.0, 1.0, 0.1, 50);
  CHECK(r.value.real() == doctest::Approx(s.value.real()).epsilon(1e-8));
  CHECK(r.error < 1e-6 * std::abs(r.value));
  // principal-value shift, cutoff dependent
  CHECK(s.value.imag() / g0 == doctest::Approx(-8.1755).epsilon(1e-4));
}

TEST_CASE("stationary self energy does not depend on t") {
  cplx a = self_energy(Mass::infinite(), 0.0, 0.5, 0.1, 50).value;
  for (double t : {2.0, 20.0, 400.0})
    CHECK(std::abs(self_energy(Mass::infinite(), 0.0, t, 0.1, 50).value - a) < 1e-6 * std::abs(a));
}

TEST_CASE("ray contour agrees with the damped and extrapolated real axis") {
  for (auto [m, dx, t] : {std::tuple{10.0, 0.0, 20.0}, {10.0, 1.0, 20.0}, {100.0, 0.5, 5.0}}) {
    CAPTURE(m);
    CAPTURE(dx);
    cplx ray = self_energy(Mass::finite(m), dx, t, 0.1, 50).value;
    SelfEnergy ex = self_energy_extrapolated(Mass::finite(m), dx, t, 0.1, 50);
    CHECK(std::abs(ray - ex.value) < 1e-6 * g0 + 10 * ex.error);
  }
}

TEST_CASE("hot-path panels agree with the default rule") {
  SelfEnergyOptions fast;
  fast.per_panel = 16;
  fast.estimate_error = false;
  for (double m : {10.0, 1e3, 1e6})
    for (double t : {0.2, 4.0, 36.0})
      for (double v : {0.0, 0.1, 0.8}) {
        cplx a = self_energy(Mass::finite(m), v * t, t, 0.1, 50, fast).value;
        cplx b = self_energy(Mass::finite(m), v * t, t, 0.1, 50, {32, false, 1e-6}).value;
        CHECK(std::abs(a - b) < 1e-9 * std::abs(b));
      }
}

TEST_CASE("decay part is non-negative once the transient is over") {
  for (double m : {10.0, 50.0, 1e3, 1e8})
    for (double t : {4.0, 20.0, 36.0})
      for (double v : {0.0, 0.05, 0.3, 0.9}) {
        CAPTURE(m);
        CAPTURE(t);
        CHECK(self_energy(Mass::finite(m), v * t, t, 0.1, 50).value.real() >= 0.0);
      }
}

TEST_CASE("recoil lowers the decay part at zero displacement") {
  double r10 = self_energy(Mass::finite(10), 0.0, 20.0, 0.1, 50).value.real();
  double rinf = stationary_self_energy(0.1, 50).value.real();
  CHECK(r10 / g0 == doctest::Approx(0.8590758).epsilon(1e-6));
  CHECK(r10 < rinf);
  // and the large-mass limit is approached
  double r8 = self_energy(Mass::finite(1e8), 0.0, 20.0, 0.1, 50).value.real();
  CHECK(std::abs(r8 - rinf) < 1e-5 * rinf);
}

TEST_CASE("cutoff must exceed omega0") {
  CHECK_THROWS_AS(self_energy(Mass::infinite(), 0, 1, 0.1, 0.5), std::domain_error);
}
