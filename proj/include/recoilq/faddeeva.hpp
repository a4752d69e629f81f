#pragma once

#include <complex>

namespace recoilq {

// Faddeeva function w(z) = exp(-z^2) erfc(-iz), whole complex plane.
// Relative accuracy about 1e-14 where the result is representable.
std::complex<double> faddeeva(std::complex<double> z);

}  // namespace recoilq
