// special_functions.hpp: complex polygamma functions
#pragma once

#include <complex>

namespace ccqme {

// psi(z) for complex z away from the non-positive integers.
std::complex<double> digamma(std::complex<double> z);

// psi(z) - log(x0) without cancellation when psi(z) is close to log(x0).
std::complex<double> digamma_minus_log(std::complex<double> z, double x0);

// psi'(z) for complex z away from the non-positive integers.
std::complex<double> trigamma(std::complex<double> z);

}  // namespace ccqme
