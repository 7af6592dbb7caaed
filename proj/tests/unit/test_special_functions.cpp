#include <doctest.h>

#include <cmath>
#include <numbers>

#include "ccqme/errors.hpp"
#include "ccqme/special_functions.hpp"

using namespace ccqme;
using cplx = std::complex<double>;

TEST_SUITE("special_functions") {

TEST_CASE("digamma at known points")
{
    const double euler = 0.57721566490153286;
    CHECK(std::abs(digamma(1.0) + euler) < 1e-14);
    CHECK(std::abs(digamma(0.5) + euler + 2.0 * std::log(2.0)) < 1e-14);
    CHECK(std::abs(digamma(10.0) - (std::log(10.0) - 0.05 - 1.0 / 1200 + 1.0 / 1200000)) < 1e-8);
}

TEST_CASE("trigamma at known points")
{
    CHECK(std::abs(trigamma(1.0) - std::numbers::pi * std::numbers::pi / 6) < 1e-14);
    CHECK(std::abs(trigamma(0.5) - std::numbers::pi * std::numbers::pi / 2) < 1e-13);
}

TEST_CASE("recurrences hold off the real axis")
{
    for (cplx z : {cplx(0.3, 2.0), cplx(-3.7, 0.4), cplx(25.0, -40.0), cplx(1e-3, 1e3)}) {
        CHECK(std::abs(digamma(z + 1.0) - digamma(z) - 1.0 / z) < 1e-12 * std::max(1.0, std::abs(digamma(z))));
        CHECK(std::abs(trigamma(z + 1.0) - trigamma(z) + 1.0 / (z * z)) < 1e-12 * std::max(1.0, std::abs(trigamma(z))));
    }
}

TEST_CASE("reflection formula")
{
    const cplx z(0.25, 0.75);
    const cplx lhs = digamma(1.0 - z) - digamma(z);
    const cplx rhs = std::numbers::pi / std::tan(std::numbers::pi * z);
    CHECK(std::abs(lhs - rhs) < 1e-12);
}

TEST_CASE("poles are rejected")
{
    CHECK_THROWS(digamma(0.0));
    CHECK_THROWS(digamma(-3.0));
    CHECK_THROWS(trigamma(-1.0));
}

TEST_CASE("digamma relative to a logarithm")
{
    // psi(n + 1) - log(n + 1) = H_n - gamma - log(n + 1)
    const int n = 1000;
    long double h = 0.0L;
    for (int k = n; k >= 1; --k) h += 1.0L / k;
    const double expect = static_cast<double>(h - 0.57721566490153286060651209L - std::log(1001.0L));
    CHECK(std::abs(digamma_minus_log(1001.0, 1001.0).real() - expect) < 1e-18);
    const cplx z(3.5, -2.0);
    CHECK(std::abs(digamma_minus_log(z, 2.0) - (digamma(z) - std::log(2.0))) < 1e-14);
    CHECK_THROWS(digamma_minus_log(z, 0.0));
}

}
