#include <doctest.h>

#include <cmath>
#include <numbers>

#include "ccqme/bath.hpp"
#include "ccqme/errors.hpp"
#include "ccqme/system_model.hpp"
#include "ccqme/units.hpp"
#include "support/oracles.hpp"

using namespace ccqme;

namespace {

const double beta300 = units::beta_from_kelvin(300.0);
const double wc = 2.28e-3;
const double d10 = 4.691015e-3 - 4.114537e-3;

double rel(cplx a, cplx b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST_SUITE("bath") {

TEST_CASE("spectral density")
{
    const BathSpec b(0.3, wc, beta300);
    CHECK(spectral_density(b, 0.0) == 0.0);
    CHECK(spectral_density(b, wc) == doctest::Approx(0.3 * wc / 2));
    CHECK(spectral_density(b, -1.5 * wc) == -spectral_density(b, 1.5 * wc));
}

TEST_CASE("Bose function")
{
    const BathSpec b(0.1, wc, 2.0);
    CHECK(bose(b, std::log(2.0) / 2.0) == doctest::Approx(1.0));
    CHECK(1.0 + bose(b, 0.5) == doctest::Approx(-bose(b, -0.5)));
    CHECK_THROWS(bose(b, 0.0));
    const BathSpec room(0.1, wc, beta300);
    const long double x = static_cast<long double>(beta300) * d10;
    CHECK(bose(room, d10) == doctest::Approx(static_cast<double>(1.0L / (std::exp(x) - 1.0L))).epsilon(1e-13));
    CHECK(spectral_times_bose(room, 0.0) == doctest::Approx(0.1 / beta300));
}

TEST_CASE("pole collision is rejected")
{
    const double beta = 1000.0;
    CHECK_THROWS_AS(BathSpec(0.1, 2.0 * std::numbers::pi * 3 / beta, beta), ConfigError);
    CHECK_THROWS_AS(BathSpec(-0.1, wc, beta), InvalidInput);
    CHECK_THROWS_AS(BathSpec(0.1, 0.0, beta), InvalidInput);
    CHECK_THROWS_AS(BathSpec(0.1, wc, beta, 0), InvalidInput);
}

TEST_CASE("rate real part is the thermal spectral density")
{
    const BathSpec b(0.5, wc, beta300);
    for (double d : {d10, -d10, 4.018579e-3, 1e-5}) {
        const double expect = spectral_times_bose(b, d);
        CHECK(std::abs(tunneling_rate(b, d).real() - expect) / expect < 1e-6);
    }
    const BathSpec full(0.5, wc, beta300);
    CHECK(std::abs(tunneling_rate(full, 0.0).real() - 0.5 / beta300) / (0.5 / beta300) < 1e-12);
}

TEST_CASE("detailed balance")
{
    const BathSpec b(0.5, wc, beta300);
    for (double d : {d10, 4.018579e-3, 1.2e-2}) {
        const double ratio = tunneling_rate(b, -d).real() / tunneling_rate(b, d).real();
        CHECK(std::abs(ratio / std::exp(beta300 * d) - 1.0) < 1e-10);
    }
}

TEST_CASE("Matsubara convergence")
{
    // Dropping the tail leaves an O(1/n) error; the analytic remainder removes it.
    const BathSpec a(0.5, wc, beta300, 1000, MatsubaraTail::truncate);
    const BathSpec b(0.5, wc, beta300, 2000, MatsubaraTail::truncate);
    const double exact = spectral_times_bose(a, d10);
    const double ea = std::abs(tunneling_rate(a, d10).real() - exact);
    const double eb = std::abs(tunneling_rate(b, d10).real() - exact);
    CHECK(ea / eb == doctest::Approx(2.0).epsilon(0.01));
    const BathSpec c(0.5, wc, beta300, 1000);
    const BathSpec e(0.5, wc, beta300, 2000);
    CHECK(rel(tunneling_rate(c, d10), tunneling_rate(e, d10)) < 1e-8);
}

TEST_CASE("rate derivative matches central differences")
{
    const BathSpec b(0.5, wc, beta300);
    for (double d : {d10, 0.0, -3e-3}) {
        const double h = 1e-7;
        const cplx fd = (tunneling_rate(b, d + h) - tunneling_rate(b, d - h)) / (2 * h);
        CHECK(rel(tunneling_rate_derivative(b, d), fd) < 1e-6);
    }
    CHECK(std::abs(tunneling_rate_derivative(b.with_coupling(0.0), d10)) == 0.0);
}

TEST_CASE("linear in the coupling")
{
    const BathSpec a(0.2, wc, beta300), b(0.4, wc, beta300);
    CHECK(rel(2.0 * tunneling_rate(a, d10), tunneling_rate(b, d10)) < 1e-14);
    CHECK(rel(2.0 * tunneling_rate_derivative(a, d10), tunneling_rate_derivative(b, d10)) < 1e-14);
    CHECK(rel(2.0 * correlation_function(a, 50.0), correlation_function(b, 50.0)) < 1e-14);
    CHECK(2.0 * spectral_density(a, wc) == doctest::Approx(spectral_density(b, wc)));
}

TEST_CASE("correlation function against the spectral integral")
{
    const BathSpec b(0.5, wc, beta300);
    for (double t : {5.0, 40.0, 400.0}) {
        const double expect = oracle::correlation_real(b, t);
        CHECK(std::abs(correlation_function(b, t).real() - expect) / std::abs(expect) < 1e-6);
        CHECK(std::abs(correlation_function(b, t).imag() + 0.5 * 0.5 * wc * wc * std::exp(-wc * t)) < 1e-18);
    }
    CHECK(std::abs(correlation_function(b.with_coupling(0.0), 10.0)) == 0.0);
}

TEST_CASE("correlation function decays")
{
    const BathSpec b(0.5, wc, beta300);
    double prev = std::abs(correlation_function(b, 5.0 / wc));
    for (double t = 5.0 / wc; t <= 50.0 / wc; t += 0.5 / wc) {
        const double cur = std::abs(correlation_function(b, t));
        CHECK(cur <= prev);
        prev = cur;
    }
}

TEST_CASE("finite-time rate")
{
    const BathSpec b(0.5, wc, beta300);
    CHECK(std::abs(tunneling_rate_t(b, d10, 0.0)) == 0.0);
    CHECK(rel(tunneling_rate_t(b, d10, 4e5), tunneling_rate(b, d10)) < 1e-10);

    // Direct quadrature of e^{-i delta s} C(s) on [0, 500] with the same
    // explicit Matsubara terms.
    const BathSpec tb(0.5, wc, beta300, 1000, MatsubaraTail::truncate);
    std::vector<double> edges{0.0};
    for (double x = 1e-4; x < 500.0; x *= 1.25) edges.push_back(x);
    edges.push_back(500.0);
    const cplx quad = oracle::integrate(
        [&](double s) { return std::exp(cplx(0.0, -d10 * s)) * correlation_function(tb, s); }, edges, 24);
    CHECK(rel(tunneling_rate_t(tb, d10, 500.0), quad) < 1e-8);
}

TEST_CASE("Matsubara remainder equals the explicit tail")
{
    const BathSpec b(0.5, wc, beta300);
    const BathSpec trunc(0.5, wc, beta300, 200000, MatsubaraTail::truncate);
    // sum_{n > 2} B_n / (nu_n + i delta), explicitly to 2e5 terms plus the small remainder
    cplx explicit_tail = 0.0;
    for (int n = 200000; n > 2; --n)
        explicit_tail += b.matsubara_prefactor(n) / cplx(b.matsubara_frequency(n), d10);
    explicit_tail += matsubara_remainder(b, d10, 200000);
    CHECK(rel(matsubara_remainder(b, d10, 2), explicit_tail) < 1e-12);
    const double h = 1e-7;
    const cplx fd = (matsubara_remainder(b, d10 + h, 2) - matsubara_remainder(b, d10 - h, 2)) / (2 * h);
    CHECK(rel(matsubara_remainder_derivative(b, d10, 2), fd) < 1e-6);
}

}
