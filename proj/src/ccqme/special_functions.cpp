#include "ccqme/special_functions.hpp"

#include <cmath>

#include "ccqme/errors.hpp"

namespace ccqme {

namespace {

using cplx = std::complex<double>;

// Recurrence shifts the argument until |z| is large enough for the
// asymptotic series to reach double precision.
constexpr double asymptotic_radius = 16.0;

void check_pole(cplx z)
{
    if (z.real() <= 0.0 && std::abs(z.imag()) < 1e-14 && std::abs(z.real() - std::round(z.real())) < 1e-14)
        throw InvalidInput("polygamma evaluated at a pole");
}

}  // namespace

namespace {

// psi(z) = acc + log(z_shifted) - tail, with log left to the caller.
cplx digamma_parts(cplx& z)
{
    check_pole(z);
    cplx acc = 0.0;
    while (std::abs(z) < asymptotic_radius || z.real() < asymptotic_radius / 2) {
        acc -= 1.0 / z;
        z += 1.0;
    }
    const cplx w = 1.0 / (z * z);
    // Bernoulli tail: B_2k / (2k z^2k)
    const cplx series =
        w * (1.0 / 12 - w * (1.0 / 120 - w * (1.0 / 252 - w * (1.0 / 240 - w * (1.0 / 132 - w * (691.0 / 32760 - w / 12.0))))));
    return acc - 0.5 / z - series;
}

}  // namespace

cplx digamma(cplx z)
{
    const cplx rest = digamma_parts(z);
    return rest + std::log(z);
}

cplx digamma_minus_log(cplx z, double x0)
{
    if (!(x0 > 0.0)) throw InvalidInput("digamma_minus_log needs a positive reference");
    const cplx rest = digamma_parts(z);
    // log(z / x0) = log(1 + u), u = (z - x0) / x0
    const cplx u = (z - x0) / x0;
    const double mod2m1 = 2.0 * u.real() + std::norm(u);
    return rest + cplx(0.5 * std::log1p(mod2m1), std::arg(1.0 + u));
}

cplx trigamma(cplx z)
{
    check_pole(z);
    cplx acc = 0.0;
    while (std::abs(z) < asymptotic_radius || z.real() < asymptotic_radius / 2) {
        acc += 1.0 / (z * z);
        z += 1.0;
    }
    const cplx iz = 1.0 / z;
    const cplx w = iz * iz;
    // 1/z + 1/(2z^2) + sum B_2k / z^(2k+1)
    const cplx series =
        iz * w * (1.0 / 6 - w * (1.0 / 30 - w * (1.0 / 42 - w * (1.0 / 30 - w * (5.0 / 66 - w * (691.0 / 2730 - w * (7.0 / 6)))))));
    return acc + iz + 0.5 * w + series;
}

}  // namespace ccqme
