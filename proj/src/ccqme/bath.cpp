#include "ccqme/bath.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "ccqme/errors.hpp"
#include "ccqme/special_functions.hpp"

namespace ccqme {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;
constexpr cplx I{0.0, 1.0};

// Beyond this many explicit terms the finite-time factor 1 - e^{-nu t} is
// treated as 1 and the remainder is summed analytically.
constexpr long max_transient_terms = 2'000'000;

// Poles of n / ((n^2 - a^2)(n - a3)) in units of the first Matsubara frequency.
struct RemainderPoles {
    std::array<cplx, 3> a;
    double scale;  // 2 coupling cutoff^2 / beta / nu_1^2
};

RemainderPoles remainder_poles(const BathSpec& bath, double delta)
{
    const double c = two_pi / bath.beta();
    const double a1 = bath.cutoff() / c;
    return {{cplx(a1), cplx(-a1), cplx(0.0, -delta / c)},
            2.0 * bath.coupling() * bath.cutoff() * bath.cutoff() / bath.beta() / (c * c)};
}

}  // namespace

BathSpec::BathSpec(double coupling, double cutoff, double beta, int n_matsubara, MatsubaraTail tail)
    : coupling_(coupling), cutoff_(cutoff), beta_(beta), n_matsubara_(n_matsubara), tail_(tail)
{
    if (!(coupling >= 0.0) || !std::isfinite(coupling))
        throw InvalidInput("bath coupling must be finite and non-negative");
    if (!(cutoff > 0.0) || !std::isfinite(cutoff)) throw InvalidInput("bath cutoff must be positive");
    if (!(beta > 0.0) || !std::isfinite(beta)) throw InvalidInput("inverse temperature must be positive");
    if (n_matsubara < 1) throw InvalidInput("n_matsubara must be at least 1");
    const double ratio = beta * cutoff / two_pi;
    const double nearest = std::round(ratio);
    if (nearest >= 1.0 && std::abs(ratio - nearest) < 1e-9 * ratio)
        throw ConfigError("Drude pole collides with Matsubara frequency n = " +
                          std::to_string(static_cast<long>(nearest)) + " (beta*cutoff = 2*pi*n)");
}

BathSpec BathSpec::with_coupling(double coupling) const
{
    return BathSpec(coupling, cutoff_, beta_, n_matsubara_, tail_);
}

BathSpec BathSpec::with_matsubara(int n, MatsubaraTail tail) const
{
    return BathSpec(coupling_, cutoff_, beta_, n, tail);
}

double BathSpec::matsubara_frequency(int n) const { return two_pi * n / beta_; }

cplx BathSpec::drude_prefactor() const
{
    const double amp = 0.5 * coupling_ * cutoff_ * cutoff_;
    return amp * cplx(1.0 / std::tan(0.5 * beta_ * cutoff_), -1.0);
}

double BathSpec::matsubara_prefactor(int n) const
{
    const double nu = matsubara_frequency(n);
    return -(2.0 * coupling_ / beta_) * nu / (1.0 - nu * nu / (cutoff_ * cutoff_));
}

double spectral_density(const BathSpec& bath, double omega)
{
    const double wc = bath.cutoff();
    return bath.coupling() * omega * wc * wc / (omega * omega + wc * wc);
}

double bose(const BathSpec& bath, double omega)
{
    if (omega == 0.0) throw InvalidInput("Bose function evaluated at its pole omega = 0");
    return 1.0 / std::expm1(bath.beta() * omega);
}

double spectral_times_bose(const BathSpec& bath, double omega)
{
    if (omega == 0.0) return bath.coupling() / bath.beta();
    const double wc = bath.cutoff();
    // J/omega is regular, and omega/(e^{beta omega}-1) is evaluated stably by expm1.
    return bath.coupling() * wc * wc / (omega * omega + wc * wc) * omega / std::expm1(bath.beta() * omega);
}

cplx correlation_function(const BathSpec& bath, double t)
{
    if (t < 0.0) throw InvalidInput("correlation function requires t >= 0");
    cplx sum = bath.drude_prefactor() * std::exp(-bath.cutoff() * t);
    // Smallest terms first keeps the summation order deterministic and accurate.
    for (int n = bath.n_matsubara(); n >= 1; --n)
        sum += bath.matsubara_prefactor(n) * std::exp(-bath.matsubara_frequency(n) * t);
    return sum;
}

cplx matsubara_remainder(const BathSpec& bath, double delta, int last_explicit)
{
    if (bath.coupling() == 0.0) return 0.0;
    const auto [a, scale] = remainder_poles(bath, delta);
    cplx sum = 0.0;
    for (int j = 0; j < 3; ++j) {
        cplx den = 1.0;
        for (int k = 0; k < 3; ++k)
            if (k != j) den *= a[j] - a[k];
        // The residues sum to zero, so a common log can be dropped from every term.
        sum += a[j] / den * digamma_minus_log(double(last_explicit) + 1.0 - a[j], double(last_explicit) + 1.0);
    }
    return -scale * sum;
}

cplx matsubara_remainder_derivative(const BathSpec& bath, double delta, int last_explicit)
{
    if (bath.coupling() == 0.0) return 0.0;
    const auto [a, scale] = remainder_poles(bath, delta);
    const double c = two_pi / bath.beta();
    const cplx a1 = a[0], a2 = a[1], a3 = a[2];
    const double shift = double(last_explicit) + 1.0;
    // Residues depend on delta only through a3.
    const cplx dr1 = a1 / ((a1 - a2) * (a1 - a3) * (a1 - a3));
    const cplx dr2 = a2 / ((a2 - a1) * (a2 - a3) * (a2 - a3));
    const cplx dr3 = (a1 * a2 - a3 * a3) / ((a3 - a1) * (a3 - a1) * (a3 - a2) * (a3 - a2));
    const cplx r3 = a3 / ((a3 - a1) * (a3 - a2));
    const cplx dsum = dr1 * digamma_minus_log(shift - a1, shift) + dr2 * digamma_minus_log(shift - a2, shift) +
                      dr3 * digamma_minus_log(shift - a3, shift) - r3 * trigamma(shift - a3);
    return (-I / c) * (-scale * dsum);
}

ComplexRate tunneling_rate(const BathSpec& bath, double delta)
{
    if (bath.coupling() == 0.0) return 0.0;
    // For large beta * delta the real part is exponentially small against the
    // individual terms, so the explicit terms are accumulated in extended precision.
    using xcplx = std::complex<long double>;
    const long double g = bath.coupling(), wc = bath.cutoff(), beta = bath.beta(), d = delta;
    const long double c = 2.0L * std::numbers::pi_v<long double> / beta;
    xcplx sum = 0.0L;
    for (int n = bath.n_matsubara(); n >= 1; --n) {
        const long double nu = c * n;
        const long double b = -(2.0L * g / beta) * nu / (1.0L - nu * nu / (wc * wc));
        sum += b / xcplx(nu, d);
    }
    const long double amp = 0.5L * g * wc * wc;
    sum += amp * xcplx(1.0L / std::tan(0.5L * beta * wc), -1.0L) / xcplx(wc, d);
    cplx out(static_cast<double>(sum.real()), static_cast<double>(sum.imag()));
    if (bath.tail() == MatsubaraTail::analytic) out += matsubara_remainder(bath, delta, bath.n_matsubara());
    return out;
}

cplx tunneling_rate_derivative(const BathSpec& bath, double delta)
{
    if (bath.coupling() == 0.0) return 0.0;
    cplx sum = 0.0;
    if (bath.tail() == MatsubaraTail::analytic)
        sum += matsubara_remainder_derivative(bath, delta, bath.n_matsubara());
    for (int n = bath.n_matsubara(); n >= 1; --n) {
        const cplx den = cplx(bath.matsubara_frequency(n), delta);
        sum -= I * bath.matsubara_prefactor(n) / (den * den);
    }
    const cplx den = cplx(bath.cutoff(), delta);
    return sum - I * bath.drude_prefactor() / (den * den);
}

ComplexRate tunneling_rate_t(const BathSpec& bath, double delta, double t)
{
    if (t < 0.0) throw InvalidInput("finite-time rate requires t >= 0");
    if (t == 0.0 || bath.coupling() == 0.0) return 0.0;
    // Enough explicit terms that e^{-nu_n t} is negligible past the last one.
    const double c = two_pi / bath.beta();
    long explicit_terms = bath.n_matsubara();
    if (bath.tail() == MatsubaraTail::analytic) {
        const double needed = std::ceil(45.0 / (c * t));
        if (needed > explicit_terms) explicit_terms = static_cast<long>(std::min<double>(needed, max_transient_terms));
    }
    cplx sum = 0.0;
    if (bath.tail() == MatsubaraTail::analytic)
        sum += matsubara_remainder(bath, delta, static_cast<int>(explicit_terms));
    for (long n = explicit_terms; n >= 1; --n) {
        const cplx z(c * n, delta);
        sum += bath.matsubara_prefactor(static_cast<int>(n)) * (1.0 - std::exp(-z * t)) / z;
    }
    const cplx z(bath.cutoff(), delta);
    return sum + bath.drude_prefactor() * (1.0 - std::exp(-z * t)) / z;
}

}  // namespace ccqme
