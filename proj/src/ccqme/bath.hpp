// bath.hpp: Ohmic bath with Drude cutoff: spectral density, correlation
// function and the half-sided Fourier transforms used as transition rates
#pragma once

#include <complex>

namespace ccqme {

using cplx = std::complex<double>;

// Real part is a transition rate, imaginary part an energy shift (hartree).
using ComplexRate = cplx;

enum class MatsubaraTail {
    analytic,  // explicit terms plus the exact remainder via digamma functions
    truncate,  // explicit terms only
};

class BathSpec {
public:
    // coupling in m_e E_h / hbar, cutoff in hartree, beta in 1/hartree.
    BathSpec(double coupling, double cutoff, double beta, int n_matsubara = 1000,
             MatsubaraTail tail = MatsubaraTail::analytic);

    double coupling() const noexcept { return coupling_; }
    double cutoff() const noexcept { return cutoff_; }
    double beta() const noexcept { return beta_; }
    int n_matsubara() const noexcept { return n_matsubara_; }
    MatsubaraTail tail() const noexcept { return tail_; }

    BathSpec with_coupling(double coupling) const;
    BathSpec with_matsubara(int n, MatsubaraTail tail) const;

    double matsubara_frequency(int n) const;
    // Prefactor of the Drude exponential e^{-cutoff t}.
    cplx drude_prefactor() const;
    // Prefactor of the n-th Matsubara exponential e^{-nu_n t}, n >= 1.
    double matsubara_prefactor(int n) const;
    // Static shift coefficient; the counter-term is (coefficient / 2) q^2.
    double reorganization_coefficient() const { return coupling_ * cutoff_; }

private:
    double coupling_;
    double cutoff_;
    double beta_;
    int n_matsubara_;
    MatsubaraTail tail_;
};

double spectral_density(const BathSpec& bath, double omega);
double bose(const BathSpec& bath, double omega);
// J(w) n(w) with its finite limit coupling/beta at w = 0.
double spectral_times_bose(const BathSpec& bath, double omega);

// Drude pole plus n_matsubara explicit Matsubara exponentials, t >= 0.
cplx correlation_function(const BathSpec& bath, double t);

ComplexRate tunneling_rate(const BathSpec& bath, double delta);
cplx tunneling_rate_derivative(const BathSpec& bath, double delta);
// Finite-time rate: integral of e^{-i delta s} C(s) over [0, t].
ComplexRate tunneling_rate_t(const BathSpec& bath, double delta, double t);

// Sum of Matsubara contributions with index n > last_explicit, i.e.
// sum_{n > last_explicit} B_n / (nu_n + i delta), and its delta-derivative.
cplx matsubara_remainder(const BathSpec& bath, double delta, int last_explicit);
cplx matsubara_remainder_derivative(const BathSpec& bath, double delta, int last_explicit);

}  // namespace ccqme
