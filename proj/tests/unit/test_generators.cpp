#include <doctest.h>

#include <random>

#include "ccqme/canonical_map.hpp"
#include "ccqme/equilibrium.hpp"
#include "ccqme/generators.hpp"
#include "ccqme/units.hpp"
#include "support/oracles.hpp"

using namespace ccqme;

namespace {
const double beta300 = units::beta_from_kelvin(300.0);
}

TEST_SUITE("generators") {

TEST_CASE("row-major vectorization identity")
{
    std::mt19937 rng(7);
    const Eigen::MatrixXcd a = oracle::random_hermitian(rng, 4) + cplx(0, 1) * oracle::random_hermitian(rng, 4);
    const Eigen::MatrixXcd b = oracle::random_hermitian(rng, 4);
    const Eigen::MatrixXcd rho = oracle::random_state(rng, 4);
    const Eigen::VectorXcd lhs = vectorize(a * rho * b);
    const Eigen::VectorXcd rhs = kron(a, b.transpose()) * vectorize(rho);
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-13);
    CHECK((unvectorize(vectorize(rho), 4) - rho).cwiseAbs().maxCoeff() == 0.0);
    CHECK(vectorize(rho)(1) == rho(0, 1));
}

TEST_CASE("unitary generator")
{
    const auto sys = taa6_system();
    const auto u = unitary_liouvillian(sys);
    std::mt19937 rng(3);
    const Eigen::MatrixXcd rho = oracle::random_state(rng, 6);
    const Eigen::MatrixXcd h = hamiltonian_matrix(sys).cast<cplx>();
    const Eigen::MatrixXcd expect = cplx(0, -1) * (h * rho - rho * h);
    CHECK((u.apply(rho) - expect).cwiseAbs().maxCoeff() < 1e-16);
    CHECK(trace_annihilation_residual(u) < 1e-18);
    CHECK(hermiticity_residual(u) < 1e-18);
}

TEST_CASE("Redfield is trace preserving and Hermiticity preserving")
{
    const auto sys = taa6_system();
    for (double g : {0.1, 1.0}) {
        const BathSpec bath(g, 2.28e-3, beta300);
        for (bool sec : {false, true}) {
            const auto r = redfield_generator(sys, bath, sec);
            const double scale = r.matrix.cwiseAbs().maxCoeff();
            CHECK(trace_annihilation_residual(r) < 1e-12 * scale);
            CHECK(hermiticity_residual(r) < 1e-12 * scale);
        }
    }
}

TEST_CASE("convolution operator")
{
    const auto sys = taa6_system();
    const BathSpec bath(0.3, 2.28e-3, beta300);
    const auto k = convolution_operator(sys, bath);
    const auto d = bohr_frequencies(sys);
    CHECK(std::abs(k(1, 0) - tunneling_rate(bath, d(1, 0)) * sys.coupling()(1, 0)) < 1e-18);
    CHECK(std::abs(k(0, 1) - tunneling_rate(bath, d(0, 1)) * sys.coupling()(0, 1)) < 1e-18);
    const auto kt = convolution_operator_t(sys, bath, 1e6);
    CHECK((kt - k).cwiseAbs().maxCoeff() < 1e-10 * k.cwiseAbs().maxCoeff());
}

TEST_CASE("Redfield superoperator matches the operator form")
{
    const auto sys = taa6_system();
    const BathSpec bath(0.5, 2.28e-3, beta300);
    const Eigen::MatrixXcd k = convolution_operator(sys, bath);
    const Eigen::MatrixXcd q = sys.coupling().cast<cplx>();
    std::mt19937 rng(11);
    const Eigen::MatrixXcd rho = oracle::random_state(rng, 6);
    const Eigen::MatrixXcd kd = k.adjoint();
    const Eigen::MatrixXcd expect = k * rho * q - q * k * rho + q * rho * kd - rho * kd * q;
    const auto r = redfield_superoperator(sys, bath);
    CHECK((r.apply(rho) - expect).cwiseAbs().maxCoeff() < 1e-14 * expect.cwiseAbs().maxCoeff());
}

TEST_CASE("secular Redfield relaxes to the Gibbs state")
{
    const auto sys = taa6_system();
    const BathSpec bath(0.3, 2.28e-3, beta300);
    const Eigen::MatrixXcd ss = stationary_state(redfield_generator(sys, bath, true));
    const Eigen::MatrixXcd g = gibbs_state(sys, beta300);
    CHECK((ss - g).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("secularization keeps resonant blocks only")
{
    const auto sys = taa6_system();
    const BathSpec bath(0.3, 2.28e-3, beta300);
    const auto r = redfield_superoperator(sys, bath);
    const auto s = secularize(r, sys);
    const int n = 6;
    // population to coherence coupling is removed
    CHECK(s.matrix(0 * n + 1, 0 * n + 0) == cplx(0.0));
    CHECK(s.matrix(0 * n + 0, 1 * n + 1) == r.matrix(0 * n + 0, 1 * n + 1));
    CHECK(s.matrix(0 * n + 1, 0 * n + 1) == r.matrix(0 * n + 1, 0 * n + 1));
}

TEST_CASE("finite-time Redfield approaches the Markovian one")
{
    const auto sys = truncate(taa6_system(), 3);
    const BathSpec bath(0.3, 2.28e-3, beta300);
    const auto a = redfield_superoperator_t(sys, bath, 1e6);
    const auto b = redfield_superoperator(sys, bath);
    CHECK((a.matrix - b.matrix).cwiseAbs().maxCoeff() < 1e-10 * b.matrix.cwiseAbs().maxCoeff());
    CHECK(redfield_superoperator_t(sys, bath, 0.0).matrix.cwiseAbs().maxCoeff() == 0.0);
}

}
