#include <doctest.h>

#include <random>

#include "ccqme/equilibrium.hpp"
#include "ccqme/errors.hpp"
#include "ccqme/heom.hpp"
#include "ccqme/metrics.hpp"
#include "ccqme/units.hpp"
#include "support/oracles.hpp"

using namespace ccqme;

namespace {
const double beta300 = units::beta_from_kelvin(300.0);
}

TEST_SUITE("heom") {

TEST_CASE("exponents reproduce the truncated correlation function")
{
    const BathSpec bath(0.5, 2.28e-3, beta300);
    const auto ex = bath_exponents(bath, 4);
    REQUIRE(ex.size() == 4);
    CHECK(ex[0].rate == 2.28e-3);
    CHECK(ex[1].rate < ex[2].rate);
    const BathSpec trunc = bath.with_matsubara(3, MatsubaraTail::truncate);
    for (double t : {0.0, 10.0, 300.0}) {
        cplx sum = 0.0;
        for (const auto& e : ex) sum += e.coefficient * std::exp(-e.rate * t);
        CHECK(std::abs(sum - correlation_function(trunc, t)) < 1e-12 * std::abs(sum));
    }
}

TEST_CASE("hierarchy enumeration")
{
    const auto sys = truncate(taa6_system(), 2);
    const HeomGenerator h(sys, BathSpec(0.1, 2.28e-3, beta300), {.depth = 5, .n_exponentials = 3});
    CHECK(h.n_ados() == 56);  // C(5 + 3, 3)
    CHECK(h.position({0, 0, 0}) == 0);
    CHECK(h.position({5, 0, 0}) >= 0);
    CHECK(h.position({6, 0, 0}) == -1);
    CHECK(h.state_size() == 4 * 56);
}

TEST_CASE("sparse assembly matches the matrix-free product")
{
    const auto sys = truncate(taa6_system(), 3);
    std::mt19937 rng(5);
    for (auto term : {Terminator::none, Terminator::white, Terminator::resolved}) {
        const HeomGenerator h(sys, BathSpec(0.7, 2.28e-3, beta300), {.depth = 3, .n_exponentials = 3, .terminator = term});
        Eigen::VectorXcd x(h.state_size());
        std::normal_distribution<double> d;
        for (auto& v : x) v = cplx(d(rng), d(rng));
        Eigen::VectorXcd y;
        h.apply(x, y);
        const Eigen::VectorXcd z = h.assemble() * x;
        CHECK((y - z).cwiseAbs().maxCoeff() < 1e-12 * z.cwiseAbs().maxCoeff());
    }
}

TEST_CASE("root trace is conserved")
{
    const auto sys = truncate(taa6_system(), 3);
    const HeomGenerator h(sys, BathSpec(0.7, 2.28e-3, beta300), {.depth = 3});
    std::mt19937 rng(9);
    Eigen::VectorXcd x(h.state_size());
    std::normal_distribution<double> d;
    for (auto& v : x) v = cplx(d(rng), d(rng));
    Eigen::VectorXcd y;
    h.apply(x, y);
    const Eigen::MatrixXcd root = h.physical(y);
    CHECK(std::abs(root.trace()) < 1e-12 * y.cwiseAbs().maxCoeff());
}

TEST_CASE("no coupling reduces to unitary evolution")
{
    const auto sys = taa6_system();
    const HeomGenerator h(sys, BathSpec(0.0, 2.28e-3, beta300), {.depth = 2});
    std::mt19937 rng(1);
    const Eigen::MatrixXcd rho = oracle::random_state(rng, 6);
    Eigen::VectorXcd y;
    h.apply(h.embed(rho), y);
    CHECK((h.physical(y) - unitary_liouvillian(sys).apply(rho)).cwiseAbs().maxCoeff() < 1e-18);
    CHECK_THROWS_AS(heom_steady_state(sys, BathSpec(0.0, 2.28e-3, beta300), {}), NotAvailable);
}

TEST_CASE("steady state at weak coupling is close to the mean-force state")
{
    const auto sys = truncate(taa6_system(), 3);
    const BathSpec bath(0.02, 2.28e-3, beta300);
    const auto ss = heom_steady_state(sys, bath, {.depth = 4});
    CHECK(ss.residual < 1e-12);
    CHECK(std::abs(ss.rho.trace() - 1.0) < 1e-12);
    const auto eq = mean_force_gibbs2(sys, bath);
    const double to_mf = steady_state_distance(ss.rho, eq.mean_force);
    const double to_gibbs = steady_state_distance(ss.rho, eq.gibbs);
    CHECK(to_mf < to_gibbs);
    CHECK(to_gibbs < 1e-2);
}

TEST_CASE("direct and propagated steady states agree")
{
    const auto sys = truncate(taa6_system(), 2);
    const BathSpec bath(0.3, 2.28e-3, beta300);
    const HeomConfig cfg{.depth = 3, .n_exponentials = 2};
    const auto a = heom_steady_state(sys, bath, cfg, SteadyStateMethod::direct);
    const auto b = heom_steady_state(sys, bath, cfg, SteadyStateMethod::propagate);
    CHECK(steady_state_distance(a.rho, b.rho) < 1e-9);
}

}
