#include <doctest.h>

#include <random>

#include "ccqme/canonical_map.hpp"
#include "ccqme/equilibrium.hpp"
#include "ccqme/two_level_oracle.hpp"
#include "ccqme/units.hpp"
#include "support/oracles.hpp"

using namespace ccqme;

namespace {

const double beta300 = units::beta_from_kelvin(300.0);

double rel_diff(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b)
{
    return (a - b).cwiseAbs().maxCoeff() / std::max(b.cwiseAbs().maxCoeff(), 1e-300);
}

}  // namespace

TEST_SUITE("canonical_map") {

TEST_CASE("general builders agree with the two-level closed forms")
{
    std::mt19937 rng(2024);
    std::uniform_real_distribution<double> gap(2e-4, 6e-3), qd(-0.8, 0.8), gd(0.01, 1.0);
    double worst_redfield = 0.0, worst_map = 0.0, worst_ccqme = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        TwoLevelInputs in;
        in.e0 = 4e-3;
        in.e1 = in.e0 + gap(rng);
        in.q00 = qd(rng);
        in.q01 = qd(rng);
        in.q11 = qd(rng);
        in.rho = oracle::random_state(rng, 2);
        const BathSpec bath(gd(rng), 2.28e-3, beta300);

        Eigen::Vector2d e(in.e0, in.e1);
        Eigen::Matrix2d q;
        q << in.q00, in.q01, in.q01, in.q11;
        const NLevelSystem sys(e, q);
        const auto ref = two_level_oracle(in, bath);

        worst_redfield = std::max(worst_redfield, rel_diff(redfield_generator(sys, bath, false).apply(in.rho),
                                                           ref.redfield_rhs));
        const Eigen::MatrixXcd corrected = in.rho - canonical_map(sys, bath).total().apply(in.rho);
        worst_map = std::max(worst_map, rel_diff(corrected, ref.corrected));
        worst_ccqme = std::max(worst_ccqme, rel_diff(ccqme_generator(sys, bath).apply(in.rho), ref.ccqme_rhs));
    }
    CHECK(worst_redfield < 1e-12);
    CHECK(worst_map < 1e-12);
    CHECK(worst_ccqme < 1e-12);
}

TEST_CASE("map preserves Hermiticity")
{
    // Not trace free: the energy-derivative part shifts the trace, which the
    // mean-force construction renormalizes away.
    const auto sys = taa6_system();
    const BathSpec bath(0.5, 2.28e-3, beta300);
    const auto c = canonical_map(sys, bath).total();
    const double scale = c.matrix.cwiseAbs().maxCoeff();
    CHECK(hermiticity_residual(c) < 1e-12 * scale);
}

TEST_CASE("map vanishes without coupling")
{
    const auto sys = taa6_system();
    const BathSpec bath(0.0, 2.28e-3, beta300);
    CHECK(canonical_map(sys, bath).total().matrix.cwiseAbs().maxCoeff() == 0.0);
    const auto l = ccqme_generator(sys, bath);
    CHECK((l.matrix - unitary_liouvillian(sys).matrix).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("linear in the coupling")
{
    const auto sys = taa6_system();
    const auto a = canonical_map(sys, BathSpec(0.2, 2.28e-3, beta300)).total();
    const auto b = canonical_map(sys, BathSpec(0.4, 2.28e-3, beta300)).total();
    CHECK(rel_diff(2.0 * a.matrix, b.matrix) < 1e-12);
}

TEST_CASE("CCQME generator preserves trace and Hermiticity")
{
    const auto sys = taa6_system();
    const BathSpec bath(1.0, 2.28e-3, beta300);
    for (bool sec : {false, true}) {
        const auto l = ccqme_generator(sys, bath, {.secular = sec});
        const double scale = l.matrix.cwiseAbs().maxCoeff();
        CHECK(trace_annihilation_residual(l) < 1e-12 * scale);
        CHECK(hermiticity_residual(l) < 1e-12 * scale);
    }
}

TEST_CASE("mean-force populations match imaginary-time perturbation theory")
{
    // Kubo-Mori second-order correction without the pure-dephasing (q_nn^2)
    // contributions reproduces the map-based state.
    const auto sys = taa6_system();
    for (double g : {0.05, 0.5}) {
        const BathSpec bath(g, 2.28e-3, beta300);
        const Eigen::VectorXd expect = oracle::imaginary_time_populations(sys, bath, false);
        const Eigen::VectorXd got = mean_force_gibbs2(sys, bath).mean_force.diagonal().real();
        const Eigen::VectorXd gibbs = gibbs_state(sys, beta300).diagonal().real();
        const double shift = (expect - gibbs).cwiseAbs().maxCoeff();
        CHECK(shift > 1e-5);
        CHECK((got - expect).cwiseAbs().maxCoeff() < 1e-6 * shift);
    }
}

TEST_CASE("pure-dephasing terms are outside the map-based state")
{
    const auto sys = taa6_system();
    const BathSpec bath(0.05, 2.28e-3, beta300);
    const Eigen::VectorXd gibbs = gibbs_state(sys, beta300).diagonal().real();
    const Eigen::VectorXd with = oracle::imaginary_time_populations(sys, bath, true);
    const Eigen::VectorXd without = oracle::imaginary_time_populations(sys, bath, false);
    const Eigen::VectorXd got = mean_force_gibbs2(sys, bath).mean_force.diagonal().real();
    CHECK(std::abs(with(0) - gibbs(0)) > 3.0 * std::abs(without(0) - gibbs(0)));
    CHECK(std::abs(got(0) - without(0)) < 1e-10);
}

}
