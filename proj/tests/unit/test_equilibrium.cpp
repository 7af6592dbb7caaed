#include <doctest.h>

#include "ccqme/canonical_map.hpp"
#include "ccqme/equilibrium.hpp"
#include "ccqme/metrics.hpp"
#include "ccqme/units.hpp"

using namespace ccqme;

namespace {
const double beta300 = units::beta_from_kelvin(300.0);
}

TEST_SUITE("equilibrium") {

TEST_CASE("Gibbs state")
{
    const auto sys = truncate(taa6_system(), 2);
    const auto g = gibbs_state(sys, beta300);
    const double r = std::exp(-beta300 * (sys.energies()(1) - sys.energies()(0)));
    CHECK(g(0, 0).real() == doctest::Approx(1.0 / (1.0 + r)).epsilon(1e-14));
    CHECK(std::abs(g(0, 1)) == 0.0);
    CHECK(std::abs(g.trace() - 1.0) < 1e-15);
}

TEST_CASE("mean-force state")
{
    const auto sys = taa6_system();
    const auto zero = mean_force_gibbs2(sys, BathSpec(0.0, 2.28e-3, beta300));
    CHECK((zero.mean_force - zero.gibbs).cwiseAbs().maxCoeff() == 0.0);

    const auto a = mean_force_gibbs2(sys, BathSpec(0.1, 2.28e-3, beta300));
    const auto b = mean_force_gibbs2(sys, BathSpec(0.2, 2.28e-3, beta300));
    CHECK(std::abs(a.mean_force.trace() - 1.0) < 1e-14);
    CHECK(std::abs(a.correction.trace()) < 1e-14);
    CHECK((a.mean_force - a.mean_force.adjoint()).cwiseAbs().maxCoeff() < 1e-15);
    CHECK(((2.0 * a.correction - b.correction).cwiseAbs().maxCoeff()) < 1e-12 * b.correction.cwiseAbs().maxCoeff());
    CHECK(a.min_eigenvalue > 0.0);
}

TEST_CASE("non-secular CCQME is stationary at the mean-force state")
{
    // The generator annihilates the Gibbs state mapped through (1 + C) to
    // first order; at small coupling the residual is second order.
    const auto sys = taa6_system();
    const BathSpec small(1e-3, 2.28e-3, beta300), larger(2e-3, 2.28e-3, beta300);
    const auto d1 = steady_state_distance(stationary_state(ccqme_generator(sys, small)),
                                          mean_force_gibbs2(sys, small).mean_force);
    const auto d2 = steady_state_distance(stationary_state(ccqme_generator(sys, larger)),
                                          mean_force_gibbs2(sys, larger).mean_force);
    CHECK(d2 / d1 == doctest::Approx(4.0).epsilon(0.1));
}

TEST_CASE("regime labels")
{
    const auto sys = taa6_system();
    const auto weak = classify_regime(sys, BathSpec(1e-4, 2.28e-3, beta300));
    CHECK(weak.label == Regime::ultraweak);
    CHECK_FALSE(weak.intermediate_checked);
    const auto strong = classify_regime(sys, BathSpec(1.0, 2.28e-3, beta300));
    CHECK(strong.label == Regime::weak);
    const Eigen::MatrixXcd far = gibbs_state(sys, 0.5 * beta300);
    const auto with_ref = classify_regime(sys, BathSpec(1.0, 2.28e-3, beta300), &far);
    CHECK(with_ref.label == Regime::intermediate);
    CHECK(with_ref.intermediate_checked);
    CHECK(regime_name(Regime::intermediate) == "IM");
}

}
