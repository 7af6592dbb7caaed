#include <doctest.h>

#include <cstdio>

#include "ccqme/errors.hpp"
#include "ccqme/system_model.hpp"

using namespace ccqme;

TEST_SUITE("system_model") {

TEST_CASE("tabulated six-level system")
{
    const auto s = taa6_system();
    CHECK(s.size() == 6);
    CHECK(s.energies()(0) == 4.114537e-3);
    CHECK(s.coupling()(0, 0) == -0.3813);
    CHECK(s.coupling()(0, 1) == 0.3325);
    CHECK(s.coupling()(1, 0) == 0.3325);
}

TEST_CASE("Bohr frequencies")
{
    const auto d = bohr_frequencies(taa6_system());
    CHECK(d(1, 0) == doctest::Approx(5.76478e-4).epsilon(1e-9));
    CHECK(d(2, 0) == doctest::Approx(4.018579e-3).epsilon(1e-9));
    CHECK((d + d.transpose()).cwiseAbs().maxCoeff() == 0.0);
    CHECK(d.diagonal().cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("Hamiltonian matrix")
{
    const auto h = hamiltonian_matrix(truncate(taa6_system(), 2));
    CHECK(h(0, 0) == 4.114537e-3);
    CHECK(h(1, 1) == 4.691015e-3);
    CHECK(h(0, 1) == 0.0);
    CHECK(hamiltonian_matrix(truncate(taa6_system(), 1)).size() == 1);
}

TEST_CASE("construction rejects degenerate or asymmetric input")
{
    Eigen::VectorXd e(2);
    e << 1.0, 1.0;
    CHECK_THROWS_AS(NLevelSystem(e, Eigen::MatrixXd::Zero(2, 2)), InvalidInput);
    e << 0.0, 1.0;
    Eigen::MatrixXd q(2, 2);
    q << 0.0, 1.0, 0.5, 0.0;
    CHECK_THROWS_AS(NLevelSystem(e, q), InvalidInput);
    CHECK_THROWS_AS(truncate(taa6_system(), 7), InvalidInput);
}

TEST_CASE("renormalization")
{
    const auto s = taa6_system();
    const auto same = renormalize(s, 0.0, 2.28e-3);
    CHECK(same.energies() == s.energies());
    CHECK(same.coupling() == s.coupling());

    const double g = 0.5, wc = 2.28e-3;
    const auto r = renormalize(s, g, wc);
    const double q2 = (s.coupling() * s.coupling()).trace();
    CHECK(std::abs(r.energies().sum() - s.energies().sum() - 0.5 * g * wc * q2) < 1e-12);
    CHECK((r.coupling() - r.coupling().transpose()).cwiseAbs().maxCoeff() < 1e-12);
    // q is the same operator in a rotated basis
    CHECK(std::abs((r.coupling() * r.coupling()).trace() - q2) < 1e-12);
    CHECK_THROWS_AS(renormalize(s, -1.0, wc), InvalidInput);
}

TEST_CASE("system file round trip")
{
    const std::string path = "system_roundtrip_test.txt";
    save_system_file(taa6_system(), path);
    const auto back = load_system_file(path);
    CHECK((back.energies() - taa6_system().energies()).cwiseAbs().maxCoeff() < 1e-15);
    CHECK((back.coupling() - taa6_system().coupling()).cwiseAbs().maxCoeff() < 1e-15);
    std::remove(path.c_str());
    CHECK_THROWS_AS(load_system_file("no_such_system.txt"), IoError);
}

}
