#include <doctest.h>

#include "ccqme/errors.hpp"
#include "ccqme/units.hpp"

using namespace ccqme;
using units::Dimension;

TEST_SUITE("units") {

TEST_CASE("room-temperature beta")
{
    CHECK(units::beta_from_kelvin(300.0) == doctest::Approx(1052.5834).epsilon(1e-7));
    CHECK_THROWS_AS(units::beta_from_kelvin(0.0), InvalidInput);
}

TEST_CASE("quantities convert to atomic units")
{
    CHECK(units::parse_quantity("500 cm-1", Dimension::energy) == doctest::Approx(500 * 4.556335e-6));
    CHECK(units::parse_quantity("2.28e-3 hartree", Dimension::energy) == 2.28e-3);
    CHECK(units::parse_quantity("  300 kelvin ", Dimension::temperature) == 300.0);
    CHECK(units::parse_quantity("300 K", Dimension::temperature) == 300.0);
    CHECK(units::parse_quantity("2500 fs", Dimension::time) == doctest::Approx(2500 / 0.02418884));
    CHECK(units::parse_quantity("2.5 ps", Dimension::time) == doctest::Approx(2500 / 0.02418884));
    CHECK(units::parse_quantity("1 au", Dimension::time) == 1.0);
    CHECK(units::parse_quantity("0.5", Dimension::length) == 0.5);
}

TEST_CASE("bad quantities are rejected")
{
    CHECK_THROWS_AS(units::parse_quantity("300 fs", Dimension::temperature), ConfigError);
    CHECK_THROWS_AS(units::parse_quantity("abc", Dimension::energy), ConfigError);
    CHECK_THROWS_AS(units::parse_quantity("1 parsec", Dimension::length), ConfigError);
}

TEST_CASE("barrier height")
{
    CHECK(units::barrier_height_hartree == doctest::Approx(7.1684e-3).epsilon(1e-4));
}

}
