#include "ccqme/units.hpp"

#include <cctype>
#include <charconv>
#include <cmath>

#include "ccqme/errors.hpp"

namespace ccqme::units {

double beta_from_kelvin(double kelvin)
{
    if (!(kelvin > 0.0) || !std::isfinite(kelvin))
        throw InvalidInput("temperature must be positive and finite, got " + std::to_string(kelvin));
    return 1.0 / (boltzmann_hartree_per_kelvin * kelvin);
}

std::string_view dimension_name(Dimension dim)
{
    switch (dim) {
    case Dimension::energy: return "energy";
    case Dimension::temperature: return "temperature";
    case Dimension::time: return "time";
    case Dimension::length: return "length";
    case Dimension::dimensionless: return "dimensionless";
    }
    return "unknown";
}

namespace {

std::string_view trim(std::string_view s)
{
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

}  // namespace

double parse_quantity(std::string_view text, Dimension dim)
{
    auto s = trim(text);
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || !std::isfinite(value))
        throw ConfigError("cannot parse numeric value in '" + std::string(text) + "'");
    auto unit = trim(std::string_view(ptr, static_cast<size_t>(s.data() + s.size() - ptr)));

    auto bad_unit = [&] {
        return ConfigError("unit '" + std::string(unit) + "' is not valid for a " +
                           std::string(dimension_name(dim)) + " quantity in '" + std::string(text) + "'");
    };

    if (unit.empty() || unit == "au") return value;
    switch (dim) {
    case Dimension::energy:
        if (unit == "hartree") return value;
        if (unit == "cm-1") return value * hartree_per_wavenumber;
        throw bad_unit();
    case Dimension::temperature:
        if (unit == "kelvin" || unit == "K") return value;
        throw bad_unit();
    case Dimension::time:
        if (unit == "fs") return fs_to_au(value);
        if (unit == "ps") return fs_to_au(1000.0 * value);
        throw bad_unit();
    case Dimension::length:
        if (unit == "bohr") return value;
        throw bad_unit();
    case Dimension::dimensionless:
        throw bad_unit();
    }
    throw bad_unit();
}

}  // namespace ccqme::units
