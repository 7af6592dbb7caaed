// units.hpp: atomic-unit constants and unit-tagged quantity parsing
#pragma once

#include <string>
#include <string_view>

namespace ccqme::units {

inline constexpr double boltzmann_hartree_per_kelvin = 3.166811563e-6;
inline constexpr double hartree_per_wavenumber = 4.556335e-6;
inline constexpr double fs_per_au_time = 0.02418884;
inline constexpr double proton_mass = 1836.15;

// Barrier height of the proton-transfer double well, 1573.3 cm^-1.
inline constexpr double barrier_height_hartree = 1573.3 * hartree_per_wavenumber;

double beta_from_kelvin(double kelvin);
inline double au_to_fs(double t) { return t * fs_per_au_time; }
inline double fs_to_au(double t) { return t / fs_per_au_time; }

enum class Dimension { energy, temperature, time, length, dimensionless };

// Parses strings like "300 kelvin", "500 cm-1", "2.28e-3 hartree", "2500 fs",
// "1 au". A bare number is accepted and taken in atomic units.
// Returns the value converted to atomic units (kelvin stays kelvin).
double parse_quantity(std::string_view text, Dimension dim);

std::string_view dimension_name(Dimension dim);

}  // namespace ccqme::units
