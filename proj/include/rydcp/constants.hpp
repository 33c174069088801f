#pragma once

// CODATA 2018 values, SI units. Every other module takes its constants from here.

namespace rydcp::constants {

inline constexpr double pi = 3.14159265358979323846;

inline constexpr double hbar = 1.054571817e-34;            // J s
inline constexpr double planck = 6.62607015e-34;           // J s
inline constexpr double speed_of_light = 299792458.0;      // m / s
inline constexpr double boltzmann = 1.380649e-23;          // J / K
inline constexpr double epsilon0 = 8.8541878128e-12;       // F / m
inline constexpr double mu0 = 1.25663706212e-6;            // N / A^2
inline constexpr double elementary_charge = 1.602176634e-19;  // C
inline constexpr double bohr_radius = 5.29177210903e-11;   // m
inline constexpr double electron_mass = 9.1093837015e-31;  // kg
inline constexpr double atomic_mass_unit = 1.66053906660e-27;  // kg
inline constexpr double hartree = 4.3597447222071e-18;     // J
// Infinite-mass Rydberg energy, hc R_inf.
inline constexpr double rydberg_energy = 0.5 * hartree;    // J

}  // namespace rydcp::constants
