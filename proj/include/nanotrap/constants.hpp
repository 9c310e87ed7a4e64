#pragma once

// CODATA 2018 values, SI units throughout.

namespace nanotrap {

inline constexpr double c_light = 299792458.0;          // m/s
inline constexpr double epsilon0 = 8.8541878128e-12;    // F/m
inline constexpr double mu0 = 1.25663706212e-6;         // H/m
inline constexpr double hbar = 1.054571817e-34;         // J s
inline constexpr double k_boltzmann = 1.380649e-23;     // J/K
inline constexpr double pi = 3.14159265358979323846;

// Energies are carried in joules internally and reported in temperature
// units (K, mK, uK) at the boundaries.
inline constexpr double joule_to_kelvin(double e) { return e / k_boltzmann; }
inline constexpr double kelvin_to_joule(double t) { return t * k_boltzmann; }

inline constexpr double joule_to_mK(double e) { return e / k_boltzmann * 1e3; }
inline constexpr double joule_to_uK(double e) { return e / k_boltzmann * 1e6; }

} // namespace nanotrap
