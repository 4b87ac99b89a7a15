#pragma once

#include <numbers>

// CODATA 2018 values, SI units.
namespace hylink::constants
{
inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;

inline constexpr double hbar = 1.054571817e-34;                // J s
inline constexpr double speed_of_light = 299792458.0;          // m / s
inline constexpr double vacuum_permittivity = 8.8541878128e-12; // F / m
inline constexpr double atomic_mass_unit = 1.66053906660e-27;  // kg

inline constexpr double seconds_per_ns = 1e-9;
inline constexpr double m2_per_cm2 = 1e-4;
} // namespace hylink::constants
