#pragma once

#include <numbers>

namespace fermat::constants {

inline constexpr double pi = std::numbers::pi;

/// Speed of light in vacuum [m/s] (exact, SI).
inline constexpr double speed_of_light = 299792458.0;
/// Newtonian gravitational constant [m^3 kg^-1 s^-2] (CODATA 2018).
inline constexpr double gravitational_constant = 6.67430e-11;

inline constexpr double arcsec_per_radian = 206264.806;
inline constexpr double seconds_per_day = 86400.0;

// Solar-system values used by the golden scenarios.
namespace sun {
/// Schwarzschild radius 2GM/c^2 [m], rounded as commonly quoted.
inline constexpr double schwarzschild_radius = 2953.0;
/// Photospheric radius [m], used as grazing impact parameter.
inline constexpr double radius = 6.96e8;
}  // namespace sun

namespace earth {
/// Mean Sun-Earth distance [m].
inline constexpr double orbital_radius = 1.496e11;
}  // namespace earth

namespace venus {
/// Mean Sun-Venus distance [m].
inline constexpr double orbital_radius = 1.082e11;
}  // namespace venus

namespace mercury {
/// Semi-major axis [m].
inline constexpr double semi_major_axis = 5.79e10;
inline constexpr double eccentricity = 0.2056;
}  // namespace mercury

}  // namespace fermat::constants
