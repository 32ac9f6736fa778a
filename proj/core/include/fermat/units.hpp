#pragma once

#include "fermat/constants.hpp"

namespace fermat {

/// Converts between SI and gravitational units (c = G = 1).  Lengths stay in
/// metres; times become light-metres and masses become G M / c^2.
class UnitSystem {
public:
    enum class Mode { gravitational, si };

    UnitSystem() = default;
    UnitSystem(double speed_of_light, double gravitational_constant);

    static UnitSystem standard() { return {}; }

    double c() const { return c_; }
    double G() const { return G_; }

    double time_to_gravitational(double seconds) const { return seconds * c_; }
    double time_to_si(double metres) const { return metres / c_; }
    double mass_to_gravitational(double kilograms) const { return kilograms * G_ / (c_ * c_); }
    double mass_to_si(double metres) const { return metres * c_ * c_ / G_; }
    double rate_to_gravitational(double per_second) const { return per_second / c_; }
    double rate_to_si(double per_metre) const { return per_metre * c_; }

    /// Schwarzschild radius 2GM/c^2 of a mass given in kilograms.
    double schwarzschild_radius(double kilograms) const {
        return 2.0 * mass_to_gravitational(kilograms);
    }

private:
    double c_ = constants::speed_of_light;
    double G_ = constants::gravitational_constant;
};

inline double radians_to_arcsec(double rad) { return rad * constants::arcsec_per_radian; }
inline double arcsec_to_radians(double arcsec) { return arcsec / constants::arcsec_per_radian; }

}  // namespace fermat
