#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fermat/constants.hpp"
#include "fermat/medium.hpp"

namespace fermat {

/// Radar echo geometry: Earth at x = -earth_distance, target at
/// x = +target_distance, ray passing the Sun at impact_parameter.
struct DelayScenario {
    double earth_distance;
    double target_distance;
    double impact_parameter;
    double schwarzschild_radius;
};

struct DelayResult {
    double one_way_exact;          ///< (R_s/c) ln((x_V + sqrt(R^2+x_V^2)) / (-x_E + sqrt(R^2+x_E^2)))
    double round_trip_exact;       ///< twice the one-way excess
    double round_trip_approximate; ///< (2 R_s / c) ln(4 x_E x_V / R^2)
    bool far_field;                ///< R <= 1e-2 min(x_E, x_V), where the log form applies
};

/// Excess travel time [s] for light moving at the phase velocity c/eta in
/// eta^2 = 1 + R_s / r.  Lengths in metres.
DelayResult radar_delay(const DelayScenario& s, double c = constants::speed_of_light);

/// One-way excess by quadrature of (eta^2 - 1)/c along the straight chord.
double radar_delay_quadrature(const DelayScenario& s, double c = constants::speed_of_light);

struct NewtonianDeflection {
    double eccentricity;  ///< 2 r_a / R_s
    double total_angle;   ///< angle between asymptotes, pi + 2 arcsin(R_s / 2 r_a)
    double deflection;    ///< total_angle - pi
    double small_angle;   ///< R_s / r_a
};

/// Hyperbolic orbit with A = -1 in the Newtonian medium.
NewtonianDeflection deflection_newtonian(double caustic_radius, double schwarzschild_radius);

struct QuadrupoleDeflection {
    double total_angle;             ///< pi + 2 R_s / r_a
    double deflection;              ///< 2 R_s / r_a
    double total_angle_quadrature;  ///< 2 int_0^1 (1 + R_s s / r_a) / sqrt(1 - s^2) ds
    double deflection_quadrature;   ///< the R_s part of the same integral
    bool weak_field;                ///< R_s / r_a <= 1e-2
};

QuadrupoleDeflection deflection_quadrupole(double caustic_radius, double schwarzschild_radius);

/// Differential cross section 2 pi r_a |dr_a/dtheta| = 8 pi R_s^2 / theta^3.
double cross_section(double deflection, double schwarzschild_radius);

/// Impact parameter producing a quadrupole deflection theta: r_a = 2 R_s / theta.
double quadrupole_impact_parameter(double deflection, double schwarzschild_radius);

struct PerihelionAdvance {
    double from_caustic_radius;  ///< (3/2) pi R_s^2 / r_a^2
    double from_conic;           ///< 3 pi R_s / (a (1 - eps^2))
};

/// Perihelion rotation per revolution [rad].
PerihelionAdvance perihelion_advance(const OrbitElements& el);

/// -d(Delta S1)/d r_a with Delta S1 taken from quadrature over one libration
/// and the derivative from a central difference at fixed A and R_s.
double perihelion_advance_quadrature(const OrbitElements& el);

enum class Method { exact, approximate };

struct ObservableReport {
    std::string name;
    double value;
    std::string units;
    Method method;
    std::optional<double> reference;  ///< quoted literature value, if any
    std::string inputs;

    std::optional<double> relative_deviation() const {
        if (!reference) return std::nullopt;
        return value / *reference - 1.0;
    }
};

struct MercuryInputs {
    double semi_major_axis = constants::mercury::semi_major_axis;
    double eccentricity = constants::mercury::eccentricity;
    double schwarzschild_radius = constants::sun::schwarzschild_radius;
    double speed_of_light = constants::speed_of_light;
};

/// Mercury's orbit in the perihelion medium: orbital elements recovered
/// from (a, eps, R_s) and the derived mean motion and perihelion rates.
OrbitElements mercury_elements(const MercuryInputs& in = {});

/// Energy constant, semi-minor axis, mean motion, period, perihelion
/// advance per revolution and its rate, each against the quoted value.
std::vector<ObservableReport> mercury_report(const MercuryInputs& in = {});

struct MollerVelocities {
    double time_dilation;      ///< sqrt(1/(1 - R_s/r) - r_a^2/r^2)
    double spatial_verbatim;   ///< sqrt(1 - R_s/r - r_a^2/r + R_s r_a^2/r^3), literal form
    double spatial_corrected;  ///< same with r_a^2/r^2
    double kepler;             ///< sqrt(1 + R_s/r - r_a^2/r^2), the A = -1 radial velocity
    /// The printed r_a^2/r term has dimensions of length; always false.
    static constexpr bool verbatim_dimensionally_consistent = false;
};

/// The two radial-velocity contributions of the split deflection picture.
MollerVelocities moller_split(double r, double caustic_radius, double schwarzschild_radius);

}  // namespace fermat
