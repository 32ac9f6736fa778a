#include "fermat/relativity.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "fermat/eikonal.hpp"
#include "fermat/errors.hpp"
#include "fermat/quadrature.hpp"
#include "fermat/units.hpp"

namespace fermat {
namespace {

constexpr double pi = std::numbers::pi;

void require_positive(double value, const char* what) {
    if (!(value > 0.0) || !std::isfinite(value)) {
        throw DomainError(std::string(what) + " must be positive");
    }
}

}  // namespace

DelayResult radar_delay(const DelayScenario& s, double c) {
    require_positive(s.earth_distance, "radar_delay: earth distance");
    require_positive(s.target_distance, "radar_delay: target distance");
    require_positive(s.impact_parameter, "radar_delay: impact parameter");
    if (!(s.schwarzschild_radius >= 0.0)) {
        throw DomainError("radar_delay: Schwarzschild radius must be non-negative");
    }
    require_positive(c, "radar_delay: speed of light");
    const double xe = s.earth_distance;
    const double xv = s.target_distance;
    const double R = s.impact_parameter;
    // -x_E + sqrt(R^2 + x_E^2) rewritten without cancellation.
    const double near = R * R / (xe + std::hypot(R, xe));
    const double far = xv + std::hypot(R, xv);

    DelayResult out{};
    out.one_way_exact = s.schwarzschild_radius / c * std::log(far / near);
    out.round_trip_exact = 2.0 * out.one_way_exact;
    out.round_trip_approximate = 2.0 * s.schwarzschild_radius / c * std::log(4.0 * xe * xv / (R * R));
    out.far_field = R <= 1e-2 * std::min(xe, xv);
    return out;
}

double radar_delay_quadrature(const DelayScenario& s, double c) {
    (void)radar_delay(s, c);  // validation
    const double R = s.impact_parameter;
    const double rs = s.schwarzschild_radius;
    // (eta^2 - 1) / c along the chord, eta^2 = 1 + R_s / r, r = sqrt(R^2 + x^2).
    auto excess = [=](double x) { return rs / std::hypot(R, x) / c; };
    quad::Options opts;
    opts.abs_tol = 0.0;
    opts.rel_tol = 1e-13;
    // The integrand is peaked at x = 0 with width R; split there.
    const double left = quad::require(quad::integrate(excess, -s.earth_distance, 0.0, opts), "radar delay");
    const double right = quad::require(quad::integrate(excess, 0.0, s.target_distance, opts), "radar delay");
    return left + right;
}

NewtonianDeflection deflection_newtonian(double caustic_radius, double schwarzschild_radius) {
    require_positive(caustic_radius, "deflection_newtonian: r_a");
    if (!(schwarzschild_radius >= 0.0)) {
        throw DomainError("deflection_newtonian: R_s must be non-negative");
    }
    if (schwarzschild_radius >= 2.0 * caustic_radius) {
        throw DomainError("deflection_newtonian: R_s >= 2 r_a");
    }
    NewtonianDeflection out{};
    out.eccentricity = schwarzschild_radius > 0.0 ? 2.0 * caustic_radius / schwarzschild_radius
                                                  : std::numeric_limits<double>::infinity();
    out.deflection = 2.0 * std::asin(schwarzschild_radius / (2.0 * caustic_radius));
    out.total_angle = pi + out.deflection;
    out.small_angle = schwarzschild_radius / caustic_radius;
    return out;
}

QuadrupoleDeflection deflection_quadrupole(double caustic_radius, double schwarzschild_radius) {
    require_positive(caustic_radius, "deflection_quadrupole: r_a");
    if (!(schwarzschild_radius >= 0.0)) {
        throw DomainError("deflection_quadrupole: R_s must be non-negative");
    }
    const double ratio = schwarzschild_radius / caustic_radius;
    quad::Options opts;
    opts.abs_tol = 0.0;
    opts.rel_tol = 1e-14;
    // sigma = sin t removes the 1/sqrt(1 - sigma^2) endpoint singularity.
    auto straight = [](double) { return 1.0; };
    auto bend = [](double t) { return std::sin(t); };
    const double half_pi = 0.5 * pi;
    const double straight_part =
        2.0 * quad::require(quad::integrate(straight, 0.0, half_pi, opts), "deflection");
    const double bend_part =
        2.0 * ratio * quad::require(quad::integrate(bend, 0.0, half_pi, opts), "deflection");

    QuadrupoleDeflection out{};
    out.deflection = 2.0 * ratio;
    out.total_angle = pi + out.deflection;
    out.deflection_quadrature = bend_part;
    out.total_angle_quadrature = straight_part + bend_part;
    out.weak_field = ratio <= 1e-2;
    return out;
}

double cross_section(double deflection, double schwarzschild_radius) {
    require_positive(deflection, "cross_section: deflection angle");
    return 8.0 * pi * schwarzschild_radius * schwarzschild_radius /
           (deflection * deflection * deflection);
}

double quadrupole_impact_parameter(double deflection, double schwarzschild_radius) {
    require_positive(deflection, "quadrupole_impact_parameter: deflection angle");
    return 2.0 * schwarzschild_radius / deflection;
}

PerihelionAdvance perihelion_advance(const OrbitElements& el) {
    if (!el.bound() || !(el.eccentricity < 1.0)) {
        throw DomainError("perihelion_advance: orbit is not bound");
    }
    const double rs = el.schwarzschild_radius;
    const double ra = el.caustic_radius;
    const double a = *el.semi_axis;
    const double e = el.eccentricity;
    return {1.5 * pi * rs * rs / (ra * ra), 3.0 * pi * rs / (a * (1.0 - e * e))};
}

double perihelion_advance_quadrature(const OrbitElements& el) {
    if (!el.bound()) throw DomainError("perihelion_advance_quadrature: orbit is not bound");
    const double h = 1e-4 * el.caustic_radius;
    auto increment = [&](double ra) {
        return perihelion_expansion_terms(orbit_elements(el.energy, ra, el.schwarzschild_radius))
            .first_order_quadrature;
    };
    return -(increment(el.caustic_radius + h) - increment(el.caustic_radius - h)) / (2.0 * h);
}

OrbitElements mercury_elements(const MercuryInputs& in) {
    require_positive(in.semi_major_axis, "mercury: semi-major axis");
    require_positive(in.schwarzschild_radius, "mercury: Schwarzschild radius");
    if (!(in.eccentricity >= 0.0 && in.eccentricity < 1.0)) {
        throw DomainError("mercury: eccentricity must lie in [0, 1)");
    }
    const double rs = in.schwarzschild_radius;
    const double energy = rs / (2.0 * in.semi_major_axis);
    const double q = in.semi_major_axis * (1.0 - in.eccentricity * in.eccentricity);
    return orbit_elements(energy, std::sqrt(0.5 * q * rs), rs);
}

std::vector<ObservableReport> mercury_report(const MercuryInputs& in) {
    const OrbitElements el = mercury_elements(in);
    const double A = el.energy;
    const double rs = el.schwarzschild_radius;
    const double c = in.speed_of_light;
    const double minor_axis = el.caustic_radius / std::sqrt(A);
    const double mean_motion = 2.0 * c * std::pow(A, 1.5) / rs;
    const double period_days = 2.0 * pi / mean_motion / constants::seconds_per_day;
    const double advance = perihelion_advance(el).from_conic;
    const double advance_rate = mean_motion * advance;

    std::ostringstream echo;
    echo.precision(12);
    echo << "a=" << in.semi_major_axis << " m; eps=" << in.eccentricity << "; R_s=" << rs
         << " m; c=" << c << " m/s";
    const std::string inputs = echo.str();

    return {
        {"energy_constant", A, "1", Method::exact, 2.59e-8, inputs},
        {"semi_minor_axis", minor_axis, "m", Method::exact, std::nullopt, inputs},
        {"mean_motion", mean_motion, "1/s", Method::exact, 8.34e-7, inputs},
        {"period", period_days, "day", Method::exact, 87.25, inputs},
        {"perihelion_advance", radians_to_arcsec(advance), "arcsec/rev", Method::approximate, 0.104,
         inputs},
        {"perihelion_rate", advance_rate, "1/s", Method::approximate, 4.25e-13, inputs},
    };
}

MollerVelocities moller_split(double r, double caustic_radius, double schwarzschild_radius) {
    require_positive(r, "moller_split: r");
    require_positive(caustic_radius, "moller_split: r_a");
    if (!(schwarzschild_radius >= 0.0) || schwarzschild_radius >= r) {
        throw DomainError("moller_split: requires 0 <= R_s < r");
    }
    const double x = schwarzschild_radius / r;
    const double b = caustic_radius / r;
    const double dilation = 1.0 / (1.0 - x) - b * b;
    const double corrected = 1.0 - x - b * b + x * b * b;
    const double verbatim = 1.0 - x - caustic_radius * b + x * b * b;
    const double kepler = 1.0 + x - b * b;
    if (dilation < 0.0 || corrected < 0.0 || kepler < 0.0) {
        throw DomainError("moller_split: negative radicand, r inside the turning point");
    }
    MollerVelocities out{};
    out.time_dilation = std::sqrt(dilation);
    out.spatial_corrected = std::sqrt(corrected);
    out.spatial_verbatim =
        verbatim >= 0.0 ? std::sqrt(verbatim) : std::numeric_limits<double>::quiet_NaN();
    out.kepler = std::sqrt(kepler);
    return out;
}

}  // namespace fermat
