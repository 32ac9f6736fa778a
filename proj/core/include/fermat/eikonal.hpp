#pragma once

#include <functional>

#include "fermat/medium.hpp"

namespace fermat {

enum class Branch { periodic, shadow };

/// Eikonal S(r) measured from the inner turning point (caustic).
/// Periodic branch: real value >= 0, imag = 0.  Shadow branch: value = 0 and
/// the magnitude of the purely imaginary eikonal is carried in imag.
struct EikonalValue {
    double value = 0.0;
    double imag = 0.0;
    Branch branch = Branch::periodic;
    double r = 0.0;
    double caustic_radius = 0.0;
};

/// Point on the tractrix profile curve (canonical scale r_a = 1).
struct TractrixPoint {
    double s;  ///< arc parameter
    double g;  ///< distance along the axis of revolution
    double h;  ///< distance from the axis
};

/// Constant index: S = sqrt((eta r)^2 - r_a^2) - r_a arccos(r_a / eta r).
/// Falls through to the shadow branch when eta r < r_a.
EikonalValue eikonal_free(double r, double caustic_radius, double index = 1.0);

/// Shadow branch inside the caustic:
/// |S| = r_a arccosh(r_a / eta r) - sqrt(r_a^2 - (eta r)^2) = r_a (phi - tanh phi).
EikonalValue eikonal_shadow(double r, double caustic_radius, double index = 1.0);

/// Closed-form eikonal in the Newtonian medium eta^2 = -A + R_s/r.  Zero at
/// r_minus; defined on [r_minus, r_plus] for bound orbits and [r_min, inf)
/// for hyperbolic ones.  A = 0 delegates to eikonal_parabolic.
EikonalValue eikonal_kepler(double r, const OrbitElements& el);

/// A = 0: 2 sqrt(R_s r - r_a^2) - 2 r_a arccos(r_a / sqrt(R_s r)).
EikonalValue eikonal_parabolic(double r, double caustic_radius, double schwarzschild_radius);

/// Approximate eikonal in the quadrupole medium eta^2 = 1 + R_s r_a^2 / r^3.
EikonalValue eikonal_quadrupole(double r, double caustic_radius, double schwarzschild_radius);

/// Distance of closest approach r0 < r_a in the quadrupole medium: the largest
/// root of r^3 - r_a^2 r + R_s r_a^2 = 0.
double quadrupole_caustic(double caustic_radius, double schwarzschild_radius);

/// Turning points of the perihelion-medium radial motion.
struct LibrationInterval {
    double inner;
    double outer;
};

LibrationInterval perihelion_libration(double energy, double caustic_radius,
                                       double schwarzschild_radius);

/// Eikonal in the combined monopole + quadrupole medium, by quadrature from
/// the inner turning point.  There is no closed form.
EikonalValue eikonal_perihelion(double r, double energy, double caustic_radius,
                                double schwarzschild_radius);

struct PerihelionTerms {
    /// Angle swept over one unperturbed libration, -d(Delta S0)/d r_a.
    double unperturbed_closure;
    /// Closed form Delta S1 = (3/2) pi R_s^2 / r_a.
    double first_order;
    /// The same term from quadrature of the expansion integrand.
    double first_order_quadrature;
    /// False when R_s / r_a exceeds 1e-2 and the expansion is unreliable.
    bool weak_field;
};

/// Full-libration eikonal increment Delta S0 of the unperturbed Kepler motion.
double libration_eikonal(const OrbitElements& el);

PerihelionTerms perihelion_expansion_terms(const OrbitElements& el);

TractrixPoint tractrix_profile(double s);

/// Integral of sqrt(max(0, g(rho))) / rho over [from, to], where g is the
/// squared radial momentum eta^2 rho^2 - r_a^2 (or its negative in a shadow).
/// The square-root zeros at turning points are handled by substitution, so
/// either limit may be a turning point.  Used as the reference for every
/// closed-form eikonal.
double eikonal_quadrature(const std::function<double(double)>& momentum_squared, double from,
                          double to);

}  // namespace fermat
