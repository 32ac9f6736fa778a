#pragma once

#include <limits>
#include <optional>
#include <variant>

namespace fermat {

/// Homogeneous medium, eta = index everywhere.
struct ConstantIndex {
    double index = 1.0;
};

/// eta^2 = -A + R_s / r (monopole potential U = -R_s / 2r).
struct NewtonianPotential {
    double energy;
    double schwarzschild_radius;
};

/// eta^2 = -A + c2 R_s r_a^2 / r^3.  Only the quadrupole term of the
/// multipole expansion is kept; the dipole coupling is identically zero.
struct QuadrupolePotential {
    double energy;
    double schwarzschild_radius;
    double caustic_radius;
    double coupling = 1.0;
};

/// eta^2 = -A + (R_s / r)(1 + r_a^2 / r^2): monopole plus unit quadrupole.
/// Defined for r > 3 R_s / 2 only.
struct PerihelionPotential {
    double energy;
    double schwarzschild_radius;
    double caustic_radius;
};

/// Radii where a medium law is evaluable: lower < r <= upper.
struct Interval {
    double lower = 0.0;
    double upper = std::numeric_limits<double>::infinity();

    bool contains(double r) const { return r > lower && r <= upper; }
    bool bounded() const { return upper < std::numeric_limits<double>::infinity(); }
};

/// Index-of-refraction law eta(r) = sqrt(-A - 2U(r)).
///
/// The validity interval (eta^2 >= 0) is located once at construction by
/// bisection; every evaluation outside it throws DomainError.
class MediumModel {
public:
    using Law = std::variant<ConstantIndex, NewtonianPotential, QuadrupolePotential,
                             PerihelionPotential>;

    explicit MediumModel(Law law);

    static MediumModel constant(double index) { return MediumModel(ConstantIndex{index}); }
    static MediumModel newtonian(double energy, double schwarzschild_radius) {
        return MediumModel(NewtonianPotential{energy, schwarzschild_radius});
    }
    static MediumModel quadrupole(double energy, double schwarzschild_radius,
                                  double caustic_radius, double coupling = 1.0) {
        return MediumModel(
            QuadrupolePotential{energy, schwarzschild_radius, caustic_radius, coupling});
    }
    static MediumModel perihelion(double energy, double schwarzschild_radius,
                                  double caustic_radius) {
        return MediumModel(PerihelionPotential{energy, schwarzschild_radius, caustic_radius});
    }

    const Law& law() const { return law_; }
    const Interval& validity() const { return validity_; }

    /// Energy constant A, so that eta^2 -> -A far from the source.
    double energy() const;
    /// Potential energy per unit mass U(r).
    double potential(double r) const;
    /// eta^2(r) without domain checks.
    double index_squared_unchecked(double r) const;
    /// d(eta^2)/dr.
    double index_squared_slope(double r) const;

    double index_squared(double r) const;
    double refractive_index(double r) const;

private:
    Law law_;
    Interval validity_;
};

double refractive_index(const MediumModel& model, double r);

/// Conic parameters of an orbit with energy constant A, caustic radius r_a
/// (angular momentum per unit mass) and Schwarzschild radius R_s.
struct OrbitElements {
    double energy;                  ///< A
    double caustic_radius;          ///< r_a
    double schwarzschild_radius;    ///< R_s
    double eccentricity;            ///< epsilon
    double semi_latus_rectum;       ///< q = 2 r_a^2 / R_s
    std::optional<double> semi_axis;  ///< a = R_s / 2|A|; absent for A = 0
    double r_minus;                 ///< perihelion (A > 0), closest approach otherwise
    std::optional<double> r_plus;   ///< aphelion, bound orbits only

    bool bound() const { return energy > 0.0; }
    bool hyperbolic() const { return energy < 0.0; }
    bool parabolic() const { return energy == 0.0; }
};

OrbitElements orbit_elements(double energy, double caustic_radius, double schwarzschild_radius);

}  // namespace fermat
