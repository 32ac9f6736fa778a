#include "fermat/medium.hpp"

#include <cmath>
#include <string>

#include "fermat/errors.hpp"
#include "fermat/roots.hpp"

namespace fermat {
namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require_positive(double value, const char* name) {
    if (!(value > 0.0) || !std::isfinite(value)) {
        throw DomainError(std::string("medium: ") + name + " must be positive and finite");
    }
}

void require_non_negative(double value, const char* name) {
    if (!(value >= 0.0) || !std::isfinite(value)) {
        throw DomainError(std::string("medium: ") + name + " must be non-negative and finite");
    }
}

void validate(const MediumModel::Law& law) {
    std::visit(overloaded{
                   [](const ConstantIndex& m) { require_positive(m.index, "index"); },
                   [](const NewtonianPotential& m) {
                       require_non_negative(m.schwarzschild_radius, "schwarzschild radius");
                   },
                   [](const QuadrupolePotential& m) {
                       require_non_negative(m.schwarzschild_radius, "schwarzschild radius");
                       require_positive(m.caustic_radius, "caustic radius");
                       require_non_negative(m.coupling, "quadrupole coupling");
                   },
                   [](const PerihelionPotential& m) {
                       require_positive(m.schwarzschild_radius, "schwarzschild radius");
                       require_positive(m.caustic_radius, "caustic radius");
                   },
               },
               law);
}

double lower_bound(const MediumModel::Law& law) {
    if (const auto* p = std::get_if<PerihelionPotential>(&law)) {
        return 1.5 * p->schwarzschild_radius;
    }
    return 0.0;
}

}  // namespace

MediumModel::MediumModel(Law law) : law_(law) {
    validate(law_);
    validity_.lower = lower_bound(law_);

    // eta^2 is non-increasing in r for every law, so the valid set is
    // (lower, root] or (lower, inf).
    if (-energy() >= 0.0) return;

    double lo = validity_.lower > 0.0 ? validity_.lower : 1.0;
    if (validity_.lower > 0.0) {
        if (index_squared_unchecked(lo * (1.0 + 1e-15)) < 0.0) {
            throw DomainError("medium: index of refraction is imaginary everywhere");
        }
    } else {
        while (index_squared_unchecked(lo) < 0.0) {
            lo *= 0.5;
            if (lo < 1e-300) throw DomainError("medium: no region with real index");
        }
    }
    double hi = lo * 2.0;
    while (index_squared_unchecked(hi) >= 0.0) {
        lo = hi;
        hi *= 2.0;
    }
    validity_.upper = bisect([this](double r) { return index_squared_unchecked(r); }, lo, hi, 1e-15);
    // Keep the upper end on the non-negative side.
    while (index_squared_unchecked(validity_.upper) < 0.0) {
        validity_.upper = std::nextafter(validity_.upper, 0.0);
    }
}

double MediumModel::energy() const {
    return std::visit(overloaded{
                          [](const ConstantIndex& m) { return -m.index * m.index; },
                          [](const NewtonianPotential& m) { return m.energy; },
                          [](const QuadrupolePotential& m) { return m.energy; },
                          [](const PerihelionPotential& m) { return m.energy; },
                      },
                      law_);
}

double MediumModel::potential(double r) const {
    return std::visit(
        overloaded{
            [](const ConstantIndex&) { return 0.0; },
            [r](const NewtonianPotential& m) { return -m.schwarzschild_radius / (2.0 * r); },
            [r](const QuadrupolePotential& m) {
                const double x = m.caustic_radius / r;
                return -m.schwarzschild_radius / (2.0 * r) * m.coupling * x * x;
            },
            [r](const PerihelionPotential& m) {
                const double x = m.caustic_radius / r;
                return -m.schwarzschild_radius / (2.0 * r) * (1.0 + x * x);
            },
        },
        law_);
}

double MediumModel::index_squared_unchecked(double r) const {
    return -energy() - 2.0 * potential(r);
}

double MediumModel::index_squared_slope(double r) const {
    return std::visit(
        overloaded{
            [](const ConstantIndex&) { return 0.0; },
            [r](const NewtonianPotential& m) { return -m.schwarzschild_radius / (r * r); },
            [r](const QuadrupolePotential& m) {
                const double ra2 = m.caustic_radius * m.caustic_radius;
                return -3.0 * m.coupling * m.schwarzschild_radius * ra2 / (r * r * r * r);
            },
            [r](const PerihelionPotential& m) {
                const double ra2 = m.caustic_radius * m.caustic_radius;
                return -m.schwarzschild_radius / (r * r) -
                       3.0 * m.schwarzschild_radius * ra2 / (r * r * r * r);
            },
        },
        law_);
}

double MediumModel::index_squared(double r) const {
    if (!(r > 0.0)) throw DomainError("refractive_index: radius must be positive");
    if (!validity_.contains(r)) {
        throw DomainError("refractive_index: r = " + std::to_string(r) +
                          " is outside the validity interval of the medium");
    }
    return std::max(0.0, index_squared_unchecked(r));
}

double MediumModel::refractive_index(double r) const { return std::sqrt(index_squared(r)); }

double refractive_index(const MediumModel& model, double r) { return model.refractive_index(r); }

OrbitElements orbit_elements(double energy, double caustic_radius, double schwarzschild_radius) {
    if (!(caustic_radius > 0.0) || !(schwarzschild_radius > 0.0)) {
        throw DomainError("orbit_elements: r_a and R_s must be positive");
    }
    const double ra = caustic_radius;
    const double rs = schwarzschild_radius;
    double e2 = 1.0 - 4.0 * energy * ra * ra / (rs * rs);
    if (e2 < 0.0) {
        if (e2 < -1e-12) {
            throw DomainError("orbit_elements: 4 A r_a^2 > R_s^2, eccentricity is imaginary");
        }
        e2 = 0.0;
    }

    OrbitElements el{};
    el.energy = energy;
    el.caustic_radius = ra;
    el.schwarzschild_radius = rs;
    el.eccentricity = std::sqrt(e2);
    el.semi_latus_rectum = 2.0 * ra * ra / rs;

    if (energy > 0.0) {
        const double a = rs / (2.0 * energy);
        el.semi_axis = a;
        el.r_minus = el.semi_latus_rectum / (1.0 + el.eccentricity);
        el.r_plus = a * (1.0 + el.eccentricity);
    } else if (energy < 0.0) {
        const double a = rs / (2.0 * -energy);
        el.semi_axis = a;
        el.r_minus = el.semi_latus_rectum / (1.0 + el.eccentricity);
    } else {
        el.eccentricity = 1.0;
        el.r_minus = 0.5 * el.semi_latus_rectum;
    }
    return el;
}

}  // namespace fermat
