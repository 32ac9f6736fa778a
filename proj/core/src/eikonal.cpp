#include "fermat/eikonal.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "fermat/errors.hpp"
#include "fermat/quadrature.hpp"
#include "fermat/roots.hpp"

namespace fermat {
namespace {

constexpr double pi = std::numbers::pi;
constexpr double series_cutoff = 0.1;

// w - atan(w); the series avoids cancellation near the caustic.
double tan_minus_angle(double w) {
    if (w >= series_cutoff) return w - std::atan(w);
    const double w2 = w * w;
    double term = w * w2;
    double sum = 0.0;
    for (int k = 1; k < 40; ++k) {
        const double contribution = term / (2 * k + 1);
        sum += (k % 2 == 1) ? contribution : -contribution;
        if (contribution < 1e-18 * sum) break;
        term *= w2;
    }
    return sum;
}

// atanh(t) - t for 0 <= t < 1.
double angle_minus_tanh(double t) {
    if (t >= series_cutoff) return std::atanh(t) - t;
    const double t2 = t * t;
    double term = t * t2;
    double sum = 0.0;
    for (int k = 1; k < 40; ++k) {
        const double contribution = term / (2 * k + 1);
        sum += contribution;
        if (contribution < 1e-18 * sum) break;
        term *= t2;
    }
    return sum;
}

EikonalValue periodic(double value, double r, double ra) {
    return {std::max(0.0, value), 0.0, Branch::periodic, r, ra};
}

}  // namespace

EikonalValue eikonal_free(double r, double caustic_radius, double index) {
    if (!(r > 0.0)) throw DomainError("eikonal_free: r must be positive");
    if (!(caustic_radius > 0.0)) throw DomainError("eikonal_free: r_a must be positive");
    if (!(index > 0.0)) throw DomainError("eikonal_free: index must be positive");
    const double u = index * r;
    const double ra = caustic_radius;
    if (u < ra) return eikonal_shadow(r, ra, index);
    const double w = std::sqrt((u - ra) * (u + ra)) / ra;
    return periodic(ra * tan_minus_angle(w), r, ra);
}

EikonalValue eikonal_shadow(double r, double caustic_radius, double index) {
    if (!(r > 0.0)) throw DomainError("eikonal_shadow: r must be positive");
    if (!(caustic_radius > 0.0) || !(index > 0.0)) {
        throw DomainError("eikonal_shadow: r_a and index must be positive");
    }
    const double u = index * r;
    const double ra = caustic_radius;
    if (u > ra) throw DomainError("eikonal_shadow: eta r exceeds the caustic radius");
    const double t = std::sqrt((ra - u) * (ra + u)) / ra;
    return {0.0, ra * angle_minus_tanh(t), Branch::shadow, r, ra};
}

EikonalValue eikonal_parabolic(double r, double caustic_radius, double schwarzschild_radius) {
    if (!(r > 0.0) || !(caustic_radius > 0.0) || !(schwarzschild_radius > 0.0)) {
        throw DomainError("eikonal_parabolic: r, r_a and R_s must be positive");
    }
    const double ra = caustic_radius;
    const double radicand = schwarzschild_radius * r - ra * ra;
    if (radicand < -1e-12 * ra * ra) {
        throw DomainError("eikonal_parabolic: R_s r < r_a^2, below the turning point");
    }
    const double w = std::sqrt(std::max(0.0, radicand)) / ra;
    return periodic(2.0 * ra * tan_minus_angle(w), r, ra);
}

EikonalValue eikonal_kepler(double r, const OrbitElements& el) {
    if (el.parabolic()) {
        return eikonal_parabolic(r, el.caustic_radius, el.schwarzschild_radius);
    }
    const double A = el.energy;
    const double ra = el.caustic_radius;
    const double rs = el.schwarzschild_radius;
    const double e = el.eccentricity;
    const double q = el.semi_latus_rectum;
    const double a = *el.semi_axis;
    const double slack = 1e-12 * el.r_minus;

    if (r < el.r_minus - slack) throw DomainError("eikonal_kepler: r below the inner turning point");
    if (el.bound() && r > *el.r_plus * (1.0 + 1e-12)) {
        throw DomainError("eikonal_kepler: r beyond the aphelion");
    }
    r = std::max(r, el.r_minus);
    if (el.bound()) r = std::min(r, *el.r_plus);

    // Circular orbit: the libration interval is a single point.
    if (e < 1e-12) return periodic(0.0, r, ra);

    // -A r^2 + R_s r - r_a^2 in factored form about the turning points.
    // The second root is r_plus for an ellipse and -a(1 + eps) for a hyperbola.
    const double other = el.bound() ? *el.r_plus : -a * (1.0 + e);
    const double from_inner = r - el.r_minus;
    const double to_other = std::abs(other - r);
    const double radial = std::sqrt(std::abs(A) * from_inner * to_other);
    // Angles as atan2 of factored sines: arccos is ill-conditioned at both
    // turning points, where its argument reaches +-1.
    const double arc_cos = (q / r - 1.0) / e;
    const double arc_sin = std::sqrt((1.0 + e) * from_inner * std::abs(1.0 - e) * to_other) / (e * r);
    const double caustic_arc = ra * std::atan2(arc_sin, arc_cos);
    double gravitational;
    if (el.bound()) {
        const double anomaly = std::atan2(std::sqrt(from_inner * to_other) / (a * e), (1.0 - r / a) / e);
        gravitational = 0.5 * rs / std::sqrt(A) * anomaly;
    } else {
        const double anomaly = std::asinh(std::sqrt(from_inner * to_other) / (a * e));
        gravitational = 0.5 * rs / std::sqrt(-A) * anomaly;
    }
    // Every term vanishes at r_minus, so no extra constant is needed.
    return periodic(radial - caustic_arc + gravitational, r, ra);
}

double quadrupole_caustic(double caustic_radius, double schwarzschild_radius) {
    if (!(caustic_radius > 0.0) || !(schwarzschild_radius >= 0.0)) {
        throw DomainError("quadrupole_caustic: r_a must be positive and R_s non-negative");
    }
    const double ra = caustic_radius;
    const double rs = schwarzschild_radius;
    if (rs == 0.0) return ra;
    auto cubic = [ra, rs](double r) { return r * r * r - ra * ra * r + rs * ra * ra; };
    const double lo = ra / std::sqrt(3.0);
    if (cubic(lo) >= 0.0) {
        throw DomainError("quadrupole_caustic: R_s too large, no caustic below r_a");
    }
    const double r0 = bisect(cubic, lo, ra, 1e-15);
    return r0;
}

EikonalValue eikonal_quadrupole(double r, double caustic_radius, double schwarzschild_radius) {
    if (!(r > 0.0)) throw DomainError("eikonal_quadrupole: r must be positive");
    const double ra = caustic_radius;
    const double rs = schwarzschild_radius;
    const double r0 = quadrupole_caustic(ra, rs);
    if (r < r0 * (1.0 - 1e-13)) throw DomainError("eikonal_quadrupole: r below the caustic r0");
    if (rs == 0.0) return eikonal_free(r, ra, 1.0);
    const double f = (r * r * r - ra * ra * r + rs * ra * ra) / r;
    const double radial = std::sqrt(std::max(0.0, f));
    const double shrunk = ra * std::sqrt(1.0 - rs / r);
    return periodic(radial - ra * std::atan2(radial, shrunk), r, ra);
}

double eikonal_quadrature(const std::function<double(double)>& momentum_squared, double from,
                          double to) {
    auto integrand = [&](double rho) {
        return std::sqrt(std::max(0.0, momentum_squared(rho))) / rho;
    };
    quad::Options opts;
    opts.abs_tol = 0.0;
    opts.rel_tol = 1e-13;
    auto res = quad::integrate_sqrt_endpoints(integrand, from, to, opts);
    if (!res.converged && res.error > 1e-11 * std::abs(res.value)) {
        throw ConvergenceError("eikonal_quadrature: tolerance not reached");
    }
    return res.value;
}

LibrationInterval perihelion_libration(double energy, double caustic_radius,
                                       double schwarzschild_radius) {
    if (!(energy > 0.0)) throw DomainError("perihelion_libration: requires a bound orbit (A > 0)");
    const OrbitElements el = orbit_elements(energy, caustic_radius, schwarzschild_radius);
    const double ra = caustic_radius;
    const double rs = schwarzschild_radius;
    // r * (eta^2 r^2 - r_a^2) for eta^2 = -A + R_s/r + R_s r_a^2 / r^3.
    auto cubic = [=](double r) {
        return -energy * r * r * r + rs * r * r - ra * ra * r + rs * ra * ra;
    };
    const double floor = 1.5 * rs;
    double lo = el.r_minus;
    double step = std::max(1e-6 * el.r_minus, 4.0 * rs);
    while (cubic(lo) > 0.0) {
        lo -= step;
        step *= 2.0;
        if (lo <= floor) throw DomainError("perihelion_libration: libration interval is empty");
    }
    const double inner = bisect(cubic, lo, el.r_minus, 1e-15);
    double hi = *el.r_plus;
    step = std::max(1e-6 * hi, 4.0 * rs);
    while (cubic(hi) > 0.0) {
        hi += step;
        step *= 2.0;
    }
    const double outer = bisect(cubic, *el.r_plus, hi, 1e-15);
    if (!(outer > inner)) throw DomainError("perihelion_libration: libration interval is empty");
    return {inner, outer};
}

EikonalValue eikonal_perihelion(double r, double energy, double caustic_radius,
                                double schwarzschild_radius) {
    const auto span = perihelion_libration(energy, caustic_radius, schwarzschild_radius);
    if (r < span.inner * (1.0 - 1e-12) || r > span.outer * (1.0 + 1e-12)) {
        throw DomainError("eikonal_perihelion: r outside the libration interval");
    }
    r = std::clamp(r, span.inner, span.outer);
    const MediumModel medium =
        MediumModel::perihelion(energy, schwarzschild_radius, caustic_radius);
    const double ra = caustic_radius;
    auto momentum = [&](double rho) {
        return medium.index_squared_unchecked(rho) * rho * rho - ra * ra;
    };
    return periodic(eikonal_quadrature(momentum, span.inner, r), r, ra);
}

double libration_eikonal(const OrbitElements& el) {
    if (!el.bound()) throw DomainError("libration_eikonal: requires a bound orbit");
    const double A = el.energy;
    const double rm = el.r_minus;
    const double rp = *el.r_plus;
    auto momentum = [=](double rho) { return A * (rho - rm) * (rp - rho); };
    return 2.0 * eikonal_quadrature(momentum, rm, rp);
}

PerihelionTerms perihelion_expansion_terms(const OrbitElements& el) {
    if (!el.bound() || !(el.eccentricity < 1.0)) {
        throw DomainError("perihelion_expansion_terms: requires A > 0 and eccentricity < 1");
    }
    const double A = el.energy;
    const double ra = el.caustic_radius;
    const double rs = el.schwarzschild_radius;

    // Delta S0 is linear in r_a at fixed A, so a wide central step is exact
    // up to quadrature error.
    const double h = 1e-3 * ra;
    const double plus = libration_eikonal(orbit_elements(A, ra + h, rs));
    const double minus = libration_eikonal(orbit_elements(A, ra - h, rs));
    const double closure = -(plus - minus) / (2.0 * h);
    if (std::abs(closure - 2.0 * pi) > 1e-9 * 2.0 * pi) {
        throw ConvergenceError("perihelion_expansion_terms: unperturbed libration does not close (" +
                               std::to_string(closure) + ")");
    }

    // (3/4) R_s^2 * integral of dr / (r sqrt(-A r^2 + R_s r - r_a^2)), there and back.
    const double rm = el.r_minus;
    const double rp = *el.r_plus;
    auto integrand = [=](double r, double from_rm, double to_rp) {
        return 1.0 / (r * std::sqrt(A * from_rm * to_rp));
    };
    quad::Options opts;
    opts.abs_tol = 0.0;
    opts.rel_tol = 1e-13;
    const double half_orbit =
        quad::require(quad::integrate_sqrt_endpoints_split(integrand, rm, rp, opts),
                      "perihelion term");

    PerihelionTerms terms{};
    terms.unperturbed_closure = closure;
    terms.first_order = 1.5 * pi * rs * rs / ra;
    terms.first_order_quadrature = 2.0 * 0.75 * rs * rs * half_orbit;
    terms.weak_field = rs / ra <= 1e-2;
    return terms;
}

TractrixPoint tractrix_profile(double s) {
    if (!(s >= 0.0)) throw DomainError("tractrix_profile: s must be non-negative");
    const double root = std::sqrt(1.0 + s * s);
    return {s, std::asinh(s) - s / root, 1.0 / root};
}

}  // namespace fermat
