#include "fermat/trajectories.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "fermat/errors.hpp"

namespace fermat {

double conic_radius(double phi, const OrbitElements& el) {
    const double denom = 1.0 + el.eccentricity * std::cos(phi);
    if (!(denom > 0.0)) throw DomainError("conic_radius: phi at or beyond the asymptote");
    return el.semi_latus_rectum / denom;
}

double orbit_angle(double r, double caustic_radius, double index) {
    if (!(r > 0.0)) throw DomainError("orbit_angle: r must be positive");
    if (!(caustic_radius > 0.0) || !(index > 0.0)) {
        throw DomainError("orbit_angle: r_a and index must be positive");
    }
    const double ratio = caustic_radius / (index * r);
    if (ratio <= 1.0) return std::acos(ratio);
    return std::acosh(ratio);
}

double straight_line_radius(double phi, double caustic_radius, double index) {
    const double s = std::sin(phi);
    if (!(s > 0.0)) throw DomainError("straight_line_radius: phi outside (0, pi)");
    return caustic_radius / (index * s);
}

double radial_velocity(double r, const OrbitElements& el) {
    if (!(r > 0.0)) throw DomainError("radial_velocity: r must be positive");
    const double A = el.energy;
    double radicand;
    // Factored about the turning points so the zeros are exact.
    if (el.bound()) {
        radicand = A * (r - el.r_minus) * (*el.r_plus - r);
    } else if (el.hyperbolic()) {
        radicand = -A * (r - el.r_minus) * (r + *el.semi_axis * (1.0 + el.eccentricity));
    } else {
        radicand = el.schwarzschild_radius * (r - el.r_minus);
    }
    const double scale = el.caustic_radius * el.caustic_radius;
    if (radicand < -1e-12 * scale) throw DomainError("radial_velocity: r in forbidden region");
    return std::sqrt(std::max(0.0, radicand)) / r;
}

double anomaly_radius(double u, const OrbitElements& el) {
    if (el.parabolic()) throw DomainError("anomaly_radius: undefined for a parabolic orbit");
    const double a = *el.semi_axis;
    if (el.bound()) return a * (1.0 - el.eccentricity * std::cos(u));
    return a * (el.eccentricity * std::cosh(u) - 1.0);
}

double anomaly_from_radius(double r, const OrbitElements& el, Direction direction) {
    if (el.parabolic()) throw DomainError("anomaly_from_radius: undefined for a parabolic orbit");
    const double a = *el.semi_axis;
    const double e = el.eccentricity;
    const double tol = 1e-12;
    double u;
    if (el.bound()) {
        if (e == 0.0) return 0.0;
        const double c = (1.0 - r / a) / e;
        if (std::abs(c) > 1.0 + tol) throw DomainError("anomaly_from_radius: r outside the libration");
        u = std::acos(std::clamp(c, -1.0, 1.0));
    } else {
        const double c = (1.0 + r / a) / e;
        if (c < 1.0 - tol) throw DomainError("anomaly_from_radius: r below closest approach");
        u = std::acosh(std::max(1.0, c));
    }
    return direction == Direction::outbound ? u : -u;
}

RayPath sample_conic(const OrbitElements& el, double phi_begin, double phi_end, std::size_t count) {
    if (count < 2) throw DomainError("sample_conic: need at least two samples");
    if (el.hyperbolic()) {
        // Clip to r <= 1e6 r_min: 1 + e cos(phi) >= q / (1e6 r_min).
        const double floor = el.semi_latus_rectum / (1e6 * el.r_minus);
        const double limit = std::acos(std::clamp((floor - 1.0) / el.eccentricity, -1.0, 1.0));
        phi_begin = std::clamp(phi_begin, -limit, limit);
        phi_end = std::clamp(phi_end, -limit, limit);
    }
    RayPath path;
    path.kind = PathKind::analytic;
    path.samples.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        const double t = static_cast<double>(i) / static_cast<double>(count - 1);
        const double phi = phi_begin + t * (phi_end - phi_begin);
        path.samples.push_back({conic_radius(phi, el), phi});
    }
    return path;
}

std::vector<double> angular_momentum_profile(const RayPath& path, const MediumModel& medium) {
    const auto& s = path.samples;
    if (s.size() < 3) throw DomainError("angular_momentum_residual: need at least three samples");
    std::vector<double> values;
    values.reserve(s.size() - 2);
    for (std::size_t i = 1; i + 1 < s.size(); ++i) {
        // phi' = dphi/dr via a common path parameter, so that turning points
        // (dr = 0) stay finite.
        const double dr = s[i + 1].r - s[i - 1].r;
        const double dphi = s[i + 1].phi - s[i - 1].phi;
        const double r = s[i].r;
        const double eta = medium.refractive_index(r);
        const double norm = std::hypot(dr, r * dphi);
        values.push_back(eta * r * r * std::abs(dphi) / norm);
    }
    return values;
}

double angular_momentum_residual(const RayPath& path, const MediumModel& medium,
                                 double caustic_radius) {
    double worst = 0.0;
    for (double value : angular_momentum_profile(path, medium)) {
        worst = std::max(worst, std::abs(value - caustic_radius) / caustic_radius);
    }
    return worst;
}

double angular_momentum_residual(const RayPath& path, const MediumModel& medium) {
    const auto values = angular_momentum_profile(path, medium);
    const double mean = std::accumulate(values.begin(), values.end(), 0.0) /
                        static_cast<double>(values.size());
    double worst = 0.0;
    for (double value : values) worst = std::max(worst, std::abs(value - mean) / mean);
    return worst;
}

double energy_residual(const RayPath& path, const OrbitElements& el) {
    const double ra = el.caustic_radius;
    const double rs = el.schwarzschild_radius;
    double worst = 0.0;
    for (const auto& p : path.samples) {
        const double r = p.r;
        const double phidot = ra / (r * r);
        const double drdphi = r * r * el.eccentricity * std::sin(p.phi) / el.semi_latus_rectum;
        const double rdot = drdphi * phidot;
        const double potential = -rs / (2.0 * r);
        const double lhs = rdot * rdot + r * r * phidot * phidot + 2.0 * potential;
        const double scale = std::abs(el.energy) + rs / r;
        worst = std::max(worst, std::abs(lhs + el.energy) / scale);
    }
    return worst;
}

}  // namespace fermat
