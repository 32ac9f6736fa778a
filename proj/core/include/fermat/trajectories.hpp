#pragma once

#include <cstddef>
#include <vector>

#include "fermat/medium.hpp"

namespace fermat {

struct PolarPoint {
    double r;
    double phi;
};

enum class PathKind { analytic, optimized };

/// Ordered (r, phi) samples of a ray, phi monotone along the path.
struct RayPath {
    std::vector<PolarPoint> samples;
    PathKind kind = PathKind::analytic;

    std::size_t size() const { return samples.size(); }
};

/// Sense of radial motion; selects the sign branch of an inverse anomaly.
enum class Direction { inbound, outbound };

/// r = q / (1 + eps cos phi).  Throws at or beyond a hyperbola asymptote.
double conic_radius(double phi, const OrbitElements& el);

/// Polar angle swept from the caustic tangency in a constant medium:
/// arccos(r_a / eta r) outside the caustic, arccosh(r_a / eta r) inside.
double orbit_angle(double r, double caustic_radius, double index = 1.0);

/// Straight ray r = r_a / (eta sin phi), tangent to the caustic at phi = pi/2.
double straight_line_radius(double phi, double caustic_radius, double index = 1.0);

/// |dr/dt| = sqrt(-A r^2 + R_s r - r_a^2) / r.
double radial_velocity(double r, const OrbitElements& el);

/// Eccentric anomaly to radius: a(1 - eps cos u) or a(eps cosh u - 1).
double anomaly_radius(double u, const OrbitElements& el);

/// Inverse of anomaly_radius; outbound motion has u >= 0.
double anomaly_from_radius(double r, const OrbitElements& el, Direction direction);

/// Samples the conic uniformly in phi over [phi_begin, phi_end].  Hyperbolic
/// arcs are clipped where r would exceed 1e6 r_min.
RayPath sample_conic(const OrbitElements& el, double phi_begin, double phi_end, std::size_t count);

/// Largest relative deviation of eta r^2 phi' / sqrt(1 + r^2 phi'^2) from
/// r_a over interior samples, phi' from central differences along the path.
double angular_momentum_residual(const RayPath& path, const MediumModel& medium,
                                 double caustic_radius);

/// As above, measured against the mean of the sampled invariant.  For paths
/// whose r_a is not known in advance.
double angular_momentum_residual(const RayPath& path, const MediumModel& medium);

/// Pointwise first-integral estimates, one per interior sample.
std::vector<double> angular_momentum_profile(const RayPath& path, const MediumModel& medium);

/// Largest relative violation of rdot^2 + r^2 phidot^2 + 2U(r) = -A along an
/// analytic conic path (rdot, phidot from the exact orbit).
double energy_residual(const RayPath& path, const OrbitElements& el);

}  // namespace fermat
