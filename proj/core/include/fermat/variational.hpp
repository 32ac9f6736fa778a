#pragma once

#include <cstddef>
#include <vector>

#include "fermat/medium.hpp"
#include "fermat/trajectories.hpp"

namespace fermat {

/// Discretized Fermat problem: a polygon with pinned endpoints whose interior
/// nodes sit on fixed polar rays phi_k and move only in r.
struct PathProblem {
    MediumModel medium;
    PolarPoint start;
    PolarPoint end;
    std::size_t segments = 64;  ///< N >= 8
    double tolerance = 1e-10;
    std::size_t max_iterations = 100;
    /// Optional polar grid of size segments + 1; its first and last entries
    /// must equal start.phi and end.phi.  Empty means uniform in phi.
    std::vector<double> angles;
};

/// Sum over chords of eta at the chord midpoint times the chord length.
double optical_length(const RayPath& path, const MediumModel& medium);

/// d(optical_length)/dr_k for every sample; endpoint entries included.
std::vector<double> optical_length_gradient(const RayPath& path, const MediumModel& medium);

/// Newton iteration on the interior radii with a tridiagonal Hessian,
/// started from the straight chord.  Converged when every derivative of the
/// optical length with respect to ln r_k is at most tolerance * length / N,
/// or, node by node, within the roundoff floor 4 eps r_k^2 |H_kk| that a
/// one-ulp change of r_k produces (relevant for large N and small tolerance).
RayPath minimize_path(const PathProblem& p);

/// Turning angle between least-squares lines through the first and last 10%
/// of the samples.  Positive when the path bends toward the origin.
double measure_deflection(const RayPath& path);

/// Polar grid phi = mid + half_span * gd(u) / gd(U) for u uniform in
/// [-U, U], gd the Gudermannian: nodes cluster near closest approach and
/// spread geometrically along the asymptotes.
std::vector<double> gudermannian_grid(double mid, double half_span, double u_max,
                                      std::size_t segments);

}  // namespace fermat
