#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <utility>

#include "fermat/errors.hpp"
#include "fermat/trajectories.hpp"
#include "fermat/variational.hpp"
#include "support.hpp"

using namespace fermat;
using testing_support::rel_err;
constexpr double pi = std::numbers::pi;

namespace {

PathProblem problem(MediumModel medium, PolarPoint start, PolarPoint end, std::size_t segments,
                    double tolerance = 1e-10, std::size_t max_iterations = 100) {
    return PathProblem{std::move(medium), start, end, segments, tolerance, max_iterations, {}};
}

// Largest relative gap between the optimized nodes and the exact conic.
double conic_deviation(const RayPath& path, const OrbitElements& el) {
    double worst = 0.0;
    for (const auto& s : path.samples) worst = std::max(worst, rel_err(s.r, conic_radius(s.phi, el)));
    return worst;
}

RayPath hyperbola_run(std::size_t segments, const OrbitElements& el) {
    PathProblem p = problem(MediumModel::newtonian(el.energy, el.schwarzschild_radius),
                  {conic_radius(-1.0, el), -1.0},
                  {conic_radius(1.0, el), 1.0},
                  segments);
    return minimize_path(p);
}

RayPath polyline(double turn, double speed_sign) {
    // Along y = 1 in +x, then bent clockwise (toward the origin) by `turn`.
    RayPath p;
    for (int i = -100; i <= 100; ++i) {
        double x, y;
        if (i <= 0) {
            x = 0.1 * i;
            y = 1.0;
        } else {
            x = 0.1 * i * std::cos(turn);
            y = 1.0 - 0.1 * i * std::sin(turn);
        }
        p.samples.push_back({std::hypot(x, y), std::atan2(y, x)});
    }
    if (speed_sign < 0) std::reverse(p.samples.begin(), p.samples.end());
    return p;
}

}  // namespace

TEST(OpticalLength, ConstantMediumChord) {
    RayPath p;
    const double eta = 1.5;
    for (int k = 0; k <= 10; ++k) {
        const double phi = 0.3 + 0.2 * k;
        p.samples.push_back({straight_line_radius(phi, 2.0), phi});
    }
    const auto& a = p.samples.front();
    const auto& b = p.samples.back();
    const double straight = std::hypot(a.r * std::cos(a.phi) - b.r * std::cos(b.phi),
                                       a.r * std::sin(a.phi) - b.r * std::sin(b.phi));
    EXPECT_LE(rel_err(optical_length(p, MediumModel::constant(eta)), eta * straight), 1e-13);
}

TEST(OpticalLength, ConvergesToArcIntegralQuadratically) {
    // Polygon inscribed in a circle of radius R: the exact arc is
    // eta(R) R dphi and the chord error falls as 1/N^2.
    const MediumModel m = MediumModel::newtonian(-1.0, 1.0);
    const double R = 2.0, span = 2.0;
    const double exact = std::sqrt(1.0 + 1.0 / R) * R * span;
    double previous = 0.0;
    for (int n : {16, 32, 64, 128}) {
        RayPath p;
        for (int k = 0; k <= n; ++k) p.samples.push_back({R, span * k / n});
        const double err = std::abs(optical_length(p, m) - exact);
        if (previous > 0.0) {
            EXPECT_NEAR(previous / err, 4.0, 0.05) << n;
        }
        previous = err;
    }
}

TEST(OpticalLength, GradientMatchesFiniteDifferences) {
    const MediumModel m = MediumModel::newtonian(-0.5, 1.0);
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> u(1.5, 3.0);
    RayPath p;
    for (int k = 0; k <= 20; ++k) p.samples.push_back({u(rng), 0.1 * k});
    const std::vector<double> g = optical_length_gradient(p, m);
    ASSERT_EQ(g.size(), p.size());
    for (std::size_t k = 0; k < p.size(); ++k) {
        const double h = 1e-5 * p.samples[k].r;
        RayPath up = p, down = p;
        up.samples[k].r += h;
        down.samples[k].r -= h;
        const double fd = (optical_length(up, m) - optical_length(down, m)) / (2.0 * h);
        EXPECT_NEAR(g[k], fd, 1e-6 * std::max(1.0, std::abs(fd))) << k;
    }
}

TEST(OpticalLength, RejectsSamplesOutsideValidity) {
    const MediumModel m = MediumModel::newtonian(0.5, 1.0);  // bound: r <= 2
    RayPath p;
    p.samples = {{1.0, 0.0}, {3.0, 0.5}};
    EXPECT_THROW(optical_length(p, m), DomainError);
}

TEST(MinimizePath, StraightLineInConstantMedium) {
    PathProblem p = problem(MediumModel::constant(1.3), {straight_line_radius(0.4, 2.0), 0.4},
                  {straight_line_radius(2.5, 2.0), 2.5}, 50);
    const RayPath path = minimize_path(p);
    ASSERT_EQ(path.size(), 51u);
    EXPECT_EQ(path.kind, PathKind::optimized);
    for (const auto& s : path.samples) EXPECT_NEAR(s.r * std::sin(s.phi), 2.0, 1e-8 * 2.0);
}

TEST(MinimizePath, EndpointsAreExact) {
    const OrbitElements el = orbit_elements(-1.0, 1.0, 0.5);
    PathProblem p = problem(MediumModel::newtonian(-1.0, 0.5), {conic_radius(-1.0, el) * 1.01, -1.0},
                  {conic_radius(1.0, el), 1.0}, 40);
    const RayPath path = minimize_path(p);
    EXPECT_EQ(path.samples.front().r, p.start.r);
    EXPECT_EQ(path.samples.front().phi, p.start.phi);
    EXPECT_EQ(path.samples.back().r, p.end.r);
    EXPECT_EQ(path.samples.back().phi, p.end.phi);
}

TEST(MinimizePath, RecoversHyperbola) {
    const OrbitElements el = orbit_elements(-1.0, 1.0, 0.5);
    const RayPath path = hyperbola_run(1000, el);
    EXPECT_LE(conic_deviation(path, el), 1e-3);
    EXPECT_LE(angular_momentum_residual(path, MediumModel::newtonian(-1.0, 0.5), 1.0), 1e-3);
}

TEST(MinimizePath, DiscretizationErrorIsSecondOrder) {
    const OrbitElements el = orbit_elements(-1.0, 1.0, 0.5);
    double previous = 0.0;
    for (std::size_t n : {50, 100, 200}) {
        const double err = conic_deviation(hyperbola_run(n, el), el);
        if (previous > 0.0) {
            EXPECT_GT(previous / err, 3.0) << n;
            EXPECT_LT(previous / err, 5.0) << n;
        }
        previous = err;
    }
}

TEST(MinimizePath, FineGridStopsAtRoundoffFloor) {
    // At N = 4096 the 1e-10 target lies below what double precision resolves.
    const OrbitElements el = orbit_elements(-1.0, 1.0, 0.5);
    EXPECT_LE(conic_deviation(hyperbola_run(4096, el), el), 1e-6);
}

TEST(MinimizePath, BoundOrbitArc) {
    const OrbitElements el = orbit_elements(0.1, 1.0, 1.0);
    PathProblem p = problem(MediumModel::newtonian(0.1, 1.0), {conic_radius(-1.2, el), -1.2},
                  {conic_radius(1.2, el), 1.2}, 400);
    EXPECT_LE(conic_deviation(minimize_path(p), el), 1e-4);
}

TEST(MinimizePath, QuadrupoleDeflection) {
    const double ra = 1.0, rs = 1e-5, far = 1e4;
    const MediumModel m = MediumModel::quadrupole(-1.0, rs, ra);
    // Closest approach: the largest root of r^3 - r_a^2 r + R_s r_a^2, by Newton from r_a.
    double r0 = ra;
    for (int i = 0; i < 50; ++i) r0 -= (r0 * r0 * r0 - ra * ra * r0 + rs * ra * ra) / (3.0 * r0 * r0 - ra * ra);
    // Angle swept from closest approach out to `far`, with r = r0 + t^2.
    const double half_span = testing_support::tanh_sinh(
        [&](double t, double, double) {
            const double r = r0 + t * t;
            return 2.0 * ra / (r * std::sqrt((r * r + r0 * r + r0 * r0 - ra * ra) / r));
        },
        0.0, std::sqrt(far - r0), 1e-15);
    ASSERT_LT(2.0 * half_span, pi);

    const std::size_t n = 2000;
    PathProblem p = problem(m, {far, 0.0}, {far, 0.0}, n);
    p.angles = gudermannian_grid(0.5 * pi, half_span, std::asinh(far / ra), n);
    p.start.phi = p.angles.front();
    p.end.phi = p.angles.back();
    const double theta = measure_deflection(minimize_path(p));
    EXPECT_LE(rel_err(theta, 2.0 * rs / ra), 1e-3);
}

TEST(MinimizePath, Errors) {
    const MediumModel m = MediumModel::constant(1.0);
    PathProblem p = problem(m, {2.0, 0.1}, {2.0, 1.0}, 4);
    EXPECT_THROW(minimize_path(p), DomainError);
    p.segments = 16;
    p.tolerance = 0.0;
    EXPECT_THROW(minimize_path(p), DomainError);
    p.tolerance = 1e-10;
    p.end.phi = 0.1 + pi;
    EXPECT_THROW(minimize_path(p), DomainError);
    p.end.phi = 1.0;
    p.angles = {0.1, 1.0};
    EXPECT_THROW(minimize_path(p), DomainError);
    p.angles.clear();
    p.start.r = -1.0;
    EXPECT_THROW(minimize_path(p), DomainError);

    const OrbitElements el = orbit_elements(-1.0, 1.0, 0.5);
    PathProblem q = problem(MediumModel::newtonian(-1.0, 0.5), {conic_radius(-1.0, el), -1.0},
                  {conic_radius(1.0, el), 1.0}, 64, 1e-10, 0);
    EXPECT_THROW(minimize_path(q), ConvergenceError);
}

TEST(MeasureDeflection, Polyline) {
    for (double turn : {0.3, 0.01, -0.05}) {
        EXPECT_NEAR(measure_deflection(polyline(turn, 1.0)), turn, 1e-12) << turn;
        EXPECT_NEAR(measure_deflection(polyline(turn, -1.0)), turn, 1e-12) << turn;
    }
    EXPECT_NEAR(measure_deflection(polyline(0.0, 1.0)), 0.0, 1e-14);
    RayPath short_path;
    for (int i = 0; i < 10; ++i) short_path.samples.push_back({1.0 + i, 0.1 * i});
    EXPECT_THROW(measure_deflection(short_path), DomainError);
}

TEST(Gudermannian, Grid) {
    const auto g = gudermannian_grid(1.0, 0.5, 4.0, 100);
    ASSERT_EQ(g.size(), 101u);
    EXPECT_EQ(g.front(), 0.5);
    EXPECT_EQ(g.back(), 1.5);
    EXPECT_NEAR(g[50], 1.0, 1e-15);
    for (std::size_t k = 0; k < 100; ++k) {
        EXPECT_LT(g[k], g[k + 1]);
        EXPECT_NEAR(g[k] - 1.0, 1.0 - g[100 - k], 1e-14);
    }
    // Angular steps shrink toward the asymptotes, where r grows.
    EXPECT_GT(g[51] - g[50], 10.0 * (g[1] - g[0]));
    EXPECT_THROW(gudermannian_grid(0.0, 1.0, 0.0, 10), DomainError);
}
