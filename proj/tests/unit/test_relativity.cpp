#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "fermat/constants.hpp"
#include "fermat/errors.hpp"
#include "fermat/relativity.hpp"
#include "support.hpp"

using namespace fermat;
using testing_support::rel_err;
constexpr double pi = std::numbers::pi;
constexpr double c = 299792458.0;

namespace {
DelayScenario venus_conjunction() {
    return {1.496e11, 1.082e11, 6.96e8, 2953.0};
}

const ObservableReport& row(const std::vector<ObservableReport>& rows, const std::string& name) {
    auto it = std::find_if(rows.begin(), rows.end(), [&](const auto& r) { return r.name == name; });
    if (it == rows.end()) throw std::runtime_error("missing row " + name);
    return *it;
}
}  // namespace

TEST(RadarDelay, VenusSuperiorConjunction) {
    const DelayScenario s = venus_conjunction();
    const DelayResult d = radar_delay(s);
    const double log_form = 2.0 * s.schwarzschild_radius / c *
                            std::log(4.0 * s.earth_distance * s.target_distance /
                                     (s.impact_parameter * s.impact_parameter));
    EXPECT_LE(rel_err(d.round_trip_approximate, log_form), 1e-14);
    EXPECT_NEAR(d.round_trip_exact, 2.4e-4, 0.05 * 2.4e-4);
    EXPECT_LE(rel_err(d.round_trip_exact, d.round_trip_approximate), 1e-4);
    EXPECT_DOUBLE_EQ(d.round_trip_exact, 2.0 * d.one_way_exact);
    EXPECT_TRUE(d.far_field);
}

TEST(RadarDelay, ClosedFormMatchesQuadrature) {
    for (double R : {6.96e8, 1e10, 1e11}) {
        DelayScenario s = venus_conjunction();
        s.impact_parameter = R;
        EXPECT_LE(rel_err(radar_delay(s).one_way_exact, radar_delay_quadrature(s)), 1e-10) << R;
    }
}

TEST(RadarDelay, NearFieldFlagAndOracle) {
    DelayScenario s{1.0, 2.0, 1.5, 1e-3};
    const DelayResult d = radar_delay(s, 1.0);
    EXPECT_FALSE(d.far_field);
    const double oracle = s.schwarzschild_radius *
                          std::log((s.target_distance + std::hypot(1.5, s.target_distance)) /
                                   (-s.earth_distance + std::hypot(1.5, s.earth_distance)));
    EXPECT_LE(rel_err(d.one_way_exact, oracle), 1e-14);
}

TEST(RadarDelay, ZeroMassAndErrors) {
    DelayScenario s = venus_conjunction();
    s.schwarzschild_radius = 0.0;
    EXPECT_EQ(radar_delay(s).round_trip_exact, 0.0);
    s.impact_parameter = -1.0;
    EXPECT_THROW(radar_delay(s), DomainError);
    s = venus_conjunction();
    s.earth_distance = 0.0;
    EXPECT_THROW(radar_delay(s), DomainError);
}

TEST(Deflection, NewtonianAtSolarLimb) {
    const NewtonianDeflection d = deflection_newtonian(6.96e8, 2953.0);
    EXPECT_NEAR(d.deflection * 206264.806, 0.875, 1e-3);
    EXPECT_LE(rel_err(d.deflection, d.small_angle), 1e-10);
    EXPECT_DOUBLE_EQ(d.eccentricity, 2.0 * 6.96e8 / 2953.0);
    EXPECT_NEAR(d.total_angle - pi, d.deflection, 1e-15);
}

TEST(Deflection, NewtonianAsymptoteOracle) {
    // Angle between asymptotes 2 arccos(-1/eps) of the A = -1 hyperbola.
    for (double ratio : {0.3, 0.05, 1e-4}) {
        const NewtonianDeflection d = deflection_newtonian(1.0, ratio);
        const double eps = 2.0 / ratio;
        EXPECT_NEAR(d.total_angle, 2.0 * std::acos(-1.0 / eps), 1e-13) << ratio;
    }
    EXPECT_EQ(deflection_newtonian(1.0, 0.0).deflection, 0.0);
    EXPECT_THROW(deflection_newtonian(1.0, 2.0), DomainError);
    EXPECT_THROW(deflection_newtonian(0.0, 1.0), DomainError);
}

TEST(Deflection, QuadrupoleIntegral) {
    for (double ratio : {1e-6, 1e-3, 0.2}) {
        const QuadrupoleDeflection d = deflection_quadrupole(1.0, ratio);
        const double oracle = 2.0 * testing_support::tanh_sinh(
                                        [&](double s, double, double to_one) {
                                            return (1.0 + ratio * s) / std::sqrt(to_one * (1.0 + s));
                                        },
                                        0.0, 1.0);
        EXPECT_NEAR(d.total_angle_quadrature, oracle, 1e-12);
        EXPECT_NEAR(d.total_angle, pi + 2.0 * ratio, 1e-15);
        EXPECT_LE(rel_err(d.deflection_quadrature, 2.0 * ratio), 1e-12);
        EXPECT_EQ(d.weak_field, ratio <= 1e-2);
    }
}

TEST(Deflection, QuadrupoleTwiceNewtonianInWeakField) {
    for (double ratio : {1e-5, 1e-7, 1e-9}) {
        const double q = deflection_quadrupole(1.0, ratio).deflection;
        const double n = deflection_newtonian(1.0, ratio).deflection;
        EXPECT_NEAR(q / n, 2.0, 1e-9);
    }
}

TEST(Deflection, ScaleInvariant) {
    const double base = deflection_newtonian(1.0, 1e-3).deflection;
    for (double scale : {1e-3, 7.0, 1e9}) {
        EXPECT_NEAR(deflection_newtonian(scale, 1e-3 * scale).deflection, base, 1e-15 * 1e3);
        EXPECT_NEAR(deflection_quadrupole(scale, 1e-3 * scale).deflection, 2e-3, 1e-15);
    }
}

TEST(CrossSection, InversionAndScaling) {
    const double rs = 3.0;
    for (double theta : {1e-3, 1e-2, 0.1}) {
        const double ra = quadrupole_impact_parameter(theta, rs);
        EXPECT_NEAR(deflection_quadrupole(ra, rs).deflection, theta, 1e-15);
        const double dra = testing_support::derivative(
            [&](double t) { return quadrupole_impact_parameter(t, rs); }, theta, 1e-3 * theta);
        EXPECT_LE(rel_err(cross_section(theta, rs), 2.0 * pi * ra * std::abs(dra)), 1e-9);
    }
    EXPECT_NEAR(cross_section(0.01, 1.0) / cross_section(0.02, 1.0), 8.0, 1e-12);
    EXPECT_NEAR(cross_section(0.01, 2.0) / cross_section(0.01, 1.0), 4.0, 1e-12);
    EXPECT_THROW(cross_section(0.0, 1.0), DomainError);
}

TEST(Perihelion, AdvanceFormsAgree) {
    const OrbitElements el = mercury_elements();
    const PerihelionAdvance adv = perihelion_advance(el);
    EXPECT_LE(rel_err(adv.from_caustic_radius, adv.from_conic), 1e-12);
    EXPECT_LE(rel_err(perihelion_advance_quadrature(el), adv.from_caustic_radius), 1e-5);
    EXPECT_THROW(perihelion_advance(orbit_elements(-1.0, 1.0, 1.0)), DomainError);
}

TEST(Mercury, Elements) {
    const OrbitElements el = mercury_elements();
    const double a = 5.79e10, e = 0.2056, rs = 2953.0;
    EXPECT_LE(rel_err(*el.semi_axis, a), 1e-12);
    EXPECT_LE(rel_err(el.eccentricity, e), 1e-9);
    EXPECT_LE(rel_err(el.r_minus, a * (1.0 - e)), 1e-12);
    EXPECT_LE(rel_err(*el.r_plus, a * (1.0 + e)), 1e-12);
    EXPECT_DOUBLE_EQ(el.energy, rs / (2.0 * a));
    EXPECT_THROW(mercury_elements({5.79e10, 1.0}), DomainError);
    EXPECT_THROW(mercury_elements({-1.0}), DomainError);
}

TEST(Mercury, ReportAgainstKeplerOracle) {
    const auto rows = mercury_report();
    ASSERT_EQ(rows.size(), 6u);
    const double a = 5.79e10, e = 0.2056, rs = 2953.0;
    const double gm = 0.5 * rs * c * c;
    const double period = 2.0 * pi * std::sqrt(a * a * a / gm);
    EXPECT_LE(rel_err(row(rows, "period").value, period / 86400.0), 1e-12);
    EXPECT_LE(rel_err(row(rows, "mean_motion").value, 2.0 * pi / period), 1e-12);
    EXPECT_LE(rel_err(row(rows, "semi_minor_axis").value, a * std::sqrt(1.0 - e * e)), 1e-9);
    const double advance = 6.0 * pi * gm / (c * c * a * (1.0 - e * e));
    EXPECT_LE(rel_err(row(rows, "perihelion_advance").value, advance * 206264.806), 1e-9);
    // The rate is quoted as mean motion times the advance per revolution.
    EXPECT_LE(rel_err(row(rows, "perihelion_rate").value, 2.0 * pi / period * advance), 1e-9);

    EXPECT_LE(std::abs(*row(rows, "period").relative_deviation()), 1e-2);
    EXPECT_LE(std::abs(*row(rows, "mean_motion").relative_deviation()), 1e-2);
    EXPECT_LE(std::abs(*row(rows, "perihelion_advance").relative_deviation()), 1e-2);
    EXPECT_LE(rel_err(row(rows, "energy_constant").value, rs / (2.0 * a)), 1e-15);
    EXPECT_FALSE(row(rows, "semi_minor_axis").relative_deviation().has_value());
    EXPECT_EQ(row(rows, "perihelion_rate").method, Method::approximate);
    for (const auto& r : rows) EXPECT_FALSE(r.inputs.empty());
}

TEST(Moller, Components) {
    const MollerVelocities v = moller_split(10.0, 2.0, 1.0);
    EXPECT_NEAR(v.time_dilation, std::sqrt(1.0 / 0.9 - 0.04), 1e-15);
    EXPECT_NEAR(v.spatial_corrected, std::sqrt(0.9 * 0.96), 1e-15);
    EXPECT_NEAR(v.spatial_verbatim, std::sqrt(1.0 - 0.1 - 0.4 + 0.004), 1e-15);
    EXPECT_NEAR(v.kepler, std::sqrt(1.1 - 0.04), 1e-15);
    EXPECT_FALSE(MollerVelocities::verbatim_dimensionally_consistent);
}

TEST(Moller, DilationCarriesKeplerVelocityToFirstOrder) {
    for (double x : {1e-3, 1e-5}) {
        const MollerVelocities v = moller_split(1.0, 0.3, x);
        const double gap = v.time_dilation * v.time_dilation - v.kepler * v.kepler;
        EXPECT_NEAR(gap, x * x / (1.0 - x), 1e-15);
        EXPECT_LE(std::abs(gap), 2.0 * x * x);
    }
}

TEST(Moller, VerbatimNaNAndErrors) {
    const MollerVelocities v = moller_split(10.0, 5.0, 1.0);
    EXPECT_TRUE(std::isnan(v.spatial_verbatim));
    EXPECT_FALSE(std::isnan(v.spatial_corrected));
    EXPECT_THROW(moller_split(1.0, 0.1, 1.0), DomainError);
    EXPECT_THROW(moller_split(1.0, 2.0, 0.1), DomainError);
}
