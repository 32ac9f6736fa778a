#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "fermat/errors.hpp"
#include "fermat/medium.hpp"
#include "fermat/trajectories.hpp"
#include "support.hpp"

using namespace fermat;
using testing_support::rel_err;

TEST(Medium, ConstantIndex) {
    EXPECT_DOUBLE_EQ(MediumModel::constant(1.0).refractive_index(5.0), 1.0);
    EXPECT_DOUBLE_EQ(refractive_index(MediumModel::constant(1.7), 0.3), 1.7);
    EXPECT_THROW(MediumModel::constant(0.0), DomainError);
}

TEST(Medium, NewtonianByHand) {
    EXPECT_DOUBLE_EQ(MediumModel::newtonian(-1.0, 1.0).refractive_index(1.0), std::sqrt(2.0));
    EXPECT_THROW(MediumModel::newtonian(1.0, 1.0).refractive_index(2.0), DomainError);
}

TEST(Medium, RejectsNonPositiveRadius) {
    EXPECT_THROW(MediumModel::newtonian(-1.0, 1.0).refractive_index(0.0), DomainError);
    EXPECT_THROW(MediumModel::constant(1.0).refractive_index(-1.0), DomainError);
}

TEST(Medium, BoundMediumHasFiniteValidity) {
    const MediumModel m = MediumModel::newtonian(1.0, 1.0);
    EXPECT_TRUE(m.validity().bounded());
    EXPECT_NEAR(m.validity().upper, 1.0, 1e-12);
    EXPECT_GE(m.index_squared_unchecked(m.validity().upper), 0.0);
}

TEST(Medium, NewtonianIndexDecreasesOutward) {
    const MediumModel m = MediumModel::newtonian(-0.3, 2.0);
    double previous = m.refractive_index(0.01);
    for (double r = 0.02; r < 100.0; r *= 1.1) {
        const double n = m.refractive_index(r);
        EXPECT_LT(n, previous);
        previous = n;
    }
}

TEST(Medium, QuadrupoleCouplingScalesCorrection) {
    const MediumModel unit = MediumModel::quadrupole(-1.0, 1e-3, 1.0);
    const MediumModel doubled = MediumModel::quadrupole(-1.0, 1e-3, 1.0, 2.0);
    const double r = 1.7;
    EXPECT_NEAR(doubled.index_squared(r) - 1.0, 2.0 * (unit.index_squared(r) - 1.0), 1e-15);
    EXPECT_NEAR(unit.index_squared(r), 1.0 + 1e-3 / (r * r * r), 1e-15);
}

TEST(Medium, PerihelionRequiresRadiusBeyondPhotonSphere) {
    const MediumModel m = MediumModel::perihelion(1e-3, 1.0, 10.0);
    EXPECT_THROW(m.refractive_index(1.5), DomainError);
    EXPECT_NO_THROW(m.refractive_index(20.0));
    EXPECT_NEAR(m.index_squared(20.0), -1e-3 + (1.0 / 20.0) * (1.0 + 100.0 / 400.0), 1e-15);
}

TEST(OrbitElements, Parabola) {
    const OrbitElements el = orbit_elements(0.0, 1.0, 2.0);
    EXPECT_DOUBLE_EQ(el.eccentricity, 1.0);
    EXPECT_DOUBLE_EQ(el.semi_latus_rectum, 1.0);
    EXPECT_TRUE(el.parabolic());
    EXPECT_FALSE(el.semi_axis.has_value());
    EXPECT_DOUBLE_EQ(el.r_minus, 0.5);
}

TEST(OrbitElements, Circle) {
    const double ra = 1.3, rs = 0.8;
    const OrbitElements el = orbit_elements(rs * rs / (4.0 * ra * ra), ra, rs);
    EXPECT_NEAR(el.eccentricity, 0.0, 1e-7);
    ASSERT_TRUE(el.r_plus.has_value());
    EXPECT_NEAR(el.r_minus, *el.semi_axis, 1e-6 * *el.semi_axis);
    EXPECT_NEAR(*el.r_plus, *el.semi_axis, 1e-6 * *el.semi_axis);
}

TEST(OrbitElements, OverBoundIsRejected) {
    EXPECT_THROW(orbit_elements(1.0, 1.0, 1.0), DomainError);
}

TEST(OrbitElements, MercuryLikeSemiAxis) {
    // a = R_s / 2A by hand.
    const double A = 2.59e-8, rs = 2953.0;
    const double a = rs / (2.0 * A);
    const double e = 0.2056;
    const double ra = std::sqrt(0.5 * a * (1.0 - e * e) * rs);
    const OrbitElements el = orbit_elements(A, ra, rs);
    EXPECT_NEAR(el.eccentricity, e, 1e-9);
    EXPECT_NEAR(*el.semi_axis, 5.70e10, 0.01e10);
}

TEST(OrbitElements, SemiLatusRectumIdentity) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 500; ++i) {
        const double rs = 0.1 + 5.0 * u(rng), ra = 0.1 + 10.0 * u(rng);
        const double limit = rs * rs / (4.0 * ra * ra);
        const double A = (2.0 * u(rng) - 1.0) * limit * (i % 3 == 0 ? 50.0 : 0.999);
        if (A > limit) continue;
        const OrbitElements el = orbit_elements(A, ra, rs);
        EXPECT_LE(rel_err(el.semi_latus_rectum, 2.0 * ra * ra / rs), 1e-15);
        if (el.semi_axis) {
            EXPECT_LE(rel_err(*el.semi_axis * std::abs(1.0 - el.eccentricity * el.eccentricity),
                              el.semi_latus_rectum),
                      1e-12);
        }
        EXPECT_EQ(el.bound(), el.eccentricity < 1.0);
    }
}

TEST(OrbitElements, TurningPointsZeroTheRadialMomentum) {
    for (double A : {0.05, -0.4, 0.0}) {
        const double ra = 1.1, rs = 0.9;
        const OrbitElements el = orbit_elements(A, ra, rs);
        const MediumModel m = MediumModel::newtonian(A, rs);
        auto residual = [&](double r) {
            return std::abs(m.index_squared_unchecked(r) * r * r - ra * ra) / (ra * ra);
        };
        EXPECT_LE(residual(el.r_minus), 1e-10);
        EXPECT_NEAR(radial_velocity(el.r_minus, el), 0.0, 1e-7);
        if (el.r_plus) {
            EXPECT_LE(residual(*el.r_plus), 1e-10);
        }
    }
}
