#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "fermat/errors.hpp"
#include "fermat/quadrature.hpp"
#include "fermat/roots.hpp"

using namespace fermat;
constexpr double pi = std::numbers::pi;

TEST(Quadrature, PolynomialIsExact) {
    auto r = quad::integrate([](double x) { return 3.0 * x * x + 1.0; }, 0.0, 2.0);
    EXPECT_TRUE(r.converged);
    EXPECT_NEAR(r.value, 10.0, 1e-14);
}

TEST(Quadrature, ReversedLimitsFlipSign) {
    auto r = quad::integrate([](double x) { return std::exp(x); }, 1.0, 0.0);
    EXPECT_NEAR(r.value, -(std::exp(1.0) - 1.0), 1e-14);
}

TEST(Quadrature, OscillatoryIntegrandRefines) {
    auto r = quad::integrate([](double x) { return std::cos(50.0 * x); }, 0.0, 1.0);
    EXPECT_TRUE(r.converged);
    EXPECT_NEAR(r.value, std::sin(50.0) / 50.0, 1e-13);
    EXPECT_GT(r.intervals, 1);
}

TEST(Quadrature, SquareRootEndpoints) {
    auto half_disc = quad::integrate_sqrt_endpoints([](double x) { return std::sqrt(1.0 - x * x); }, -1.0, 1.0);
    EXPECT_NEAR(half_disc.value, pi / 2.0, 1e-13);
    auto arcsine = quad::integrate_sqrt_endpoints(
        [](double x) { return 1.0 / std::sqrt(x * (1.0 - x)); }, 0.0, 1.0);
    EXPECT_NEAR(arcsine.value, pi, 1e-12);
}

TEST(Quadrature, SplitEndpointDistances) {
    // Distances from both ends are supplied exactly, so 1/sqrt((x-a)(b-x))
    // never divides by a rounded zero.
    auto r = quad::integrate_sqrt_endpoints_split(
        [](double, double da, double db) { return 1.0 / std::sqrt(da * db); }, 1e8, 1e8 + 1.0);
    EXPECT_NEAR(r.value, pi, 1e-11);
}

TEST(Quadrature, SemiInfinite) {
    auto r = quad::integrate_to_infinity([](double x) { return std::exp(-x); }, 0.0);
    EXPECT_NEAR(r.value, 1.0, 1e-12);
    auto lorentz = quad::integrate_to_infinity([](double x) { return 1.0 / (1.0 + x * x); }, 0.0);
    EXPECT_NEAR(lorentz.value, pi / 2.0, 1e-11);
}

TEST(Quadrature, ComplexValued) {
    auto r = quad::integrate([](double t) { return std::exp(std::complex<double>(0.0, t)); }, 0.0, pi);
    EXPECT_NEAR(r.value.real(), 0.0, 1e-14);
    EXPECT_NEAR(r.value.imag(), 2.0, 1e-14);
}

TEST(Quadrature, RequireThrowsWhenBudgetExhausted) {
    quad::Options opts;
    opts.max_intervals = 2;
    opts.abs_tol = 0.0;
    opts.rel_tol = 1e-15;
    auto r = quad::integrate([](double x) { return std::sqrt(x); }, 0.0, 1.0, opts);
    EXPECT_FALSE(r.converged);
    EXPECT_THROW(quad::require(r, "sqrt"), ConvergenceError);
}

TEST(Roots, BisectionFindsBracketedRoot) {
    const double root = bisect([](double x) { return x * x - 2.0; }, 0.0, 2.0);
    EXPECT_NEAR(root, std::sqrt(2.0), 1e-14);
    EXPECT_THROW(bisect([](double x) { return x * x + 1.0; }, 0.0, 1.0), DomainError);
}
