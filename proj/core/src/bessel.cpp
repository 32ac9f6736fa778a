#include "fermat/bessel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "fermat/errors.hpp"
#include "fermat/quadrature.hpp"

namespace fermat {
namespace {

constexpr double max_order = 500.0;
constexpr double max_argument = 1e4;

void check_domain(double order, double x) {
    if (!(order >= 0.0) || order > max_order) {
        throw DomainError("bessel: order must lie in [0, 500], got " + std::to_string(order));
    }
    if (!(x >= 0.0) || x > max_argument) {
        throw DomainError("bessel: argument must lie in [0, 1e4], got " + std::to_string(x));
    }
}

bool series_is_stable(double order, double x) { return x <= 10.0 || x * x <= order + 1.0; }

}  // namespace

double bessel_j_series(double order, double x) {
    check_domain(order, x);
    if (x == 0.0) return order == 0.0 ? 1.0 : 0.0;
    using ld = long double;
    const ld half = static_cast<ld>(x) / 2;
    const ld nu = order;
    ld term = std::exp(nu * std::log(half) - std::lgamma(nu + 1));
    ld sum = term;
    const ld step = -half * half;
    for (int k = 1; k < 2000; ++k) {
        term *= step / (static_cast<ld>(k) * (static_cast<ld>(k) + nu));
        sum += term;
        if (std::abs(term) <= 1e-21L * std::abs(sum) && k > half) break;
    }
    return static_cast<double>(sum);
}

double bessel_j_integral(double order, double x) {
    check_domain(order, x);
    if (x == 0.0) return order == 0.0 ? 1.0 : 0.0;
    constexpr double pi = std::numbers::pi;

    auto oscillating = [=](double t) { return std::cos(x * std::sin(t) - order * t); };
    // One panel per half period of the fastest phase keeps each panel smooth.
    const int panels = std::max(1, static_cast<int>(std::ceil((x + order) / 2.0)));
    quad::Options opts;
    // cos() of an argument of size x + nu carries roundoff of that relative size.
    opts.abs_tol = 2e-15 * (x + order + 10.0) / panels;
    opts.rel_tol = 0.0;
    double first = 0.0;
    for (int i = 0; i < panels; ++i) {
        const double a = pi * i / panels;
        const double b = pi * (i + 1) / panels;
        first += quad::require(quad::integrate(oscillating, a, b, opts), "bessel_j_integral");
    }
    first /= pi;

    const double s = std::sin(order * pi);
    if (std::abs(s) < 1e-300 || order == std::floor(order)) return first;

    // exp(-x sinh t - nu t) falls below e^-50 beyond the truncation point.
    // Start from the decay length so the panel resolves the peak at t = 0.
    double upper = 1.0 / (x + order + 1.0);
    while (x * std::sinh(upper) + order * upper < 50.0) upper *= 2.0;
    auto decaying = [=](double t) { return std::exp(-x * std::sinh(t) - order * t); };
    quad::Options tail_opts;
    tail_opts.abs_tol = 1e-16;
    tail_opts.rel_tol = 1e-14;
    const double second =
        quad::require(quad::integrate(decaying, 0.0, upper, tail_opts), "bessel_j_integral tail");
    return first - s / pi * second;
}

double reference_bessel_j(double order, double x) {
    check_domain(order, x);
    if (series_is_stable(order, x)) return bessel_j_series(order, x);
    return bessel_j_integral(order, x);
}

double reference_bessel_j_derivative(double order, double x) {
    if (!(order >= 1.0)) throw DomainError("bessel derivative: order must be at least 1");
    if (!(x > 0.0)) throw DomainError("bessel derivative: argument must be positive");
    return reference_bessel_j(order - 1.0, x) - order / x * reference_bessel_j(order, x);
}

}  // namespace fermat
