#pragma once

#include <cmath>
#include <functional>
#include <limits>

namespace testing_support {

inline double rel_err(double value, double reference) {
    return std::abs(value - reference) / std::abs(reference);
}

/// Tanh-sinh (double exponential) quadrature on [a, b].  Independent of the
/// library's Gauss-Kronrod engine; tolerant of integrable endpoint
/// singularities.  f receives (x, x - a, b - x) so that integrands can avoid
/// cancellation near the ends.
inline double tanh_sinh(const std::function<double(double, double, double)>& f, double a,
                        double b, double tol = 1e-14) {
    const double half = 0.5 * (b - a);
    const double pi_2 = 2.0 * std::atan(1.0);
    auto term = [&](double t) {
        const double s = pi_2 * std::sinh(t);
        const double c = std::cosh(s);
        // Distance of the node from each end: half * (1 -/+ tanh s).
        const double e = std::exp(-2.0 * std::abs(s));
        const double small = half * 2.0 * e / (1.0 + e);
        if (!(small > 0.0)) return 0.0;
        const double big = 2.0 * half - small;
        const double weight = half * pi_2 * std::cosh(t) / (c * c);
        const double x = s < 0 ? a + small : b - small;
        const double from_a = s < 0 ? small : big;
        const double to_b = s < 0 ? big : small;
        return weight * f(x, from_a, to_b);
    };
    double h = 1.0;
    double sum = term(0.0);
    for (int k = 1; k <= 6; ++k) sum += term(k * h) + term(-k * h);
    double estimate = sum * h;
    for (int level = 0; level < 12; ++level) {
        h *= 0.5;
        double fresh = 0.0;
        for (int k = 1; k * h <= 6.5; k += 2) fresh += term(k * h) + term(-k * h);
        sum += fresh;
        const double next = sum * h;
        if (level > 2 && std::abs(next - estimate) <= tol * std::abs(next)) return next;
        estimate = next;
    }
    return estimate;
}

/// Fourth-order central difference.
inline double derivative(const std::function<double(double)>& f, double x, double h) {
    return (8.0 * (f(x + h) - f(x - h)) - (f(x + 2.0 * h) - f(x - 2.0 * h))) / (12.0 * h);
}

}  // namespace testing_support
