#pragma once

// Adaptive Gauss-Kronrod (7/15) quadrature.
//
// The integrand may return double or std::complex<double>; the error
// estimate is always a real magnitude.  Intervals are refined globally:
// the interval with the largest error estimate is bisected until the summed
// estimate meets max(abs_tol, rel_tol * |I|).

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <string>
#include <queue>
#include <type_traits>
#include <utility>
#include <vector>

#include "fermat/errors.hpp"

namespace fermat::quad {

struct Options {
    double abs_tol = 1e-13;
    double rel_tol = 1e-12;
    int max_intervals = 20000;
};

template <class T>
struct Result {
    T value{};
    double error = 0.0;
    int intervals = 0;
    bool converged = false;
};

namespace detail {

inline constexpr double kronrod_nodes[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
inline constexpr double kronrod_weights[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// Gauss weights for the odd-indexed Kronrod nodes (1, 3, 5) and the centre.
inline constexpr double gauss_weights[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <class T>
struct Panel {
    double a;
    double b;
    T value;
    double error;
    bool operator<(const Panel& other) const { return error < other.error; }
};

template <class F, class T>
Panel<T> gauss_kronrod_15(F& f, double a, double b) {
    const double centre = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const T fc = f(centre);
    T kronrod = fc * kronrod_weights[7];
    T gauss = fc * gauss_weights[3];
    for (int j = 0; j < 7; ++j) {
        const double dx = half * kronrod_nodes[j];
        const T sum = f(centre - dx) + f(centre + dx);
        kronrod += kronrod_weights[j] * sum;
        if (j % 2 == 1) gauss += gauss_weights[j / 2] * sum;
    }
    kronrod *= half;
    gauss *= half;
    return {a, b, kronrod, std::abs(kronrod - gauss)};
}

}  // namespace detail

/// Adaptive integral of f over the finite interval [a, b].
template <class F>
auto integrate(F&& f, double a, double b, Options opts = {}) {
    using T = std::decay_t<std::invoke_result_t<F&, double>>;
    Result<T> out;
    if (a == b) {
        out.converged = true;
        return out;
    }
    double sign = 1.0;
    if (b < a) {
        std::swap(a, b);
        sign = -1.0;
    }

    std::priority_queue<detail::Panel<T>> panels;
    auto first = detail::gauss_kronrod_15<F, T>(f, a, b);
    T total = first.value;
    double total_error = first.error;
    panels.push(first);

    const double eps = std::numeric_limits<double>::epsilon();
    while (!panels.empty()) {
        const double target = std::max(opts.abs_tol, opts.rel_tol * std::abs(total));
        if (total_error <= target) {
            out.converged = true;
            break;
        }
        if (static_cast<int>(panels.size()) >= opts.max_intervals) break;

        auto worst = panels.top();
        const double mid = 0.5 * (worst.a + worst.b);
        // Below this width the abscissae coincide in floating point.
        if (worst.b - worst.a <= 64.0 * eps * std::max(std::abs(worst.a), std::abs(worst.b))) {
            break;
        }
        panels.pop();
        auto left = detail::gauss_kronrod_15<F, T>(f, worst.a, mid);
        auto right = detail::gauss_kronrod_15<F, T>(f, mid, worst.b);
        total += left.value + right.value - worst.value;
        total_error += left.error + right.error - worst.error;
        panels.push(left);
        panels.push(right);
    }

    // Re-sum to shed the drift accumulated by incremental updates.
    T resummed{};
    double err = 0.0;
    out.intervals = static_cast<int>(panels.size());
    while (!panels.empty()) {
        resummed += panels.top().value;
        err += panels.top().error;
        panels.pop();
    }
    out.value = sign * resummed;
    out.error = err;
    if (!out.converged) {
        out.converged = err <= std::max(opts.abs_tol, opts.rel_tol * std::abs(resummed));
    }
    return out;
}

/// Integral over [a, b] of a function with integrable square-root type
/// behaviour at one or both endpoints.  The substitution
/// x = (a+b)/2 - (b-a)/2 cos(t) maps sqrt(x-a) and 1/sqrt(x-a) onto
/// smooth functions of t.
template <class F>
auto integrate_sqrt_endpoints(F&& f, double a, double b, Options opts = {}) {
    const double centre = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    auto g = [&](double t) {
        const double s = std::sin(t);
        return f(centre - half * std::cos(t)) * (half * s);
    };
    return integrate(g, 0.0, std::numbers::pi, opts);
}

/// As integrate_sqrt_endpoints, but f is called as f(x, x - a, b - x) with
/// both endpoint distances computed without cancellation.  Needed when the
/// integrand has an inverse square-root singularity.
template <class F>
auto integrate_sqrt_endpoints_split(F&& f, double a, double b, Options opts = {}) {
    const double half = 0.5 * (b - a);
    auto g = [&](double t) {
        const double sh = std::sin(0.5 * t);
        const double ch = std::cos(0.5 * t);
        const double from_a = 2.0 * half * sh * sh;
        const double to_b = 2.0 * half * ch * ch;
        const double x = t < 0.5 * std::numbers::pi ? a + from_a : b - to_b;
        return f(x, from_a, to_b) * (half * std::sin(t));
    };
    return integrate(g, 0.0, std::numbers::pi, opts);
}

/// Integral over [a, inf) through x = a + t/(1-t).
template <class F>
auto integrate_to_infinity(F&& f, double a, Options opts = {}) {
    using T = std::decay_t<std::invoke_result_t<F&, double>>;
    auto g = [&](double t) -> T {
        const double one_minus = 1.0 - t;
        if (one_minus <= 0.0) return T{};
        return f(a + t / one_minus) * (1.0 / (one_minus * one_minus));
    };
    return integrate(g, 0.0, 1.0, opts);
}

/// Same as the matching integrate call but throws ConvergenceError when the
/// tolerance is not met.
template <class R>
auto require(R&& result, const char* what) {
    if (!result.converged) {
        throw ConvergenceError(std::string(what) + ": quadrature did not converge (error estimate " +
                               std::to_string(result.error) + ")");
    }
    return result.value;
}

}  // namespace fermat::quad
