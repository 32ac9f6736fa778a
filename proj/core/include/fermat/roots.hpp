#pragma once

#include <cmath>
#include <limits>

#include "fermat/errors.hpp"

namespace fermat {

/// Bisection on a bracket [lo, hi] where f(lo) and f(hi) differ in sign.
/// Stops when the bracket is narrower than rel_tol * max(|lo|, |hi|).
template <class F>
double bisect(F&& f, double lo, double hi, double rel_tol = 1e-14) {
    double flo = f(lo);
    double fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo > 0.0) == (fhi > 0.0)) {
        throw DomainError("bisect: root is not bracketed");
    }
    for (int iter = 0; iter < 400; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (hi - lo <= rel_tol * std::max(std::abs(lo), std::abs(hi))) break;
        const double fm = f(mid);
        if (fm == 0.0) return mid;
        if ((fm > 0.0) == (flo > 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace fermat
