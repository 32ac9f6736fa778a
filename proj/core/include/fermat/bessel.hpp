#pragma once

namespace fermat {

/// Reference J_nu(x) for real order 0 <= nu <= 500 and 0 <= x <= 1e4,
/// accurate to about 1e-15 (x + nu) absolute.  Small arguments use the ascending
/// series; everything else the real-integral (Schlaefli) representation.
double reference_bessel_j(double order, double x);

/// Ascending power series, summed in extended precision.  Accurate only
/// where the series does not cancel (x <= 10 or x^2 <= nu + 1).
double bessel_j_series(double order, double x);

/// (1/pi) int_0^pi cos(x sin t - nu t) dt - (sin(nu pi)/pi) int_0^inf exp(-x sinh t - nu t) dt.
double bessel_j_integral(double order, double x);

/// dJ_nu/dx = J_{nu-1}(x) - (nu/x) J_nu(x), for nu >= 1.
double reference_bessel_j_derivative(double order, double x);

}  // namespace fermat
