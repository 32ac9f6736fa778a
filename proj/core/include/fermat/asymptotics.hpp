#pragma once

#include <complex>
#include <numbers>

#include "fermat/medium.hpp"

namespace fermat {

enum class WaveDirection { incoming, outgoing };

/// Leading-order WKB wave in the illuminated region.
///
/// The outgoing phase is kappa S + theta and the incoming one its negative,
/// with theta = -pi/4 the value selected by the shadow matching condition.
/// The amplitude includes the cylindrical spreading factor, so that
/// sqrt(2/pi) * amplitude * cos(phase) approximates J_nu(kappa eta r) with
/// nu = kappa r_a.
struct WkbWave {
    double wave_number;
    double phase;
    double amplitude;
    WaveDirection direction;
    double phase_constant;
};

WkbWave debye_phase(double wave_number, double r, double caustic_radius, double index = 1.0,
                    WaveDirection direction = WaveDirection::outgoing);

/// sqrt(2/pi) * amplitude * cos(phase): the Debye approximation of
/// J_{kappa r_a}(kappa eta r).
double debye_bessel_j(double wave_number, double r, double caustic_radius, double index = 1.0);

/// Exponential solutions inside the caustic, r < r_a.
struct ShadowWave {
    double decaying_coefficient;  ///< B-, half the oscillatory amplitude constant
    double growing_coefficient;   ///< B+ = (A/2) cos(theta - pi/4)
    double decay_factor;          ///< exp(-kappa |S|)
    double growth_factor;         ///< exp(+kappa |S|)
    double prefactor;             ///< (kappa sqrt(r_a^2 - r^2))^{-1/2}

    double decaying() const { return decaying_coefficient * prefactor * decay_factor; }
    double growing() const { return growing_coefficient * prefactor * growth_factor; }
};

/// Coefficient of the exponentially growing shadow solution implied by the
/// oscillatory constants (amplitude A, phase constant theta).
double matching_growth_coefficient(double amplitude_constant, double phase_constant);

ShadowWave shadow_amplitude(double wave_number, double r, double caustic_radius,
                            double phase_constant = -0.25 * std::numbers::pi,
                            double amplitude_constant = 1.0);

enum class SaddleBranch { oscillatory, shadow };

/// Saddle point phi_+ of W(phi) = eps r sin(phi) - (q - r) phi.  Real on the
/// oscillatory branch |q - r| < eps r; purely imaginary when q - r > eps r.
struct SaddleResult {
    std::complex<double> saddle;
    std::complex<double> value;
    SaddleBranch branch;
    std::complex<double> second_derivative;
};

/// W(phi) and W'(phi) for complex phi.
std::complex<double> hankel_phase(std::complex<double> phi, double r, const OrbitElements& el);
std::complex<double> hankel_phase_slope(std::complex<double> phi, double r,
                                        const OrbitElements& el);

SaddleResult hankel_saddle(double wave_number, double r, const OrbitElements& el);

/// H^{(kind)}_{kappa(q-r)}(kappa eps r) by quadrature of (1/pi) int e^{i kappa W}
/// along a piecewise-linear steepest-descent contour through the saddle.
std::complex<double> hankel_numeric(double wave_number, double r, const OrbitElements& el,
                                    int kind);

/// Leading-order saddle-point approximation of the same Hankel function.
std::complex<double> hankel_leading_order(double wave_number, double r, const OrbitElements& el,
                                          int kind);

}  // namespace fermat
