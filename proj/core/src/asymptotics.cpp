#include "fermat/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "fermat/eikonal.hpp"
#include "fermat/errors.hpp"
#include "fermat/quadrature.hpp"

namespace fermat {
namespace {

using cplx = std::complex<double>;
constexpr double pi = std::numbers::pi;
constexpr double quarter_pi = 0.25 * std::numbers::pi;
// Contour tails are cut where |integrand| drops below 1e-16 of the peak.
constexpr double tail_log_cutoff = -36.84;

void check_wave_number(double wave_number) {
    if (!(wave_number > 0.0)) throw DomainError("wave number must be positive");
}

/// Integrand exp(x sinh w - nu w - shift) of the Sommerfeld representation
/// H^{(1)}_nu(x) = (1/(pi i)) int_{-inf}^{inf + i pi} exp(x sinh w - nu w) dw.
struct Sommerfeld {
    double x;
    double nu;
    double shift;

    cplx exponent(cplx w) const { return x * std::sinh(w) - nu * w - shift; }
    cplx operator()(cplx w) const { return std::exp(exponent(w)); }
    double real_exponent(double u) const { return x * std::sinh(u) - nu * u - shift; }
};

quad::Options contour_options() {
    quad::Options opts;
    opts.abs_tol = 1e-15;
    opts.rel_tol = 1e-13;
    opts.max_intervals = 50000;
    return opts;
}

cplx segment(const Sommerfeld& f, cplx from, cplx to) {
    const cplx dw = to - from;
    auto integrand = [&](double t) -> cplx { return f(from + t * dw) * dw; };
    return quad::require(quad::integrate(integrand, 0.0, 1.0, contour_options()),
                         "hankel_numeric segment");
}

// int_{-inf}^{start} along the real axis; the integrand decays to the left.
cplx left_tail(const Sommerfeld& f, double start) {
    double step = 1.0;
    double end = start - step;
    while (f.real_exponent(end) > tail_log_cutoff) {
        step *= 2.0;
        end = start - step;
        if (step > 1e3) throw ConvergenceError("hankel_numeric: left tail does not decay");
    }
    const double slope = std::abs(f.x * std::cosh(end) - f.nu);
    const double remainder = std::exp(f.real_exponent(end)) / std::max(slope, 1e-300);
    if (remainder > 1e-8) throw ConvergenceError("hankel_numeric: left tail truncation error too large");
    return segment(f, cplx(end, 0.0), cplx(start, 0.0));
}

// int_{start + i sigma pi}^{inf + i sigma pi}; there exp(g) = exp(-x sinh u - nu u) e^{-i sigma nu pi}.
cplx right_tail(const Sommerfeld& f, double start, double sigma) {
    auto magnitude = [&](double u) { return -f.x * std::sinh(u) - f.nu * u - f.shift; };
    double step = 1.0;
    double end = start + step;
    while (magnitude(end) > tail_log_cutoff) {
        step *= 2.0;
        end = start + step;
        if (step > 1e3) throw ConvergenceError("hankel_numeric: right tail does not decay");
    }
    const double slope = std::abs(f.x * std::cosh(end) + f.nu);
    const double remainder = std::exp(magnitude(end)) / std::max(slope, 1e-300);
    if (remainder > 1e-8) throw ConvergenceError("hankel_numeric: right tail truncation error too large");
    return segment(f, cplx(start, sigma * pi), cplx(end, sigma * pi));
}

struct HankelArguments {
    double order;
    double argument;
};

HankelArguments hankel_arguments(double wave_number, double r, const OrbitElements& el) {
    check_wave_number(wave_number);
    if (!(r > 0.0) || !(el.eccentricity > 0.0)) {
        throw DomainError("hankel: requires eps r > 0");
    }
    return {wave_number * (el.semi_latus_rectum - r), wave_number * el.eccentricity * r};
}

}  // namespace

WkbWave debye_phase(double wave_number, double r, double caustic_radius, double index,
                    WaveDirection direction) {
    check_wave_number(wave_number);
    if (!(index * r > caustic_radius)) {
        throw DomainError("debye_phase: r lies in the shadow region, use shadow_amplitude");
    }
    const double eikonal = eikonal_free(r, caustic_radius, index).value;
    const double momentum = std::sqrt((index * r - caustic_radius) * (index * r + caustic_radius));
    const double theta = -quarter_pi;
    const double outgoing = wave_number * eikonal + theta;
    WkbWave wave{};
    wave.wave_number = wave_number;
    wave.phase = direction == WaveDirection::outgoing ? outgoing : -outgoing;
    wave.amplitude = 1.0 / std::sqrt(wave_number * momentum);
    wave.direction = direction;
    wave.phase_constant = theta;
    return wave;
}

double debye_bessel_j(double wave_number, double r, double caustic_radius, double index) {
    const WkbWave w = debye_phase(wave_number, r, caustic_radius, index);
    return std::sqrt(2.0 / pi) * w.amplitude * std::cos(w.phase);
}

double matching_growth_coefficient(double amplitude_constant, double phase_constant) {
    // cos(theta - pi/4) written as sin(theta + pi/4) so theta = -pi/4 gives an exact zero.
    return 0.5 * amplitude_constant * std::sin(phase_constant + quarter_pi);
}

ShadowWave shadow_amplitude(double wave_number, double r, double caustic_radius,
                            double phase_constant, double amplitude_constant) {
    check_wave_number(wave_number);
    if (!(r > 0.0) || !(r < caustic_radius)) {
        throw DomainError("shadow_amplitude: requires 0 < r < r_a");
    }
    const double depth = eikonal_shadow(r, caustic_radius).imag;
    const double momentum = std::sqrt((caustic_radius - r) * (caustic_radius + r));
    ShadowWave wave{};
    wave.decaying_coefficient = 0.5 * amplitude_constant;
    wave.growing_coefficient = matching_growth_coefficient(amplitude_constant, phase_constant);
    wave.decay_factor = std::exp(-wave_number * depth);
    wave.growth_factor = std::exp(wave_number * depth);
    wave.prefactor = 1.0 / std::sqrt(wave_number * momentum);
    return wave;
}

cplx hankel_phase(cplx phi, double r, const OrbitElements& el) {
    return el.eccentricity * r * std::sin(phi) - (el.semi_latus_rectum - r) * phi;
}

cplx hankel_phase_slope(cplx phi, double r, const OrbitElements& el) {
    return el.eccentricity * r * std::cos(phi) - (el.semi_latus_rectum - r);
}

SaddleResult hankel_saddle(double wave_number, double r, const OrbitElements& el) {
    check_wave_number(wave_number);
    if (!(r > 0.0) || !(el.eccentricity > 0.0)) throw DomainError("hankel_saddle: requires eps r > 0");
    const double gap = el.semi_latus_rectum - r;
    const double reach = el.eccentricity * r;
    SaddleResult out{};
    if (std::abs(gap) < reach) {
        const double phi = std::acos(gap / reach);
        const double radial = std::sqrt((reach - gap) * (reach + gap));
        out.saddle = phi;
        out.value = radial - gap * phi;
        out.branch = SaddleBranch::oscillatory;
        out.second_derivative = -radial;
    } else if (gap >= reach) {
        const double depth = std::acosh(gap / reach);
        const double radial = std::sqrt((gap - reach) * (gap + reach));
        out.saddle = cplx(0.0, depth);
        out.value = cplx(0.0, radial - gap * depth);
        out.branch = SaddleBranch::shadow;
        out.second_derivative = cplx(0.0, -reach * std::sinh(depth));
    } else {
        throw DomainError("hankel_saddle: r - q > eps r, no saddle on the principal contour");
    }
    return out;
}

cplx hankel_numeric(double wave_number, double r, const OrbitElements& el, int kind) {
    if (kind != 1 && kind != 2) throw DomainError("hankel_numeric: kind must be 1 or 2");
    if (wave_number * el.semi_latus_rectum > 1e3) {
        throw DomainError("hankel_numeric: kappa q exceeds 1e3");
    }
    const auto [nu, x] = hankel_arguments(wave_number, r, el);
    if (nu <= -x) throw DomainError("hankel_numeric: order below -argument, not supported");
    const double sigma = kind == 1 ? 1.0 : -1.0;

    cplx integral;
    double shift = 0.0;
    if (nu < x) {
        // Saddle at w = i sigma alpha; 45-degree segment between the two
        // horizontal lines Im w = 0 and Im w = sigma pi.
        const double alpha = std::acos(nu / x);
        const Sommerfeld f{x, nu, 0.0};
        integral = left_tail(f, -alpha) +
                   segment(f, cplx(-alpha, 0.0), cplx(pi - alpha, sigma * pi)) +
                   right_tail(f, pi - alpha, sigma);
    } else {
        // Real saddles at -beta (maximum along the axis) and +beta; leave
        // the axis vertically at +beta.
        const double beta = std::acosh(nu / x);
        shift = -x * std::sinh(beta) + nu * beta;
        if (shift > 700.0) throw DomainError("hankel_numeric: result overflows double precision");
        const Sommerfeld f{x, nu, shift};
        integral = left_tail(f, -beta) + segment(f, cplx(-beta, 0.0), cplx(beta, 0.0)) +
                   segment(f, cplx(beta, 0.0), cplx(beta, sigma * pi)) +
                   right_tail(f, beta, sigma);
    }
    return sigma / (pi * cplx(0.0, 1.0)) * integral * std::exp(shift);
}

cplx hankel_leading_order(double wave_number, double r, const OrbitElements& el, int kind) {
    if (kind != 1 && kind != 2) throw DomainError("hankel_leading_order: kind must be 1 or 2");
    const auto [nu, x] = hankel_arguments(wave_number, r, el);
    const SaddleResult s = hankel_saddle(wave_number, r, el);
    const double sigma = kind == 1 ? 1.0 : -1.0;
    const cplx i(0.0, 1.0);
    if (s.branch == SaddleBranch::oscillatory) {
        const double radial = std::sqrt((x - nu) * (x + nu));
        const double phase = wave_number * s.value.real() - quarter_pi;
        return std::sqrt(2.0 / (pi * radial)) * std::exp(sigma * i * phase);
    }
    const double radial = std::sqrt((nu - x) * (nu + x));
    const double exponent = -wave_number * s.value.imag();  // nu beta - sqrt(nu^2 - x^2)
    const double j = std::exp(-exponent) / std::sqrt(2.0 * pi * radial);
    const double y = -std::exp(exponent) * std::sqrt(2.0 / (pi * radial));
    return j + sigma * i * y;
}

}  // namespace fermat
