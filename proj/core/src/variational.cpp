#include "fermat/variational.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "fermat/errors.hpp"

namespace fermat {
namespace {

struct Chord {
    double length;
    double mid;      // |midpoint|
    double dlen_da;  // derivatives with respect to the two end radii
    double dlen_db;
    double dmid_da;
    double dmid_db;
};

// Chord between (a, phi) and (b, phi + delta), written without the
// cancellation of the law of cosines for short, nearly radial chords.
Chord chord(double a, double b, double delta) {
    const double s = std::sin(0.5 * delta);
    const double s2 = s * s;
    const double length = std::sqrt((a - b) * (a - b) + 4.0 * a * b * s2);
    const double mid = 0.5 * std::sqrt((a + b) * (a + b) - 4.0 * a * b * s2);
    const double cosd = 1.0 - 2.0 * s2;
    Chord c{length, mid, 0.0, 0.0, 0.0, 0.0};
    if (length > 0.0) {
        c.dlen_da = ((a - b) + 2.0 * b * s2) / length;
        c.dlen_db = ((b - a) + 2.0 * a * s2) / length;
    }
    c.dmid_da = (a + b * cosd) / (4.0 * mid);
    c.dmid_db = (b + a * cosd) / (4.0 * mid);
    return c;
}

double index_at(const MediumModel& m, double r) {
    if (!m.validity().contains(r)) {
        throw DomainError("optical path sample outside the medium validity region: r = " +
                          std::to_string(r));
    }
    return std::sqrt(std::max(m.index_squared_unchecked(r), 0.0));
}

void check_samples(const RayPath& path, const MediumModel& m) {
    if (path.size() < 2) throw DomainError("optical path needs at least two samples");
    for (const auto& p : path.samples) (void)index_at(m, p.r);
}

double length_of(const std::vector<double>& r, const std::vector<double>& phi,
                 const MediumModel& m) {
    double total = 0.0;
    for (std::size_t k = 0; k + 1 < r.size(); ++k) {
        const Chord c = chord(r[k], r[k + 1], phi[k + 1] - phi[k]);
        total += index_at(m, c.mid) * c.length;
    }
    return total;
}

void gradient_of(const std::vector<double>& r, const std::vector<double>& phi,
                 const MediumModel& m, std::vector<double>& g) {
    g.assign(r.size(), 0.0);
    for (std::size_t k = 0; k + 1 < r.size(); ++k) {
        const Chord c = chord(r[k], r[k + 1], phi[k + 1] - phi[k]);
        const double eta = index_at(m, c.mid);
        const double deta = eta > 0.0 ? m.index_squared_slope(c.mid) / (2.0 * eta) : 0.0;
        g[k] += deta * c.dmid_da * c.length + eta * c.dlen_da;
        g[k + 1] += deta * c.dmid_db * c.length + eta * c.dlen_db;
    }
}

// Largest derivative with respect to ln r_k; a length, so it compares
// directly with the optical length and is independent of the unit system.
double stationarity(const std::vector<double>& g, const std::vector<double>& r) {
    double worst = 0.0;
    for (std::size_t k = 1; k + 1 < g.size(); ++k) worst = std::max(worst, std::abs(g[k] * r[k]));
    return worst;
}

// Mean length of the two chords adjacent to each node; sets the finite
// difference step of the Hessian columns.
std::vector<double> node_scales(const std::vector<double>& r, const std::vector<double>& phi) {
    const std::size_t n = r.size();
    std::vector<double> len(n - 1);
    for (std::size_t k = 0; k + 1 < n; ++k) len[k] = chord(r[k], r[k + 1], phi[k + 1] - phi[k]).length;
    std::vector<double> h(n, 0.0);
    for (std::size_t k = 1; k + 1 < n; ++k) h[k] = 0.5 * (len[k - 1] + len[k]);
    return h;
}

// Thomas algorithm for a symmetric tridiagonal system; false if a pivot is
// not positive (Hessian not positive definite).
bool solve_tridiagonal(std::vector<double> diag, const std::vector<double>& off,
                       std::vector<double> rhs, std::vector<double>& x) {
    const std::size_t n = diag.size();
    for (std::size_t i = 1; i < n; ++i) {
        if (!(diag[i - 1] > 0.0)) return false;
        const double w = off[i - 1] / diag[i - 1];
        diag[i] -= w * off[i - 1];
        rhs[i] -= w * rhs[i - 1];
    }
    if (!(diag[n - 1] > 0.0)) return false;
    x.assign(n, 0.0);
    x[n - 1] = rhs[n - 1] / diag[n - 1];
    for (std::size_t i = n - 1; i-- > 0;) x[i] = (rhs[i] - off[i] * x[i + 1]) / diag[i];
    return true;
}

std::vector<double> problem_angles(const PathProblem& p) {
    const std::size_t n = p.segments;
    if (p.angles.empty()) {
        std::vector<double> phi(n + 1);
        for (std::size_t k = 0; k <= n; ++k) {
            const double t = static_cast<double>(k) / static_cast<double>(n);
            phi[k] = p.start.phi + t * (p.end.phi - p.start.phi);
        }
        phi[n] = p.end.phi;
        return phi;
    }
    if (p.angles.size() != n + 1 || p.angles.front() != p.start.phi ||
        p.angles.back() != p.end.phi) {
        throw DomainError("minimize_path: angle grid must have segments + 1 entries spanning the endpoints");
    }
    for (std::size_t k = 0; k < n; ++k) {
        if ((p.angles[k + 1] - p.angles[k]) * (p.end.phi - p.start.phi) <= 0.0) {
            throw DomainError("minimize_path: angle grid must be strictly monotone");
        }
    }
    return p.angles;
}

}  // namespace

double optical_length(const RayPath& path, const MediumModel& medium) {
    check_samples(path, medium);
    std::vector<double> r, phi;
    for (const auto& s : path.samples) {
        r.push_back(s.r);
        phi.push_back(s.phi);
    }
    return length_of(r, phi, medium);
}

std::vector<double> optical_length_gradient(const RayPath& path, const MediumModel& medium) {
    check_samples(path, medium);
    std::vector<double> r, phi, g;
    for (const auto& s : path.samples) {
        r.push_back(s.r);
        phi.push_back(s.phi);
    }
    gradient_of(r, phi, medium, g);
    return g;
}

RayPath minimize_path(const PathProblem& p) {
    const MediumModel& m = p.medium;
    if (p.segments < 8) throw DomainError("minimize_path: needs at least 8 segments");
    if (!(p.tolerance > 0.0)) throw DomainError("minimize_path: tolerance must be positive");
    if (!m.validity().contains(p.start.r) || !m.validity().contains(p.end.r)) {
        throw DomainError("minimize_path: endpoints outside the medium validity region");
    }
    const double span = p.end.phi - p.start.phi;
    if (!(std::abs(span) > 0.0 && std::abs(span) < std::numbers::pi)) {
        throw DomainError("minimize_path: endpoints must subtend an angle in (0, pi)");
    }
    const std::vector<double> phi = problem_angles(p);
    const std::size_t n = phi.size();

    // Straight chord P0 + t (P1 - P0), intersected with each polar ray.
    const double x0 = p.start.r * std::cos(p.start.phi), y0 = p.start.r * std::sin(p.start.phi);
    const double x1 = p.end.r * std::cos(p.end.phi), y1 = p.end.r * std::sin(p.end.phi);
    const double dx = x1 - x0, dy = y1 - y0;
    const double moment = x0 * dy - y0 * dx;
    std::vector<double> r(n);
    r.front() = p.start.r;
    r.back() = p.end.r;
    for (std::size_t k = 1; k + 1 < n; ++k) {
        r[k] = moment / (std::cos(phi[k]) * dy - std::sin(phi[k]) * dx);
        if (!m.validity().contains(r[k])) {
            throw DomainError("minimize_path: straight-chord start leaves the validity region");
        }
    }

    auto result = [&] {
        RayPath out;
        out.kind = PathKind::optimized;
        out.samples.reserve(n);
        out.samples.push_back(p.start);
        for (std::size_t k = 1; k + 1 < n; ++k) out.samples.push_back({r[k], phi[k]});
        out.samples.push_back(p.end);
        return out;
    };
    constexpr double eps = std::numeric_limits<double>::epsilon();

    const std::size_t interior = n - 2;
    std::vector<double> g, gp, gm, diag(interior), off(interior - 1), step, trial(n), gt;
    gradient_of(r, phi, m, g);
    double length = length_of(r, phi, m);

    for (std::size_t iter = 0; iter <= p.max_iterations; ++iter) {
        const std::vector<double> h = node_scales(r, phi);
        const double measure = stationarity(g, r);
        const double target = p.tolerance * length / static_cast<double>(n - 1);
        if (measure <= target) return result();
        if (iter == p.max_iterations) break;

        // Hessian columns by central differences of the analytic gradient,
        // three interleaved colours so that perturbations do not overlap.
        std::fill(diag.begin(), diag.end(), 0.0);
        std::fill(off.begin(), off.end(), 0.0);
        for (std::size_t colour = 0; colour < 3; ++colour) {
            std::vector<double> rp = r, rm = r;
            for (std::size_t k = 1 + colour; k + 1 < n; k += 3) {
                const double d = 1e-4 * h[k];
                rp[k] += d;
                rm[k] -= d;
            }
            gradient_of(rp, phi, m, gp);
            gradient_of(rm, phi, m, gm);
            for (std::size_t k = 1 + colour; k + 1 < n; k += 3) {
                const double inv = 1.0 / (rp[k] - rm[k]);
                diag[k - 1] = (gp[k] - gm[k]) * inv;
                if (k >= 2) off[k - 2] += 0.5 * (gp[k - 1] - gm[k - 1]) * inv;
                if (k + 2 < n) off[k - 1] += 0.5 * (gp[k + 1] - gm[k + 1]) * inv;
            }
        }
        // A one-ulp change of r_k moves g_k by about eps r_k H_kk.  Once every
        // node is within a few such units of zero no further progress is
        // possible; this floor grows like N while the target falls like 1/N.
        bool at_floor = true;
        for (std::size_t k = 1; k + 1 < n && at_floor; ++k) {
            const double floor = 4.0 * eps * r[k] * r[k] * std::abs(diag[k - 1]);
            at_floor = std::abs(g[k] * r[k]) <= std::max(target, floor);
        }
        if (at_floor) return result();

        std::vector<double> rhs(interior);
        for (std::size_t k = 0; k < interior; ++k) rhs[k] = -g[k + 1];
        double shift = 0.0;
        const double diag_scale = *std::max_element(diag.begin(), diag.end());
        while (true) {
            std::vector<double> shifted = diag;
            for (double& d : shifted) d += shift;
            if (solve_tridiagonal(shifted, off, rhs, step)) break;
            shift = shift == 0.0 ? 1e-8 * std::abs(diag_scale) : 10.0 * shift;
            if (!std::isfinite(shift) || shift > 1e8 * std::abs(diag_scale)) {
                throw ConvergenceError("minimize_path: Hessian cannot be regularized");
            }
        }

        // Backtrack until inside the domain and either the length or the
        // stationarity measure improves (the length alone stalls at roundoff).
        bool accepted = false;
        for (double lambda = 1.0; lambda > 1e-12; lambda *= 0.5) {
            trial = r;
            bool inside = true;
            for (std::size_t k = 1; k + 1 < n; ++k) {
                trial[k] = r[k] + lambda * step[k - 1];
                if (!m.validity().contains(trial[k])) {
                    inside = false;
                    break;
                }
            }
            if (!inside) continue;
            const double trial_length = length_of(trial, phi, m);
            gradient_of(trial, phi, m, gt);
            const double trial_measure = stationarity(gt, trial);
            if (trial_length < length || trial_measure < measure) {
                r.swap(trial);
                g.swap(gt);
                length = trial_length;
                accepted = true;
                break;
            }
        }
        if (!accepted) break;
    }
    throw ConvergenceError("minimize_path: no stationary path within " +
                           std::to_string(p.max_iterations) + " iterations");
}

namespace {

struct Line {
    double dx, dy;
};

// Total-least-squares direction of samples [begin, end), oriented along
// the path.
Line fit_direction(const RayPath& path, std::size_t begin, std::size_t end) {
    double mx = 0.0, my = 0.0;
    const double count = static_cast<double>(end - begin);
    for (std::size_t k = begin; k < end; ++k) {
        mx += path.samples[k].r * std::cos(path.samples[k].phi);
        my += path.samples[k].r * std::sin(path.samples[k].phi);
    }
    mx /= count;
    my /= count;
    double sxx = 0.0, syy = 0.0, sxy = 0.0;
    for (std::size_t k = begin; k < end; ++k) {
        const double x = path.samples[k].r * std::cos(path.samples[k].phi) - mx;
        const double y = path.samples[k].r * std::sin(path.samples[k].phi) - my;
        sxx += x * x;
        syy += y * y;
        sxy += x * y;
    }
    const double angle = 0.5 * std::atan2(2.0 * sxy, sxx - syy);
    Line l{std::cos(angle), std::sin(angle)};
    const auto& a = path.samples[begin];
    const auto& b = path.samples[end - 1];
    const double ex = b.r * std::cos(b.phi) - a.r * std::cos(a.phi);
    const double ey = b.r * std::sin(b.phi) - a.r * std::sin(a.phi);
    if (l.dx * ex + l.dy * ey < 0.0) {
        l.dx = -l.dx;
        l.dy = -l.dy;
    }
    return l;
}

}  // namespace

double measure_deflection(const RayPath& path) {
    const std::size_t n = path.size();
    const std::size_t tail = n / 10;
    if (tail < 2) throw DomainError("measure_deflection: path too short (need >= 20 samples)");
    const Line in = fit_direction(path, 0, tail);
    const Line out = fit_direction(path, n - tail, n);
    const double turn = std::atan2(in.dx * out.dy - in.dy * out.dx, in.dx * out.dx + in.dy * out.dy);
    // Counter-clockwise travel bends left toward the origin.
    return path.samples.back().phi >= path.samples.front().phi ? turn : -turn;
}

std::vector<double> gudermannian_grid(double mid, double half_span, double u_max,
                                      std::size_t segments) {
    if (segments < 2 || !(u_max > 0.0)) throw DomainError("gudermannian_grid: invalid arguments");
    auto gd = [](double u) { return std::atan(std::sinh(u)); };
    const double scale = half_span / gd(u_max);
    std::vector<double> phi(segments + 1);
    for (std::size_t k = 0; k <= segments; ++k) {
        const double u = -u_max + 2.0 * u_max * static_cast<double>(k) / static_cast<double>(segments);
        phi[k] = mid + scale * gd(u);
    }
    phi.front() = mid - half_span;
    phi.back() = mid + half_span;
    return phi;
}

}  // namespace fermat
