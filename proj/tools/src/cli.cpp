#include "fermat/tools/cli.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <optional>
#include <stdexcept>

#include "CLI11.hpp"
#include "json.hpp"

#include "fermat/bessel.hpp"
#include "fermat/asymptotics.hpp"
#include "fermat/eikonal.hpp"
#include "fermat/errors.hpp"
#include "fermat/quadrature.hpp"
#include "fermat/relativity.hpp"
#include "fermat/roots.hpp"
#include "fermat/units.hpp"
#include "fermat/variational.hpp"
#include "fermat/tools/criteria.hpp"
#include "fermat/tools/table.hpp"

namespace fermat::tools {
namespace {

constexpr double pi = std::numbers::pi;

// Raised for problems in the user's configuration; maps to exit code 2.
struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// --- inputs ----------------------------------------------------------------

enum class Kind { length, dimensionless, wavenumber, velocity, count, choice };

const std::map<std::string, double>& unit_whitelist(Kind k) {
    static const std::map<std::string, double> length{{"m", 1.0}, {"km", 1e3}, {"au", 1.495978707e11}};
    static const std::map<std::string, double> plain{{"1", 1.0}};
    static const std::map<std::string, double> wave{{"1/m", 1.0}, {"1/km", 1e-3}};
    static const std::map<std::string, double> speed{{"m/s", 1.0}, {"km/s", 1e3}};
    static const std::map<std::string, double> count{{"count", 1.0}, {"1", 1.0}};
    static const std::map<std::string, double> none;
    switch (k) {
        case Kind::length: return length;
        case Kind::dimensionless: return plain;
        case Kind::wavenumber: return wave;
        case Kind::velocity: return speed;
        case Kind::count: return count;
        case Kind::choice: return none;
    }
    return none;
}

const char* si_unit(Kind k) {
    switch (k) {
        case Kind::length: return "m";
        case Kind::dimensionless: return "1";
        case Kind::wavenumber: return "1/m";
        case Kind::velocity: return "m/s";
        case Kind::count: return "count";
        case Kind::choice: return "";
    }
    return "";
}

struct Field {
    std::string name;
    Kind kind;
    double number = 0.0;  // default, SI
    std::string text;     // default for choices
    std::string help;
    std::vector<std::string> choices = {};
    bool tolerance = false;
};

struct Slot {
    const Field* field;
    double number;
    std::int64_t integer;
    std::string text;
    CLI::Option* option = nullptr;
};

class Inputs {
public:
    explicit Inputs(const std::vector<Field>& fields) {
        for (const Field& f : fields) {
            order_.push_back(f.name);
            slots_.emplace(f.name, Slot{&f, f.number, static_cast<std::int64_t>(f.number), f.text});
        }
    }

    Slot& slot(const std::string& name) { return slots_.at(name); }

    double number(const std::string& name) const { return slots_.at(name).number; }
    std::size_t count(const std::string& name) const {
        const std::int64_t v = slots_.at(name).integer;
        if (v <= 0) throw ConfigError("--" + name + " must be a positive integer");
        return static_cast<std::size_t>(v);
    }
    const std::string& text(const std::string& name) const { return slots_.at(name).text; }

    /// True when every value still equals its documented default.
    bool at_defaults() const {
        for (const auto& [name, s] : slots_) {
            if (s.field->kind == Kind::choice ? s.text != s.field->text
                : s.field->kind == Kind::count ? s.integer != static_cast<std::int64_t>(s.field->number)
                                               : s.number != s.field->number) {
                return false;
            }
        }
        return true;
    }

    std::string echo() const {
        std::string out;
        for (const std::string& name : order_) {
            const Slot& s = slots_.at(name);
            if (!out.empty()) out += "; ";
            out += name + "=";
            if (s.field->kind == Kind::choice) {
                out += s.text;
            } else if (s.field->kind == Kind::count) {
                out += std::to_string(s.integer);
            } else {
                char buf[40];
                std::snprintf(buf, sizeof buf, "%.12g", s.number);
                out += buf;
                if (s.field->kind != Kind::dimensionless) out += std::string(" ") + si_unit(s.field->kind);
            }
        }
        return out;
    }

private:
    std::vector<std::string> order_;
    std::map<std::string, Slot> slots_;
};

// --- context ---------------------------------------------------------------

struct Context {
    Format format = Format::csv;
    std::string path;  // empty: stdout
    std::ostream& out;
    std::ostream& err;

    void emit(const Table& t) const { emit_table(t, format, path, out); }
    /// Human-readable summary lines go wherever the data does not.
    std::ostream& notes() const { return path.empty() ? err : out; }
};

// --- observable tables -------------------------------------------------------

Table observable_table() {
    return Table{{"quantity", "value", "units", "method", "reference", "relative_deviation",
                  "tolerance", "status", "inputs"},
                 {}};
}

void add_observable(Table& t, const std::string& name, double value, const std::string& units,
                    const std::string& method, std::optional<double> reference,
                    std::optional<double> tolerance, const std::string& inputs) {
    Cell ref, dev, tol, status = std::string();
    if (reference) {
        ref = *reference;
        const double d = *reference != 0.0 ? value / *reference - 1.0 : value - *reference;
        dev = d;
        if (tolerance) {
            tol = *tolerance;
            status = std::string(std::abs(d) <= *tolerance ? "PASS" : "FAIL");
        }
    }
    t.add({name, value, units, method, ref, dev, tol, status, inputs});
}

template <class T>
std::optional<T> when(bool condition, T value) {
    return condition ? std::optional<T>(value) : std::nullopt;
}

// --- commands ----------------------------------------------------------------

int cmd_delay(const Inputs& in, const Context& ctx) {
    const DelayScenario s{in.number("xe"), in.number("xv"), in.number("impact"), in.number("rs")};
    const double c = in.number("c");
    const DelayResult d = radar_delay(s, c);
    const double quad = radar_delay_quadrature(s, c);
    const bool quoted = in.at_defaults();
    const std::string echo = in.echo();
    Table t = observable_table();
    add_observable(t, "round_trip_exact", d.round_trip_exact, "s", "exact", when(quoted, 2.4e-4),
                   0.05, echo);
    add_observable(t, "round_trip_approximate", d.round_trip_approximate, "s", "approximate",
                   when(quoted, 2.4e-4), 0.05, echo);
    add_observable(t, "round_trip_log_vs_exact", d.round_trip_approximate, "s", "approximate",
                   d.round_trip_exact, 5e-3, echo);
    add_observable(t, "one_way_exact", d.one_way_exact, "s", "exact", std::nullopt, std::nullopt, echo);
    add_observable(t, "one_way_quadrature", quad, "s", "quadrature", d.one_way_exact, 1e-10, echo);
    add_observable(t, "far_field", d.far_field ? 1.0 : 0.0, "flag", "exact", std::nullopt,
                   std::nullopt, echo);
    ctx.emit(t);
    return exit_code::ok;
}

int cmd_deflect(const Inputs& in, const Context& ctx) {
    const double ra = in.number("ra"), rs = in.number("rs");
    const NewtonianDeflection n = deflection_newtonian(ra, rs);
    const QuadrupoleDeflection q = deflection_quadrupole(ra, rs);
    const std::string echo = in.echo();
    Table t = observable_table();
    add_observable(t, "newtonian_deflection", n.deflection, "rad", "exact", std::nullopt, std::nullopt, echo);
    add_observable(t, "newtonian_deflection_arcsec", radians_to_arcsec(n.deflection), "arcsec", "exact",
                   std::nullopt, std::nullopt, echo);
    add_observable(t, "newtonian_small_angle", n.small_angle, "rad", "approximate", std::nullopt,
                   std::nullopt, echo);
    add_observable(t, "quadrupole_deflection", q.deflection, "rad", "exact", std::nullopt, std::nullopt, echo);
    add_observable(t, "quadrupole_deflection_arcsec", radians_to_arcsec(q.deflection), "arcsec", "exact",
                   std::nullopt, std::nullopt, echo);
    add_observable(t, "quadrupole_deflection_quadrature", q.deflection_quadrature, "rad", "quadrature",
                   when(rs > 0.0, q.deflection), 1e-10, echo);
    if (rs > 0.0) {
        add_observable(t, "deflection_ratio", q.deflection / n.deflection, "1", "exact",
                       when(rs / ra <= 1e-5, 2.0), 1e-9, echo);
    }
    add_observable(t, "weak_field", q.weak_field ? 1.0 : 0.0, "flag", "exact", std::nullopt,
                   std::nullopt, echo);
    ctx.emit(t);
    return exit_code::ok;
}

MercuryInputs orbit_inputs(const Inputs& in, double c) {
    MercuryInputs m;
    m.semi_major_axis = in.number("a");
    m.eccentricity = in.number("eps");
    m.schwarzschild_radius = in.number("rs");
    m.speed_of_light = c;
    return m;
}

int cmd_perihelion(const Inputs& in, const Context& ctx) {
    const OrbitElements el = mercury_elements(orbit_inputs(in, constants::speed_of_light));
    const PerihelionAdvance adv = perihelion_advance(el);
    const PerihelionTerms terms = perihelion_expansion_terms(el);
    const double libration = perihelion_advance_quadrature(el);
    const bool quoted = in.at_defaults();
    const std::string echo = in.echo();
    Table t = observable_table();
    add_observable(t, "advance_per_revolution", adv.from_conic, "rad", "exact", std::nullopt,
                   std::nullopt, echo);
    add_observable(t, "advance_per_revolution_arcsec", radians_to_arcsec(adv.from_conic), "arcsec",
                   "exact", when(quoted, 0.104), 0.01, echo);
    add_observable(t, "advance_from_caustic_radius", adv.from_caustic_radius, "rad", "exact",
                   adv.from_conic, 1e-12, echo);
    add_observable(t, "advance_libration_quadrature", libration, "rad", "quadrature", adv.from_conic,
                   1e-6, echo);
    add_observable(t, "unperturbed_closure", terms.unperturbed_closure, "rad", "quadrature", 2.0 * pi,
                   1e-8, echo);
    add_observable(t, "first_order_increment", terms.first_order, "m", "exact", std::nullopt,
                   std::nullopt, echo);
    add_observable(t, "first_order_increment_quadrature", terms.first_order_quadrature, "m",
                   "quadrature", terms.first_order, 1e-8, echo);
    add_observable(t, "caustic_radius", el.caustic_radius, "m", "exact", std::nullopt, std::nullopt, echo);
    add_observable(t, "weak_field", terms.weak_field ? 1.0 : 0.0, "flag", "exact", std::nullopt,
                   std::nullopt, echo);
    ctx.emit(t);
    return exit_code::ok;
}

int cmd_mercury(const Inputs& in, const Context& ctx) {
    const MercuryInputs m = orbit_inputs(in, in.number("c"));
    const bool quoted = in.at_defaults();
    const std::map<std::string, double> tolerances{{"mean_motion", 0.01},
                                                   {"period", 0.01},
                                                   {"perihelion_advance", 0.01},
                                                   {"perihelion_rate", 0.02}};
    Table t = observable_table();
    for (const ObservableReport& r : mercury_report(m)) {
        const auto tol = tolerances.find(r.name);
        add_observable(t, r.name, r.value, r.units,
                       r.method == Method::exact ? "exact" : "approximate",
                       quoted ? r.reference : std::nullopt,
                       tol == tolerances.end() ? std::nullopt : std::optional<double>(tol->second),
                       in.echo());
    }
    const OrbitElements el = mercury_elements(m);
    add_observable(t, "caustic_radius", el.caustic_radius, "m", "exact", std::nullopt, std::nullopt,
                   in.echo());
    add_observable(t, "semi_latus_rectum", el.semi_latus_rectum, "m", "exact", std::nullopt,
                   std::nullopt, in.echo());
    ctx.emit(t);
    return exit_code::ok;
}

int cmd_eikonal(const Inputs& in, const Context& ctx) {
    const std::string law = in.text("law");
    const double ra = in.number("ra"), rs = in.number("rs"), A = in.number("energy");
    const double eta = in.number("index");
    const std::size_t samples = in.count("samples");
    const double tolerance = in.number("tolerance");

    double lo = 0.0, hi = 0.0;
    std::function<EikonalValue(double)> closed;
    std::function<double(double)> momentum;  // eta^2 rho^2 - r_a^2
    std::string method = "exact";
    if (law == "free" || law == "shadow") {
        const double turning = ra / eta;
        lo = law == "free" ? turning : 0.05 * turning;
        hi = law == "free" ? 10.0 * turning : turning;
        closed = [=](double r) { return law == "free" ? eikonal_free(r, ra, eta) : eikonal_shadow(r, ra, eta); };
        momentum = [=](double x) { return (eta * x - ra) * (eta * x + ra); };
    } else if (law == "kepler") {
        const OrbitElements el = orbit_elements(A, ra, rs);
        lo = el.r_minus;
        hi = el.r_plus ? *el.r_plus : 10.0 * el.r_minus;
        closed = [=](double r) { return eikonal_kepler(r, el); };
        // Factored about the turning points: the expanded quadratic loses
        // half its digits to cancellation there.
        const double other = el.semi_latus_rectum / (1.0 - el.eccentricity);
        if (el.parabolic()) {
            momentum = [=](double x) { return rs * (x - el.r_minus); };
        } else if (el.bound()) {
            momentum = [=](double x) { return A * (x - el.r_minus) * (other - x); };
        } else {
            momentum = [=](double x) { return -A * (x - el.r_minus) * (x - other); };
        }
    } else if (law == "parabolic") {
        const OrbitElements el = orbit_elements(0.0, ra, rs);
        lo = el.r_minus;
        hi = 10.0 * lo;
        closed = [=](double r) { return eikonal_parabolic(r, ra, rs); };
        momentum = [=](double x) { return rs * x - ra * ra; };
    } else if (law == "quadrupole") {
        lo = quadrupole_caustic(ra, rs);
        hi = 10.0 * ra;
        closed = [=](double r) { return eikonal_quadrupole(r, ra, rs); };
        const double r0 = lo;
        momentum = [=](double x) { return (x - r0) * (x * x + r0 * x + r0 * r0 - ra * ra) / x; };
    } else {  // perihelion
        const LibrationInterval lib = perihelion_libration(A, ra, rs);
        lo = lib.inner;
        hi = lib.outer;
        closed = [=](double r) { return eikonal_perihelion(r, A, ra, rs); };
        // Third root of the cubic from the sum of roots, R_s / A.
        const double third = rs / A - lib.inner - lib.outer;
        momentum = [=](double x) { return -A * (x - lib.inner) * (x - lib.outer) * (x - third) / x; };
        method = "quadrature";
    }
    const double turning = lo;
    if (in.number("rmin") > 0.0) lo = in.number("rmin");
    if (in.number("rmax") > 0.0) hi = in.number("rmax");
    if (!(hi >= lo)) throw ConfigError("eikonal: empty radius range");

    Table t{{"r", "real", "imag", "quadrature", "relative_error", "branch", "method"}, {}};
    double worst = 0.0;
    for (std::size_t i = 0; i < samples; ++i) {
        const double r = samples == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(samples - 1);
        const EikonalValue v = closed(r);
        double reference = 0.0;
        if (v.branch == Branch::periodic) {
            reference = law == "shadow" ? 0.0 : eikonal_quadrature(momentum, turning, r);
        } else {
            const double edge = law == "shadow" || law == "free" ? ra / eta : turning;
            reference = eikonal_quadrature([&](double x) { return -momentum(x); }, r, edge);
        }
        const double magnitude = v.branch == Branch::periodic ? v.value : v.imag;
        const double error = reference != 0.0 ? std::abs(magnitude / reference - 1.0) : std::abs(magnitude);
        worst = std::max(worst, error);
        t.add({r, v.value, v.imag, reference, error,
               std::string(v.branch == Branch::periodic ? "periodic" : "shadow"), method});
    }
    ctx.emit(t);
    ctx.notes() << "eikonal " << law << ": " << in.echo() << "\n"
                << "max relative error vs quadrature " << format_number(worst) << " (tolerance "
                << format_number(tolerance) << "): " << (worst <= tolerance ? "PASS" : "FAIL") << "\n";
    return exit_code::ok;
}

int cmd_bessel_check(const Inputs& in, const Context& ctx) {
    const double kappa = in.number("kappa"), ra = in.number("ra"), eta = in.number("index");
    const std::size_t samples = in.count("samples");
    const double bound = in.number("tolerance");
    const double lo = in.number("rmin") > 0.0 ? in.number("rmin") : 1.5 * ra / eta;
    const double hi = in.number("rmax") > 0.0 ? in.number("rmax") : 10.0 * ra / eta;
    if (!(hi >= lo) || !(lo * eta > ra)) {
        throw ConfigError("bessel-check: radius range must lie outside the caustic (eta r > r_a)");
    }
    const double order = kappa * ra;
    Table t{{"r", "j_exact", "wkb", "abs_error", "envelope", "relative_to_envelope"}, {}};
    double worst = 0.0;
    for (std::size_t i = 0; i < samples; ++i) {
        const double r = samples == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(samples - 1);
        const double exact = reference_bessel_j(order, kappa * eta * r);
        const double wkb = debye_bessel_j(kappa, r, ra, eta);
        const double envelope = std::sqrt(2.0 / pi) * debye_phase(kappa, r, ra, eta).amplitude;
        const double error = std::abs(wkb - exact);
        worst = std::max(worst, error / envelope);
        t.add({r, exact, wkb, error, envelope, error / envelope});
    }
    ctx.emit(t);
    const bool applies = order >= 20.0 && eta * lo >= 1.5 * ra;
    ctx.notes() << "bessel-check: " << in.echo() << "\n"
                << "max error / envelope " << format_number(worst) << " (bound " << format_number(bound)
                << (applies ? "" : ", bound documented only for kappa r_a >= 20 and eta r >= 1.5 r_a")
                << "): " << (!applies ? "n/a" : worst <= bound ? "PASS" : "FAIL") << "\n";
    return exit_code::ok;
}

// Angle swept between closest approach and radius `far` on the exact ray
// with angular momentum r_a.
double half_sweep(const MediumModel& m, double ra, double far) {
    auto g = [&](double r) { return m.index_squared_unchecked(r) * r * r - ra * ra; };
    if (!(g(far) > 0.0)) throw DomainError("optimize-path: far radius lies inside the turning point");
    double lo = far;
    while (g(lo) > 0.0) {
        lo *= 0.5;
        if (!m.validity().contains(lo)) throw DomainError("optimize-path: no turning point inside the medium");
    }
    const double r0 = bisect(g, lo, 2.0 * lo);
    // r = r0 + t^2 removes the inverse square root; very close to r0 the
    // radicand is replaced by its tangent, where roundoff would dominate.
    const double slope = m.index_squared_slope(r0) * r0 * r0 + 2.0 * m.index_squared_unchecked(r0) * r0;
    auto f = [&](double t) {
        const double r = r0 + t * t;
        const double v = t * t < 1e-10 * r0 ? slope * t * t : g(r);
        return v > 0.0 ? 2.0 * t * ra / (r * std::sqrt(v)) : 2.0 * ra / (r * std::sqrt(slope));
    };
    quad::Options opts;
    opts.abs_tol = 0.0;
    opts.rel_tol = 1e-12;
    return quad::require(quad::integrate(f, 0.0, std::sqrt(far - r0), opts), "optimize-path sweep");
}

int cmd_optimize_path(const Inputs& in, const Context& ctx) {
    const std::string kind = in.text("medium");
    const double ra = in.number("ra"), rs = in.number("rs"), A = in.number("energy");
    const double eta = in.number("index");
    const std::size_t segments = in.count("segments");

    const MediumModel medium = kind == "constant"     ? MediumModel::constant(eta)
                               : kind == "newtonian" ? MediumModel::newtonian(A, rs)
                                                     : MediumModel::quadrupole(A, rs, ra);
    const double expected = kind == "constant" ? 0.0 : kind == "newtonian" ? rs / ra : 2.0 * rs / ra;
    // The endpoints subtend about pi + theta - 2 r_a / far; keep that below pi
    // so the straight chord between them misses the centre.
    const double far = in.number("far") > 0.0 ? in.number("far")
                                              : ra * std::min(3e3, expected > 0.0 ? 1.0 / expected : 3e3);
    const double sweep = half_sweep(medium, ra, far);

    PathProblem p{medium, {far, 0.0}, {far, 0.0}, segments, in.number("tolerance"),
                  in.count("max_iterations"), {}};
    if (in.text("grid") == "gudermannian") {
        p.angles = gudermannian_grid(0.5 * pi, sweep, std::asinh(far / ra), segments);
        p.start.phi = p.angles.front();
        p.end.phi = p.angles.back();
    } else {
        p.start.phi = 0.5 * pi - sweep;
        p.end.phi = 0.5 * pi + sweep;
    }
    const RayPath path = minimize_path(p);
    const double theta = measure_deflection(path);

    Table t{{"index", "r", "phi", "x", "y"}, {}};
    for (std::size_t k = 0; k < path.size(); ++k) {
        const PolarPoint& s = path.samples[k];
        t.add({static_cast<double>(k), s.r, s.phi, s.r * std::cos(s.phi), s.r * std::sin(s.phi)});
    }
    ctx.emit(t);
    ctx.notes() << "optimize-path: " << in.echo() << "\n"
                << "optical length " << format_number(optical_length(path, medium)) << " m\n"
                << "deflection " << format_number(theta) << " rad = "
                << format_number(radians_to_arcsec(theta)) << " arcsec (leading-order expectation "
                << format_number(expected) << " rad)\n";
    return exit_code::ok;
}

int cmd_report_all(const Inputs&, const Context& ctx) {
    Table t{{"criterion", "title", "status", "detail"}, {}};
    bool all = true;
    for (const CriterionOutcome& c : run_all_criteria()) {
        const bool ok = c.pass();
        all = all && ok;
        ctx.out << (ok ? "PASS" : "FAIL") << " criterion " << c.id << " (" << c.title << "): "
                << c.summary() << "\n";
        t.add({static_cast<double>(c.id), c.title, std::string(ok ? "PASS" : "FAIL"), c.summary(false)});
    }
    if (!ctx.path.empty()) emit_table(t, ctx.format, ctx.path, ctx.out);
    return all ? exit_code::ok : exit_code::validation;
}

struct Command {
    std::string name;
    std::string description;
    std::vector<Field> fields;
    int (*body)(const Inputs&, const Context&);
};

std::vector<Command> commands() {
    using K = Kind;
    const Field tolerance{"tolerance", K::dimensionless, 1e-8, "", "acceptance tolerance", {}, true};
    return {
        {"delay", "radar echo delay past the Sun",
         {{"xe", K::length, 1.496e11, "", "Earth distance from the Sun"},
          {"xv", K::length, 1.082e11, "", "target distance from the Sun"},
          {"impact", K::length, 6.96e8, "", "impact parameter of the ray"},
          {"rs", K::length, 2953.0, "", "Schwarzschild radius"},
          {"c", K::velocity, constants::speed_of_light, "", "speed of light"}},
         cmd_delay},
        {"deflect", "light deflection, monopole and quadrupole",
         {{"ra", K::length, 6.96e8, "", "caustic radius (impact parameter)"},
          {"rs", K::length, 2953.0, "", "Schwarzschild radius"}},
         cmd_deflect},
        {"perihelion", "perihelion advance per revolution",
         {{"a", K::length, constants::mercury::semi_major_axis, "", "semi-major axis"},
          {"eps", K::dimensionless, constants::mercury::eccentricity, "", "eccentricity"},
          {"rs", K::length, 2953.0, "", "Schwarzschild radius"}},
         cmd_perihelion},
        {"mercury", "Mercury orbit report against the quoted values",
         {{"a", K::length, constants::mercury::semi_major_axis, "", "semi-major axis"},
          {"eps", K::dimensionless, constants::mercury::eccentricity, "", "eccentricity"},
          {"rs", K::length, 2953.0, "", "Schwarzschild radius"},
          {"c", K::velocity, constants::speed_of_light, "", "speed of light"}},
         cmd_mercury},
        {"eikonal", "closed-form eikonal against quadrature",
         {{"law", K::choice, 0.0, "free", "eikonal law",
           {"free", "shadow", "kepler", "parabolic", "quadrupole", "perihelion"}},
          {"ra", K::length, 1.0, "", "caustic radius"},
          {"rs", K::length, 1.0, "", "Schwarzschild radius"},
          {"energy", K::dimensionless, -1.0, "", "energy constant A"},
          {"index", K::dimensionless, 1.0, "", "constant refractive index (free, shadow)"},
          {"rmin", K::length, 0.0, "", "first radius (0: inner turning point)"},
          {"rmax", K::length, 0.0, "", "last radius (0: law-specific default)"},
          {"samples", K::count, 50.0, "", "number of radii"},
          tolerance},
         cmd_eikonal},
        {"bessel-check", "Debye/WKB approximation against the reference Bessel function",
         {{"kappa", K::wavenumber, 50.0, "", "wave number"},
          {"ra", K::length, 1.0, "", "caustic radius"},
          {"index", K::dimensionless, 1.0, "", "refractive index"},
          {"samples", K::count, 200.0, "", "number of radii"},
          {"rmin", K::length, 0.0, "", "first radius (0: 1.5 r_a / eta)"},
          {"rmax", K::length, 0.0, "", "last radius (0: 10 r_a / eta)"},
          Field{"tolerance", K::dimensionless, 1e-2, "", "error bound relative to the envelope", {}, true}},
         cmd_bessel_check},
        {"optimize-path", "minimize the discretized optical length",
         {{"medium", K::choice, 0.0, "quadrupole", "medium law", {"constant", "newtonian", "quadrupole"}},
          {"ra", K::length, 1.0, "", "caustic radius / angular momentum of the ray"},
          {"rs", K::length, 1e-4, "", "Schwarzschild radius"},
          {"energy", K::dimensionless, -1.0, "", "energy constant A"},
          {"index", K::dimensionless, 1.0, "", "index of the constant medium"},
          {"far", K::length, 0.0, "", "endpoint radius (0: min(3000, 1/theta) r_a)"},
          {"segments", K::count, 2000.0, "", "polygon segments"},
          {"grid", K::choice, 0.0, "gudermannian", "polar grid", {"gudermannian", "uniform"}},
          Field{"tolerance", K::dimensionless, 1e-10, "", "stationarity tolerance", {}, true},
          Field{"max_iterations", K::count, 100.0, "", "Newton iteration limit", {}, true}},
         cmd_optimize_path},
        {"report-all", "run every acceptance criterion", {}, cmd_report_all},
    };
}

// --- configuration files -----------------------------------------------------

void apply_value(Slot& s, const nlohmann::json& entry, const std::string& where) {
    if (!entry.is_object()) throw ConfigError(where + ": expected an object {\"value\", \"unit\"}");
    for (const auto& [key, _] : entry.items()) {
        if (key != "value" && key != "unit") throw ConfigError(where + ": unknown key '" + key + "'");
    }
    if (!entry.contains("value")) throw ConfigError(where + ": missing \"value\"");
    const Field& f = *s.field;
    const nlohmann::json& value = entry.at("value");
    if (f.kind == Kind::choice) {
        if (entry.contains("unit")) throw ConfigError(where + ": choice fields take no unit");
        if (!value.is_string()) throw ConfigError(where + ": value must be a string");
        const std::string v = value.get<std::string>();
        if (std::find(f.choices.begin(), f.choices.end(), v) == f.choices.end()) {
            throw ConfigError(where + ": '" + v + "' is not an allowed value");
        }
        s.text = v;
        return;
    }
    if (!entry.contains("unit") || !entry.at("unit").is_string()) {
        throw ConfigError(where + ": a unit string is required");
    }
    const std::string unit = entry.at("unit").get<std::string>();
    const auto& allowed = unit_whitelist(f.kind);
    const auto it = allowed.find(unit);
    if (it == allowed.end()) {
        std::string list;
        for (const auto& [u, _] : allowed) list += (list.empty() ? "" : ", ") + u;
        throw ConfigError(where + ": unit '" + unit + "' not allowed (expected one of: " + list + ")");
    }
    if (!value.is_number()) throw ConfigError(where + ": value must be a number");
    if (f.kind == Kind::count) {
        if (!value.is_number_integer()) throw ConfigError(where + ": value must be an integer");
        s.integer = value.get<std::int64_t>();
    } else {
        s.number = value.get<double>() * it->second;
    }
}

struct ConfigFile {
    std::string command;
    std::optional<std::string> format;
    std::optional<std::string> output;
    nlohmann::json inputs = nlohmann::json::object();
    nlohmann::json tolerances = nlohmann::json::object();
};

ConfigFile read_config(const std::string& path) {
    std::ifstream file(path);
    if (!file) throw ConfigError("cannot open config file '" + path + "'");
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(file);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError("config file '" + path + "': " + e.what());
    }
    if (!j.is_object()) throw ConfigError("config file '" + path + "': top level must be an object");
    ConfigFile c;
    for (const auto& [key, value] : j.items()) {
        const std::string where = "config '" + path + "' key '" + key + "'";
        if (key == "command") {
            if (!value.is_string()) throw ConfigError(where + ": expected a string");
            c.command = value.get<std::string>();
        } else if (key == "format" || key == "output") {
            if (!value.is_string()) throw ConfigError(where + ": expected a string");
            (key == "format" ? c.format : c.output) = value.get<std::string>();
        } else if (key == "inputs" || key == "tolerances") {
            if (!value.is_object()) throw ConfigError(where + ": expected an object");
            (key == "inputs" ? c.inputs : c.tolerances) = value;
        } else {
            throw ConfigError("config '" + path + "': unknown key '" + key + "'");
        }
    }
    return c;
}

void apply_config(const ConfigFile& c, const Command& cmd, Inputs& in) {
    auto apply_section = [&](const nlohmann::json& section, bool tolerances) {
        for (const auto& [key, entry] : section.items()) {
            const std::string where = std::string(tolerances ? "tolerances" : "inputs") + "." + key;
            const auto it = std::find_if(cmd.fields.begin(), cmd.fields.end(),
                                         [&](const Field& f) { return f.name == key; });
            if (it == cmd.fields.end() || it->tolerance != tolerances) {
                throw ConfigError(where + ": unknown key for command '" + cmd.name + "'");
            }
            apply_value(in.slot(key), entry, where);
        }
    };
    apply_section(c.inputs, false);
    apply_section(c.tolerances, true);
}

std::string resolve_output(const std::string& flag, const std::string& command, Format f) {
    if (!flag.empty()) return flag;
    if (const char* dir = std::getenv("FERMAT_OUTPUT_DIR"); dir && *dir) {
        std::string d = dir;
        if (d.back() != '/') d += '/';
        return d + command + "." + format_extension(f);
    }
    return {};
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    const std::vector<Command> table = commands();

    CLI::App app{"fermat: eikonal optics, gravitational observables and Fermat-path checks"};
    app.require_subcommand(0, 1);
    app.fallthrough();
    std::string format_flag, output_flag, config_path;
    app.add_option("--format", format_flag, "output format")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--output", output_flag, "output file (default: FERMAT_OUTPUT_DIR/<command>.<ext> or stdout)");
    app.add_option("--config", config_path, "JSON scenario file");

    std::vector<Inputs> inputs;
    inputs.reserve(table.size());
    std::vector<CLI::App*> subs;
    for (const Command& cmd : table) {
        CLI::App* sub = app.add_subcommand(cmd.name, cmd.description);
        inputs.emplace_back(cmd.fields);
        Inputs& in = inputs.back();
        for (const Field& f : cmd.fields) {
            Slot& s = in.slot(f.name);
            const std::string flag = "--" + f.name;
            const std::string help = f.help + (f.kind == Kind::choice ? "" : std::string(" [") + si_unit(f.kind) + "]");
            if (f.kind == Kind::choice) {
                s.option = sub->add_option(flag, s.text, help)->check(CLI::IsMember(f.choices))->capture_default_str();
            } else if (f.kind == Kind::count) {
                s.option = sub->add_option(flag, s.integer, help)->capture_default_str();
            } else {
                s.option = sub->add_option(flag, s.number, help)->capture_default_str();
            }
        }
        subs.push_back(sub);
    }

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_code::ok : exit_code::usage;
    }

    try {
        std::optional<ConfigFile> config;
        if (!config_path.empty()) config = read_config(config_path);

        std::size_t index = table.size();
        for (std::size_t i = 0; i < subs.size(); ++i) {
            if (subs[i]->parsed()) index = i;
        }
        if (config && !config->command.empty()) {
            const auto it = std::find_if(table.begin(), table.end(),
                                         [&](const Command& c) { return c.name == config->command; });
            if (it == table.end()) throw ConfigError("config: unknown command '" + config->command + "'");
            const std::size_t from_file = static_cast<std::size_t>(it - table.begin());
            if (index != table.size() && index != from_file) {
                throw ConfigError("config command '" + config->command + "' conflicts with subcommand '" +
                                  table[index].name + "'");
            }
            index = from_file;
        }
        if (index == table.size()) {
            err << app.help();
            return exit_code::usage;
        }
        const Command& cmd = table[index];
        Inputs& in = inputs[index];

        if (config) {
            // Flags given on the command line win over the file.
            std::map<std::string, Slot> explicit_values;
            for (const Field& f : cmd.fields) {
                if (in.slot(f.name).option->count() > 0) explicit_values.emplace(f.name, in.slot(f.name));
            }
            apply_config(*config, cmd, in);
            for (const auto& [name, s] : explicit_values) in.slot(name) = s;
        }

        std::string format_name = format_flag;
        if (format_name.empty() && config && config->format) format_name = *config->format;
        const Format format = parse_format(format_name.empty() ? "csv" : format_name);
        std::string output = output_flag;
        if (output.empty() && config && config->output) output = *config->output;

        Context ctx{format, resolve_output(output, cmd.name, format), out, err};
        return cmd.body(in, ctx);
    } catch (const ConvergenceError& e) {
        err << "convergence failure: " << e.what() << "\n";
        return exit_code::convergence;
    } catch (const DomainError& e) {
        err << "invalid input: " << e.what() << "\n";
        return exit_code::validation;
    } catch (const std::invalid_argument& e) {
        err << "invalid input: " << e.what() << "\n";
        return exit_code::validation;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return exit_code::io_error;
    }
}

}  // namespace fermat::tools
