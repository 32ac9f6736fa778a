#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>

#include "fermat/asymptotics.hpp"
#include "fermat/bessel.hpp"
#include "fermat/eikonal.hpp"
#include "fermat/relativity.hpp"
#include "fermat/variational.hpp"

using namespace fermat;

static void BM_RadarDelay(benchmark::State& state) {
    const DelayScenario s{1.496e11, 1.082e11, 6.96e8, 2953.0};
    for (auto _ : state) benchmark::DoNotOptimize(radar_delay(s));
}
BENCHMARK(BM_RadarDelay);

static void BM_RadarDelayQuadrature(benchmark::State& state) {
    const DelayScenario s{1.496e11, 1.082e11, 6.96e8, 2953.0};
    for (auto _ : state) benchmark::DoNotOptimize(radar_delay_quadrature(s));
}
BENCHMARK(BM_RadarDelayQuadrature);

static void BM_EikonalKepler(benchmark::State& state) {
    const OrbitElements el = orbit_elements(0.05, 1.0, 1.0);
    double r = el.r_minus;
    const double step = (*el.r_plus - el.r_minus) / 1024.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(eikonal_kepler(r, el));
        r = r + step > *el.r_plus ? el.r_minus : r + step;
    }
}
BENCHMARK(BM_EikonalKepler);

static void BM_EikonalPerihelion(benchmark::State& state) {
    const LibrationInterval lib = perihelion_libration(1e-3, 15.0, 1.0);
    const double r = 0.5 * (lib.inner + lib.outer);
    for (auto _ : state) benchmark::DoNotOptimize(eikonal_perihelion(r, 1e-3, 15.0, 1.0));
}
BENCHMARK(BM_EikonalPerihelion);

static void BM_ReferenceBesselJ(benchmark::State& state) {
    const double order = static_cast<double>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(reference_bessel_j(order, 3.0 * order + 1.0));
}
BENCHMARK(BM_ReferenceBesselJ)->Arg(10)->Arg(100)->Arg(500);

static void BM_HankelNumeric(benchmark::State& state) {
    const OrbitElements el = orbit_elements(0.1, 1.0, 1.0);
    for (auto _ : state) benchmark::DoNotOptimize(hankel_numeric(20.0, 1.5, el, 1));
}
BENCHMARK(BM_HankelNumeric);

static void BM_MinimizePath(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const OrbitElements el = orbit_elements(-1.0, 1.0, 0.5);
    const PathProblem p{MediumModel::newtonian(-1.0, 0.5), {conic_radius(-1.0, el), -1.0},
                        {conic_radius(1.0, el), 1.0}, n, 1e-10, 100, {}};
    for (auto _ : state) benchmark::DoNotOptimize(minimize_path(p));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_MinimizePath)->RangeMultiplier(4)->Range(64, 4096)->Complexity();
BENCHMARK_MAIN();
