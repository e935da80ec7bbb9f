#include <benchmark/benchmark.h>

#include "specbound/fdverify.hpp"
#include "specbound/horn.hpp"
#include "specbound/riesz.hpp"
#include "specbound/schrodinger1d.hpp"
#include "specbound/specfun.hpp"
#include "specbound/urchin.hpp"

namespace sb = specbound;

static void BM_Zeta(benchmark::State& state) {
    double s = 1.5;
    for (auto _ : state) {
        benchmark::DoNotOptimize(sb::specfun::zeta_fn(s));
        s = (s > 10.0) ? 1.5 : s + 0.1;
    }
}
BENCHMARK(BM_Zeta);

static void BM_Gamma(benchmark::State& state) {
    double x = 0.3;
    for (auto _ : state) {
        benchmark::DoNotOptimize(sb::specfun::gamma_fn(x));
        x = (x > 40.0) ? 0.3 : x + 0.7;
    }
}
BENCHMARK(BM_Gamma);

static void BM_IntervalTrace(benchmark::State& state) {
    const double lambda = static_cast<double>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(sb::riesz::interval_trace(lambda, 1.0, 1.5));
}
BENCHMARK(BM_IntervalTrace)->Arg(100)->Arg(10000)->Arg(1000000);

static void BM_HornQuadrature(benchmark::State& state) {
    sb::horn::HornRegion h{2, 2.0};
    for (auto _ : state)
        benchmark::DoNotOptimize(sb::horn::riesz_bound_by_quadrature(h, 1.5, 25.0, 1e-8));
}
BENCHMARK(BM_HornQuadrature);

static void BM_UrchinUpper(benchmark::State& state) {
    auto lin = sb::urchin::UrchinSequence::linear();
    double lam = 10.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(sb::urchin::riesz_upper_bound(lin, 1.5, lam).value);
        lam = (lam > 1e6) ? 10.0 : lam * 1.7;
    }
}
BENCHMARK(BM_UrchinUpper);

static void BM_Shoot(benchmark::State& state) {
    auto pot = sb::schrodinger1d::Potential1D::square_well(30.0, 1.0, 0.6, 0.5);
    for (auto _ : state)
        benchmark::DoNotOptimize(sb::schrodinger1d::shoot(pot, 7.0, 0.3).u_end);
}
BENCHMARK(BM_Shoot);

static void BM_IntervalEigenvalues(benchmark::State& state) {
    auto pot = sb::schrodinger1d::Potential1D::square_well(
        static_cast<double>(state.range(0)), 1.0, 0.6, 0.5);
    for (auto _ : state)
        benchmark::DoNotOptimize(
            sb::schrodinger1d::interval_eigenvalues(pot, {0.0, 0.0}).count());
}
BENCHMARK(BM_IntervalEigenvalues)->Arg(30)->Arg(120);

static void BM_FdSpectrum(benchmark::State& state) {
    const double h = 1.0 / static_cast<double>(state.range(0));
    auto rd = sb::fdverify::RasterDomain::rasterize(
        [](double x, double y) { return x > 0 && x < 1 && y > 0 && y < 1; }, 0.0, 1.0,
        0.0, 1.0, h);
    for (auto _ : state)
        benchmark::DoNotOptimize(
            sb::fdverify::fd_laplacian_spectrum(rd, 150.0).values.size());
}
BENCHMARK(BM_FdSpectrum)->Arg(24)->Arg(48)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
