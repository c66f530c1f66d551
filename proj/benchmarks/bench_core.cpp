#include <benchmark/benchmark.h>

#include "trigshear/analysis.hpp"
#include "trigshear/cartoon.hpp"
#include "trigshear/oracle.hpp"
#include "trigshear/transform.hpp"

using namespace trigshear;

namespace {

CartoonFunction chi_circle() {
    RadiusSeries rs;
    rs.constant = 2.0;
    return CartoonFunction(StarSet({0, 0}, rs), {{0.0, two_pi, 0, 1.0}},
                           SmoothBackground::zero(), 0.1, CartoonFunction::BumpMode::One);
}

void bm_window_scaled_eval(benchmark::State& state) {
    ShearletSystem system;
    double x = 0.0;
    for (auto _ : state) {
        x += 1.37;
        if (x > 300.0) x -= 280.0;
        benchmark::DoNotOptimize(
            system.window_scaled_eval(Cone::Horizontal, 8, 3, {x + 96.0, x * 0.5}));
    }
}
BENCHMARK(bm_window_scaled_eval);

void bm_cartoon_sample(benchmark::State& state) {
    CartoonFunction f = chi_circle();
    int n = int(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(f.sample(n).values.data());
    state.SetItemsProcessed(state.iterations() * n * n);
}
BENCHMARK(bm_cartoon_sample)->Arg(256)->Arg(1024);

void bm_fourier_coefficients(benchmark::State& state) {
    CartoonFunction f = chi_circle();
    int n = int(state.range(0));
    SampleGrid grid = f.sample(n);
    for (auto _ : state) benchmark::DoNotOptimize(fourier_coefficients(grid).size());
    state.SetItemsProcessed(state.iterations() * n * n);
}
BENCHMARK(bm_fourier_coefficients)->Arg(512)->Arg(2048);

void bm_analysis_all(benchmark::State& state) {
    CartoonFunction f = chi_circle();
    ShearletSystem system;
    int j = int(state.range(0));
    SpectrumGrid spec = fourier_coefficients(f.sample(default_resolution(j)));
    for (auto _ : state)
        benchmark::DoNotOptimize(analysis_all(spec, system, Cone::Horizontal, j, 1).max_abs());
}
BENCHMARK(bm_analysis_all)->Arg(6)->Arg(8)->Arg(10);

void bm_orientation_set(benchmark::State& state) {
    CartoonFunction f = chi_circle();
    BoundarySampling boundary(f.star());
    int j = int(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(
            orientation_set(boundary, Cone::Horizontal, j, 0, 0.5).hits.size());
}
BENCHMARK(bm_orientation_set)->Arg(8)->Arg(10);

void bm_boundary_oracle(benchmark::State& state) {
    RadiusSeries rs;
    rs.constant = 2.0;
    StarSet star({0, 0}, rs);
    PolynomialField p = PolynomialField::monomial(1, 1, 0.8).add(PolynomialField::constant(0.4));
    double rho = double(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(ft_region_boundary(p, star, rho, 0.37).value);
}
BENCHMARK(bm_boundary_oracle)->Arg(5)->Arg(20);

} // namespace

BENCHMARK_MAIN();
