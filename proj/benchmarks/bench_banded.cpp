#include "ppide/banded.hpp"
#include "ppide/operators.hpp"
#include "ppide/pp_stepper.hpp"

#include <benchmark/benchmark.h>

#include <vector>

namespace {

ppide::BandedMatrix make_operator(std::size_t n, int p) {
    ppide::OperatorSpec spec;
    spec.side = ppide::JumpSide::positive;
    spec.p = p;
    spec.nu = 1.0;
    spec.lambda = 0.2;
    spec.n = n;
    spec.h = 0.1;
    return ppide::build_A_operator(spec);
}

std::vector<double> make_rhs(std::size_t n) {
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) {
        v[i] = 1.0 + 0.25 * static_cast<double>(i % 7);
    }
    return v;
}

void bm_band_lu_solve(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const int p = static_cast<int>(state.range(1));
    const ppide::BandedMatrix a = make_operator(n, p);
    const std::vector<double> rhs = make_rhs(n);
    for (auto _ : state) {
        benchmark::DoNotOptimize(ppide::band_lu_solve(a, rhs));
    }
    state.SetComplexityN(state.range(0));
}

void bm_band_matvec(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const ppide::BandedMatrix a = make_operator(n, 2);
    const std::vector<double> v = make_rhs(n);
    for (auto _ : state) {
        benchmark::DoNotOptimize(ppide::band_matvec(a, v));
    }
}

void bm_cn_step(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const ppide::BandedMatrix a = make_operator(n, 1);
    ppide::SchemeConfig cfg;
    cfg.theta = 0.01;
    const ppide::PpMarcher marcher(a, cfg);
    const std::vector<double> c = make_rhs(n);
    for (auto _ : state) {
        benchmark::DoNotOptimize(marcher.step(c));
    }
}

} // namespace

BENCHMARK(bm_band_lu_solve)
    ->Args({512, 1})
    ->Args({1024, 1})
    ->Args({2048, 1})
    ->Args({4096, 1})
    ->Args({1024, 3})
    ->Args({2048, 3})
    ->Complexity(benchmark::oN);
BENCHMARK(bm_band_matvec)->Arg(1024)->Arg(4096);
BENCHMARK(bm_cn_step)->Arg(1024)->Arg(4096);

BENCHMARK_MAIN();
