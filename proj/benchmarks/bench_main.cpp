#include <benchmark/benchmark.h>

#include "keycap/gaussian.hpp"
#include "keycap/optimizer.hpp"
#include "keycap/protocol.hpp"

using namespace keycap;

static void RateAsymptotic(benchmark::State& state) {
    const auto ch = ChannelParams::from_omega(0.8, 3.0);
    const DetectorParams det(0.95, 4.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(rate_asymptotic(ch, det));
    }
}
BENCHMARK(RateAsymptotic);

static void RateFinite(benchmark::State& state) {
    const auto ch = ChannelParams::from_omega(0.8, 3.0);
    const DetectorParams det(0.95, 4.0);
    const double mu = static_cast<double>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(rate_finite(mu, ch, det));
    }
}
BENCHMARK(RateFinite)->Arg(1000)->Arg(1000000);

static void SymplecticEigenvalues(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    std::vector<CovarianceMatrix> parts;
    for (int k = 0; k < n / 2; ++k) parts.push_back(tmsv_cm(2.0 + k));
    if (n % 2) parts.push_back(thermal_cm(3.0));
    auto v = direct_sum(std::span<const CovarianceMatrix>(parts));
    for (int k = 0; k + 1 < n; ++k) v = apply_symplectic(beam_splitter(0.3, k, k + 1, n), v);
    for (auto _ : state) {
        benchmark::DoNotOptimize(symplectic_eigenvalues(v));
    }
}
BENCHMARK(SymplecticEigenvalues)->DenseRange(2, 8, 2);

static void MaximizeRate(benchmark::State& state) {
    const auto ch = ChannelParams::from_omega(0.01 * static_cast<double>(state.range(0)), 3.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(maximize_rate(ch));
    }
}
BENCHMARK(MaximizeRate)->Arg(50)->Arg(80)->Arg(95)->Unit(benchmark::kMillisecond);

static void SweepFigure(benchmark::State& state) {
    const auto grid = linear_grid(0.01, 0.99, 99);
    const auto threads = static_cast<unsigned>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(sweep(grid, 3.0, std::nullopt, {}, threads));
    }
}
BENCHMARK(SweepFigure)->Arg(1)->Arg(0)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
