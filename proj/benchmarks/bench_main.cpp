#include <benchmark/benchmark.h>

#include "capflow/cutflow.hpp"
#include "capflow/fpp.hpp"

using namespace capflow;

static void BM_CapacitySampling(benchmark::State& state) {
    const CapacityField f(DistributionSpec::exponential(Rational(1)), 1);
    int i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(f.capacity(Bond::make({i, 0}, {i + 1, 0})));
        ++i;
    }
}
BENCHMARK(BM_CapacitySampling);

static void BM_TruncatedMaxflow(benchmark::State& state) {
    const auto n = static_cast<std::int32_t>(state.range(0));
    const CapacityField f(DistributionSpec::exponential(Rational(1)), 2);
    const SiteSet a({Site{0, 0}});
    for (auto _ : state) benchmark::DoNotOptimize(truncated_maxflow(f, a, n).value);
}
BENCHMARK(BM_TruncatedMaxflow)->Arg(16)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);

static void BM_MincutInfinitySquare(benchmark::State& state) {
    const auto n = static_cast<std::int32_t>(state.range(0));
    const CapacityField f(DistributionSpec::exponential(Rational(1)), 3);
    std::vector<Site> sites;
    for (int y = -n; y <= n; ++y) {
        for (int x = -n; x <= n; ++x) sites.push_back({x, y});
    }
    const SiteSet a(sites);
    for (auto _ : state) benchmark::DoNotOptimize(mincut_infinity(f, a).value);
}
BENCHMARK(BM_MincutInfinitySquare)->Arg(8)->Arg(32)->Unit(benchmark::kMillisecond);

static void BM_Distance(benchmark::State& state) {
    const auto n = static_cast<int>(state.range(0));
    const CapacityField f(DistributionSpec::exponential(Rational(1)), 4);
    const BoundingBox box{-n, 2 * n, -n, n};
    for (auto _ : state) benchmark::DoNotOptimize(distance(f, Site{0, 0}, Site{n, 0}, box));
}
BENCHMARK(BM_Distance)->Arg(32)->Arg(128)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
