#include "bilgamma/bgdist.hpp"

#include <benchmark/benchmark.h>

#include <vector>

using namespace bilgamma;

namespace {

const BilateralGammaParams kDaily(1.55, 133.96, 0.94, 88.92);

void BM_Pdf(benchmark::State& state) {
    const auto p = kDaily.over_time(static_cast<double>(state.range(0)));
    double x = 0.001;
    for (auto _ : state) {
        benchmark::DoNotOptimize(pdf(p, x));
        x = x > 0.05 ? 0.001 : x + 0.0007;
    }
}
BENCHMARK(BM_Pdf)->Arg(1)->Arg(100);

void BM_CdfSorted(benchmark::State& state) {
    std::vector<double> grid(static_cast<std::size_t>(state.range(0)));
    for (std::size_t i = 0; i < grid.size(); ++i) grid[i] = -0.05 + 0.1 * static_cast<double>(i) / grid.size();
    for (auto _ : state) benchmark::DoNotOptimize(cdf_sorted(kDaily, grid));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_CdfSorted)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_CharacteristicFunction(benchmark::State& state) {
    double z = 0.1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(characteristic_function(kDaily, z));
        z = z > 50.0 ? 0.1 : z + 0.37;
    }
}
BENCHMARK(BM_CharacteristicFunction);

}  // namespace
