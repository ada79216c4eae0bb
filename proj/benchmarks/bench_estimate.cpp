#include "bilgamma/estimate.hpp"
#include "bilgamma/process.hpp"

#include <benchmark/benchmark.h>

#include <vector>

using namespace bilgamma;

namespace {

const BilateralGammaParams kDaily(1.55, 133.96, 0.94, 88.92);

std::vector<double> daily_returns(std::size_t n) {
    const auto path = simulate_path(PathSpec{kDaily, static_cast<double>(n), 1.0, 7});
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = path.x[i + 1] - path.x[i];
    return out;
}

void BM_LogLikelihood(benchmark::State& state) {
    const auto data = daily_returns(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(log_likelihood(kDaily, data));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_LogLikelihood)->Arg(100)->Arg(750)->Arg(5000)->Unit(benchmark::kMillisecond);

void BM_MethodOfMoments(benchmark::State& state) {
    const auto c = cumulants_from_moments(sample_moments(daily_returns(750)));
    for (auto _ : state) benchmark::DoNotOptimize(method_of_moments(c));
}
BENCHMARK(BM_MethodOfMoments)->Unit(benchmark::kMicrosecond);

void BM_Simulate(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(simulate_path(PathSpec{kDaily, static_cast<double>(state.range(0)), 1.0, 3}));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Simulate)->Arg(1000)->Arg(100000)->Unit(benchmark::kMillisecond);

}  // namespace
