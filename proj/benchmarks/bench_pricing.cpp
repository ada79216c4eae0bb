#include "bilgamma/pricing.hpp"

#include <benchmark/benchmark.h>

using namespace bilgamma;

namespace {

const BilateralGammaParams kDaily(1.55, 133.96, 0.94, 88.92);

void BM_CallPriceClosed(benchmark::State& state) {
    const auto q = martingale_params(kDaily, 139.3);
    const double tau = static_cast<double>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(call_price_closed(5000.0, 5000.0, tau, q));
}
BENCHMARK(BM_CallPriceClosed)->Arg(1)->Arg(100)->Unit(benchmark::kMicrosecond);

void BM_CallPriceMonteCarlo(benchmark::State& state) {
    const auto q = martingale_params(kDaily, 139.3);
    for (auto _ : state) {
        benchmark::DoNotOptimize(call_price_mc(5000.0, 5000.0, 100.0, q, 1, static_cast<std::size_t>(state.range(0))));
    }
}
BENCHMARK(BM_CallPriceMonteCarlo)->Arg(100000)->Unit(benchmark::kMillisecond);

void BM_MinimalEntropyLambda(benchmark::State& state) {
    const StockModel model{5000.0, 0.0, kDaily};
    for (auto _ : state) benchmark::DoNotOptimize(minimal_entropy_lambda(model));
}
BENCHMARK(BM_MinimalEntropyLambda)->Unit(benchmark::kMicrosecond);

void BM_Calibrate(benchmark::State& state) {
    const StockModel model{5000.0, 0.0, kDaily};
    for (auto _ : state) benchmark::DoNotOptimize(calibrate_lambda(model, CallQuote{5000.0, 100.0, 290.75}));
}
BENCHMARK(BM_Calibrate)->Unit(benchmark::kMillisecond);

}  // namespace
