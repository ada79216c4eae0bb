#include "bilgamma/termstructure.hpp"

#include <benchmark/benchmark.h>

#include <vector>

using namespace bilgamma;

namespace {

TermStructureConfig config() {
    const std::vector<double> times{0.0, 1.0, 2.0, 5.0, 10.0, 30.0};
    const std::vector<double> rates{0.02, 0.024, 0.027, 0.032, 0.035, 0.033};
    return TermStructureConfig{0.5, 0.8, BilateralGammaParams(1.2, 8.0, 0.9, 6.0), InitialCurve(times, rates), false};
}

void BM_Phi1Closed(benchmark::State& state) {
    const auto cfg = config();
    for (auto _ : state) benchmark::DoNotOptimize(phi1_closed(cfg, 1.0, 10.0));
}
BENCHMARK(BM_Phi1Closed);

void BM_Phi1Quadrature(benchmark::State& state) {
    const auto cfg = config();
    for (auto _ : state) benchmark::DoNotOptimize(phi1_quadrature(cfg, 1.0, 10.0));
}
BENCHMARK(BM_Phi1Quadrature)->Unit(benchmark::kMicrosecond);

void BM_SimulateShortRate(benchmark::State& state) {
    const auto cfg = config();
    for (auto _ : state) benchmark::DoNotOptimize(simulate_short_rate(cfg, 10.0, 0.01, 4));
}
BENCHMARK(BM_SimulateShortRate)->Unit(benchmark::kMillisecond);

}  // namespace
