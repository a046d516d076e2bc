#include <benchmark/benchmark.h>

#include <vector>

#include "bubblecast/backtest.hpp"
#include "bubblecast/model.hpp"
#include "bubblecast/scenario.hpp"

using namespace bubblecast;

namespace {

VolumeRegression reference_line() {
    VolumeRegression reg;
    reg.slope = -1.0;
    reg.intercept = 4.0;
    return reg;
}

void ClosedForm(benchmark::State& state) {
    const auto reg = reference_line();
    const WindowBounds bounds{1.0, 3.0};
    for (auto _ : state) {
        benchmark::DoNotOptimize(average_return_closed_form(reg, bounds));
    }
}
BENCHMARK(ClosedForm);

void Quadrature(benchmark::State& state) {
    const auto reg = reference_line();
    const WindowBounds bounds{1.0, 3.0};
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            average_return_quadrature(reg, bounds, static_cast<std::size_t>(state.range(0))));
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(Quadrature)->RangeMultiplier(10)->Range(100, 1000000)->Complexity(benchmark::oN);

void SolveInstabilityPrice(benchmark::State& state) {
    const auto reg = reference_line();
    const WindowBounds bounds{1.0, 3.0};
    for (auto _ : state) {
        benchmark::DoNotOptimize(solve_instability_price(reg, bounds));
    }
}
BENCHMARK(SolveInstabilityPrice);

void AssessWindow(benchmark::State& state) {
    const auto series = generate_bubble_scenario();
    std::vector<PricePoint> pts;
    for (std::size_t i = 150; i < 200; ++i)
        pts.push_back({series.rows[i].close, series.rows[i].volume});
    for (auto _ : state) {
        benchmark::DoNotOptimize(assess_window(pts));
    }
}
BENCHMARK(AssessWindow);

void ScanScenario(benchmark::State& state) {
    ScenarioSpec spec;
    spec.n_days = 2000;
    spec.bubble_start = 600;
    spec.crash_index = 1500;
    const auto series = generate_bubble_scenario(spec);
    const auto threads = static_cast<unsigned>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(scan(series, 50, {}, threads));
    }
}
BENCHMARK(ScanScenario)->Arg(1)->Arg(4);

}  // namespace

BENCHMARK_MAIN();
