// Serial reference path vs OpenMP path for the block-parallel kernels.
#include <benchmark/benchmark.h>

#include "teich/sweeps.hpp"
#include "teich/thurston.hpp"
#include "teich/traintrack.hpp"

using namespace teich;

namespace {

Exec exec_of(const benchmark::State& state) { return state.range(0) == 0 ? Exec::serial : Exec::parallel; }

void label(benchmark::State& state, std::size_t n) {
    state.SetLabel(state.range(0) == 0 ? "serial" : "parallel");
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * n));
}

void BM_KernelTransport(benchmark::State& state) {
    const std::size_t n = 100000;
    for (auto _ : state) benchmark::DoNotOptimize(sweeps::kernel_transport(n, {1, 0}, exec_of(state)));
    label(state, n);
}

void BM_Minsky(benchmark::State& state) {
    const std::size_t n = 100000;
    for (auto _ : state) benchmark::DoNotOptimize(sweeps::minsky_violation(n, {1, 0}, exec_of(state)));
    label(state, n);
}

void BM_GreenVsDisk(benchmark::State& state) {
    const std::size_t n = 10000;
    for (auto _ : state) benchmark::DoNotOptimize(sweeps::green_vs_disk(n, {1, 0}, exec_of(state)));
    label(state, n);
}

void BM_SampleSlopes(benchmark::State& state) {
    const std::size_t n = 100000;
    const BoundaryMeasure m(TorusPoint(0.3, 1.7));
    for (auto _ : state) benchmark::DoNotOptimize(sample_slopes(m, n, {1, 0}, exec_of(state)));
    label(state, n);
}

void BM_ThurstonVolume(benchmark::State& state) {
    const std::size_t n = 1000000;
    const TrainTrack t = fixtures::punctured_torus();
    auto region = [](const WeightVector& w) { return w.weights[1] + w.weights[2] <= 1.0; };
    for (auto _ : state) benchmark::DoNotOptimize(thurston_volume_estimate(t, region, 2.0, n, {1, 0}, exec_of(state)));
    label(state, n);
}

} // namespace

BENCHMARK(BM_KernelTransport)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Minsky)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GreenVsDisk)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SampleSlopes)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ThurstonVolume)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
