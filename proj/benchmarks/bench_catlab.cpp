#include <benchmark/benchmark.h>

#include <numbers>
#include <vector>

#include "catlab/fock_oracle.hpp"
#include "catlab/observables.hpp"
#include "catlab/sequences.hpp"
#include "catlab/wigner.hpp"

using namespace catlab;

namespace {

constexpr double pi = std::numbers::pi;

ExecutionContext at(double theta) {
    ExecutionContext ctx;
    ctx.bindings = Bindings{{"theta", theta}, {"phi", 0.0}, {"phi1", 0.0}, {"phi2", 0.0}, {"phi3", 0.0}};
    return ctx;
}

void BM_SdkApply(benchmark::State& state) {
    const auto psi = apply_uwave(SpinMotionState::coherent(Spin::Down, {0.3, 0.1}), {0.0, pi / 2});
    for (auto _ : state) benchmark::DoNotOptimize(apply_sdk(psi, KickParams{}));
}
BENCHMARK(BM_SdkApply);

void BM_ExecuteCat2(benchmark::State& state) {
    const Preset p = preset("cat2-halfperiod", {static_cast<int>(state.range(0)), {}});
    const auto ctx = at(2 * pi);
    const auto start = SpinMotionState::coherent(p.initial_spin, {});
    for (auto _ : state) benchmark::DoNotOptimize(brightness(execute(p.program, start, ctx)));
}
BENCHMARK(BM_ExecuteCat2)->Arg(10)->Arg(60);

void BM_ContrastScan(benchmark::State& state) {
    const Preset p = preset("cat2-halfperiod");
    std::vector<double> thetas;
    for (int i = 0; i < 61; ++i) thetas.push_back(2 * pi - 0.3 + 0.01 * i);
    const auto phases = analysis_phases(8);
    for (auto _ : state) {
        benchmark::DoNotOptimize(contrast_scan(p.program, p.initial_spin, thetas, ThermalEnsemble(0.0), phases, at(0)));
    }
}
BENCHMARK(BM_ContrastScan)->Unit(benchmark::kMillisecond);

void BM_ThermalQuadrature(benchmark::State& state) {
    const Preset p = preset("cat34");
    QuadratureSpec q;
    q.nodes = static_cast<int>(state.range(0));
    const auto ctx = at(1.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(thermal_brightness(p.program, p.initial_spin, ThermalEnsemble(0.15), ctx, q));
    }
}
BENCHMARK(BM_ThermalQuadrature)->Arg(24)->Arg(48)->Unit(benchmark::kMillisecond);

void BM_FockDisplacement(benchmark::State& state) {
    const int n_max = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(fock::displacement_matrix({0.0, 0.2}, n_max));
}
BENCHMARK(BM_FockDisplacement)->Arg(40)->Arg(80)->Arg(160)->Unit(benchmark::kMicrosecond);

void BM_OracleRun(benchmark::State& state) {
    const Preset p = preset("cat34");
    const auto [start, report] = fock::encode(SpinMotionState::coherent(p.initial_spin, {}), 80);
    const auto ctx = at(1.0);
    for (auto _ : state) benchmark::DoNotOptimize(fock::oracle_run(p.program, start, ctx));
}
BENCHMARK(BM_OracleRun)->Unit(benchmark::kMillisecond);

void BM_WignerGrid(benchmark::State& state) {
    const Preset p = preset("cat68");
    const auto psi = execute(p.program, SpinMotionState::coherent(p.initial_spin, {}), at(0.0));
    const GridAxis axis{-3.0, 3.0, 101};
    for (auto _ : state) benchmark::DoNotOptimize(wigner(psi, axis, axis));
}
BENCHMARK(BM_WignerGrid)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
