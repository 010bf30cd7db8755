#include <benchmark/benchmark.h>

#include "dms/dynamics.hpp"
#include "dms/functional.hpp"
#include "dms/random.hpp"
#include "dms/solver.hpp"

namespace {

dms::PropagatorEngine engine_for(int radius, dms::PropagatorMethod m) {
    dms::PropagatorSettings s;
    s.method = m;
    s.max_theta = 1.0;
    return dms::PropagatorEngine(1, radius, s);
}

void EvolveSpectral(benchmark::State& state) {
    const int radius = static_cast<int>(state.range(0));
    dms::PropagatorEngine e = engine_for(radius, dms::PropagatorMethod::spectral);
    dms::Rng rng(1);
    dms::GridFunction f = dms::random_field(rng, 1, radius, radius / 2);
    for (auto _ : state) {
        dms::GridFunction g = e.evolve(f, 0.5);
        benchmark::DoNotOptimize(g);
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(EvolveSpectral)->RangeMultiplier(2)->Range(32, 256)->Complexity();

void EvolveTaylor(benchmark::State& state) {
    const int radius = static_cast<int>(state.range(0));
    dms::PropagatorEngine e = engine_for(radius, dms::PropagatorMethod::taylor);
    dms::Rng rng(1);
    dms::GridFunction f = dms::random_field(rng, 1, radius, radius / 2);
    for (auto _ : state) {
        dms::GridFunction g = e.evolve(f, 0.5);
        benchmark::DoNotOptimize(g);
    }
}
BENCHMARK(EvolveTaylor)->Arg(64)->Arg(128);

void EvolveBessel(benchmark::State& state) {
    const int radius = static_cast<int>(state.range(0));
    dms::PropagatorEngine e = engine_for(radius, dms::PropagatorMethod::bessel);
    dms::Rng rng(1);
    dms::GridFunction f = dms::random_field(rng, 1, radius, radius / 2);
    for (auto _ : state) {
        dms::GridFunction g = e.evolve(f, 0.5);
        benchmark::DoNotOptimize(g);
    }
}
BENCHMARK(EvolveBessel)->Arg(64)->Arg(128);

void QuadFormDiagonal(benchmark::State& state) {
    const int radius = static_cast<int>(state.range(0));
    dms::DiffractionProfile p = dms::DiffractionProfile::two_step();
    dms::PropagatorEngine e = engine_for(radius, dms::PropagatorMethod::spectral);
    dms::QuadratureRule rule(p);
    dms::Rng rng(2);
    dms::GridFunction f = dms::random_field(rng, 1, radius, radius / 2);
    for (auto _ : state) {
        double v = dms::objective(f, p, rule, e);
        benchmark::DoNotOptimize(v);
    }
}
BENCHMARK(QuadFormDiagonal)->Arg(64)->Arg(128);

void CubicMap(benchmark::State& state) {
    const int radius = static_cast<int>(state.range(0));
    dms::DiffractionProfile p = dms::DiffractionProfile::two_step();
    dms::PropagatorEngine e = engine_for(radius, dms::PropagatorMethod::spectral);
    dms::QuadratureRule rule(p);
    dms::Rng rng(3);
    dms::GridFunction f = dms::random_field(rng, 1, radius, radius / 2);
    for (auto _ : state) {
        dms::GridFunction g = dms::averaged_cubic(f, f, f, p, rule, e);
        benchmark::DoNotOptimize(g);
    }
}
BENCHMARK(CubicMap)->Arg(64)->Arg(128);

void FullFlowPeriod(benchmark::State& state) {
    dms::DiffractionProfile p = dms::DiffractionProfile::two_step();
    dms::PropagatorEngine e = engine_for(64, dms::PropagatorMethod::spectral);
    dms::GridFunction u0 = dms::gaussian_seed(1, 64, 4.0, 1.0);
    dms::EvolutionConfig cfg;
    cfg.eps = 0.05;
    cfg.t_end = 1.0;
    cfg.record_stride = 64;
    for (auto _ : state) {
        dms::Trajectory t = dms::integrate_full(u0, cfg, p, e);
        benchmark::DoNotOptimize(t);
    }
}
BENCHMARK(FullFlowPeriod);

}  // namespace

BENCHMARK_MAIN();
