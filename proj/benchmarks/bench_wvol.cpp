#include <benchmark/benchmark.h>

#include <cmath>

#include "wvol/adapted.hpp"
#include "wvol/cusp.hpp"
#include "wvol/engine.hpp"
#include "wvol/epstein.hpp"
#include "wvol/quadrature.hpp"
#include "wvol/tube.hpp"

using namespace wvol;

static void BM_IntegrateSingular(benchmark::State& state) {
  quad::QuadratureConfig cfg;
  cfg.rel_tol = std::pow(10.0, -double(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(quad::integrate([](double x) { return 1 / std::sqrt(x); }, 0, 1, cfg));
}
BENCHMARK(BM_IntegrateSingular)->Arg(6)->Arg(10)->Arg(13);

static void BM_FormsAtInfinity(benchmark::State& state) {
  auto g = cusp::i0_metric();
  for (auto _ : state) benchmark::DoNotOptimize(eps::forms_at_infinity(g, {0.05, 0.02}));
}
BENCHMARK(BM_FormsAtInfinity);

static void BM_CuspWVolume(benchmark::State& state) {
  auto region = engine::RegionSpec::log_annulus(cusp::i0_metric(), -double(state.range(0)), -2);
  for (auto _ : state) benchmark::DoNotOptimize(engine::w_volume(region, {}));
}
BENCHMARK(BM_CuspWVolume)->Arg(4)->Arg(8)->Arg(16)->Unit(benchmark::kMicrosecond);

static void BM_TubeWVolume(benchmark::State& state) {
  auto spec = tube::TubeSpec::make(1.0 / double(state.range(0)), 0.5);
  for (auto _ : state) benchmark::DoNotOptimize(tube::tube_w_volume(spec, {}));
}
BENCHMARK(BM_TubeWVolume)->Arg(5)->Arg(10)->Arg(20)->Unit(benchmark::kMicrosecond);

static void BM_CorrectionMax(benchmark::State& state) {
  adapted::RandomSystemOptions opt;
  opt.curves = int(state.range(0));
  auto sys = adapted::random_curve_system(7, opt);
  auto solver = state.range(1) ? adapted::Solver::branch_and_bound : adapted::Solver::brute_force;
  for (auto _ : state) benchmark::DoNotOptimize(adapted::correction_max(sys, solver));
}
BENCHMARK(BM_CorrectionMax)->ArgsProduct({{8, 14, 20}, {0, 1}})->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_CorrectionMax)->Args({40, 1})->Unit(benchmark::kMicrosecond);
BENCHMARK_MAIN();
