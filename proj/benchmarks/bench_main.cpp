#include "cubenorm/quartic.hpp"
#include "cubenorm/sampling.hpp"
#include "cubenorm/sphere_forms.hpp"

#include <benchmark/benchmark.h>

using namespace cubenorm;

static void BM_Analyze(benchmark::State& state) {
  Rng rng(1);
  const CubeFunction f = random_function(rng, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(analyze(f));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(f.size()));
}
BENCHMARK(BM_Analyze)->DenseRange(10, 20, 5);

// F on S(n,2): the pair route costs |A|^2 per call, the transform route n 2^n.
static void BM_QuarticRoute(benchmark::State& state, QuarticForm::Route route) {
  const SupportSet a = SupportSet::sphere(static_cast<int>(state.range(0)), 2);
  const QuarticForm form(a, route);
  Rng rng(2);
  const SpectrumVector y = random_coefficients(rng, a).normalized();
  for (auto _ : state) benchmark::DoNotOptimize(form.value(y.coords));
}
BENCHMARK_CAPTURE(BM_QuarticRoute, pairs, QuarticForm::Route::pairs)->DenseRange(8, 16, 4);
BENCHMARK_CAPTURE(BM_QuarticRoute, transform, QuarticForm::Route::transform)->DenseRange(8, 16, 4);

static void BM_MuLower(benchmark::State& state) {
  const SupportSet a = SupportSet::sphere(static_cast<int>(state.range(0)), 2);
  OptimizerConfig cfg;
  cfg.starts = 8;
  for (auto _ : state) benchmark::DoNotOptimize(mu_lower(a, cfg).value);
}
BENCHMARK(BM_MuLower)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);

static void BM_EnergyRatioClosedForm(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(r_exact({n, n / 3}));
}
BENCHMARK(BM_EnergyRatioClosedForm)->RangeMultiplier(4)->Range(64, 4096);

BENCHMARK_MAIN();
