#include <benchmark/benchmark.h>

#include "fracdiff/distributed_order.hpp"
#include "fracdiff/mellin.hpp"
#include "fracdiff/quad.hpp"
#include "fracdiff/single_order.hpp"
#include "fracdiff/specfun.hpp"

using namespace fracdiff;

// Arguments are x * 4 so the series and contour regimes both show up.
static void BM_MWrightSeries(benchmark::State& state) {
  const double x = state.range(0) / 4.0;
  for (auto _ : state) benchmark::DoNotOptimize(mwright(0.25, x));
}
BENCHMARK(BM_MWrightSeries)->Arg(2)->Arg(20)->Arg(48);

static void BM_MWrightContour(benchmark::State& state) {
  const double x = state.range(0) / 4.0;
  for (auto _ : state) benchmark::DoNotOptimize(mwright_contour(0.25, x));
}
BENCHMARK(BM_MWrightContour)->Arg(20)->Arg(80);

static void BM_MittagLefflerNeg(benchmark::State& state) {
  const MittagLefflerOrder order(0.6);
  const double x = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(mittag_leffler_neg(order, x));
}
BENCHMARK(BM_MittagLefflerNeg)->Arg(0)->Arg(1)->Arg(10);

static void BM_SingleOrderSweep(benchmark::State& state) {
  std::vector<double> xs;
  for (int i = 0; i <= 80; ++i) xs.push_back(0.1 * i);
  for (auto _ : state) {
    benchmark::DoNotOptimize(single_order::evaluate(FractionalOrder(0.5), xs, 1.0));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(xs.size()));
}
BENCHMARK(BM_SingleOrderSweep);

static void BM_MellinReducedGreen(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(mellin::mb_reduced_green(0.5, 1.0));
}
BENCHMARK(BM_MellinReducedGreen);

static void BM_DistributedGreen(benchmark::State& state) {
  const distributed_order::OrderWeight w({{0.25, 0.5}, {0.75, 0.5}});
  const double x = state.range(0) / 4.0;
  for (auto _ : state) benchmark::DoNotOptimize(distributed_order::green(w, x, 1.0));
}
BENCHMARK(BM_DistributedGreen)->Arg(0)->Arg(4)->Arg(16);

static void BM_SecondMoment(benchmark::State& state) {
  const auto w = distributed_order::OrderWeight::uniform();
  for (auto _ : state) benchmark::DoNotOptimize(distributed_order::second_moment(w, 2.0));
}
BENCHMARK(BM_SecondMoment);

BENCHMARK_MAIN();
