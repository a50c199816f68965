#include <benchmark/benchmark.h>

#include "qseries/bailey.hpp"
#include "qseries/identities.hpp"
#include "qseries/qproducts.hpp"

using namespace qseries;
using P = ParamMonomial;
using R = QRational;

static void BM_EulerProduct(benchmark::State& state) {
  SeriesContext ctx(R(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(qpoch_inf(P::q(R(1)), P::q(R(1)), ctx));
}
BENCHMARK(BM_EulerProduct)->RangeMultiplier(2)->Range(50, 800);

static void BM_PartitionSeries(benchmark::State& state) {
  SeriesContext ctx(R(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(qpoch_inf(P::q(R(1)), P::q(R(1)), ctx).inverse());
}
BENCHMARK(BM_PartitionSeries)->RangeMultiplier(2)->Range(50, 800);

static void BM_ThetaProduct(benchmark::State& state) {
  SeriesContext ctx(R(state.range(0)), 2);
  for (auto _ : state) benchmark::DoNotOptimize(theta_product(R(3), R(4), Sign::Minus, ctx));
}
BENCHMARK(BM_ThetaProduct)->Arg(60)->Arg(240);

// Cyclotomic coefficients: (-zeta_3 q; q)_inf
static void BM_CyclotomicProduct(benchmark::State& state) {
  SeriesContext ctx(R(state.range(0)), 1, 3);
  P a(-CycloCoeff::zeta(3), R(1));
  for (auto _ : state) benchmark::DoNotOptimize(qpoch_inf(a, P::q(R(1)), ctx));
}
BENCHMARK(BM_CyclotomicProduct)->Arg(60)->Arg(240);

static void BM_PairCheck(benchmark::State& state) {
  SeriesContext ctx(R(50), 2);
  const auto& d = find_pair("chubp1");
  std::mt19937_64 rng(1);
  auto pair = d.make(d.sample(rng));
  for (auto _ : state) benchmark::DoNotOptimize(check_pair(*pair, state.range(0), ctx));
}
BENCHMARK(BM_PairCheck)->Arg(4)->Arg(10)->Unit(benchmark::kMillisecond);

static void BM_VerifyIdentity(benchmark::State& state, const char* id) {
  SeriesContext ctx(R(state.range(0)), 2);
  const auto& e = find_identity(id);
  for (auto _ : state) benchmark::DoNotOptimize(verify_defaults(e, ctx));
}
BENCHMARK_CAPTURE(BM_VerifyIdentity, geneqr1, "geneqr1")->Arg(50)->Arg(100)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_VerifyIdentity, misc1eq3, "misc1eq3")->Arg(50)->Arg(100)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_VerifyIdentity, slater55, "slater55")->Arg(48)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
