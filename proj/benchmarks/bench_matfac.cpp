// Microbenchmarks for the matrix-factorial strategies and the table oracles.
// Small N values keep a full run under a few seconds; raise the range in
// the registrations below to probe the crossover points.
#include <benchmark/benchmark.h>

#include "contab/gauss2f1.hpp"
#include "contab/tables.hpp"

using namespace contab;

namespace {

MatFacRequest benchmark_chain(long n) {
  Rational b(-11 * n), c(2 * n);
  Rational x = (Rational(1) - Rational(1, n)) / 56;
  MatFacRequest req;
  req.family = contiguity_family(b, c, x);
  GaussManinVector2F1 init = gauss_manin_initial(b, c, x);
  req.initial = {init.f, init.theta_f};
  req.lo = -36 * n;
  req.hi = -2;
  return req;
}

void bm_matfac_exact(benchmark::State& state) {
  MatFacRequest req = benchmark_chain(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(matfac_exact(req));
}

void bm_matfac_modular(benchmark::State& state) {
  MatFacRequest req = benchmark_chain(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(matfac_modular(req));
}

void bm_matfac_binsplit(benchmark::State& state) {
  MatFacRequest req = benchmark_chain(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(matfac_binsplit(req));
}

void bm_reduction_interval(benchmark::State& state) {
  MatFacRequest req = benchmark_chain(20);
  req.reduction.interval = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(matfac_exact(req));
}

MarginalSums z_margins() { return MarginalSums({4, 8, 12}, {6, 8, 10}); }

CellParams z_params() {
  CellParams p = CellParams::ones(3, 3);
  long primes[] = {2, 3, 5, 7};
  for (std::size_t j = 1; j < 3; ++j) {
    p.at(0, j) = Rational(1, primes[j - 1]);
    p.at(1, j) = Rational(1, primes[j + 1]);
  }
  return p;
}

void bm_z_naive(benchmark::State& state) {
  MarginalSums beta = z_margins();
  CellParams p = z_params();
  for (auto _ : state) benchmark::DoNotOptimize(z_naive(beta, p));
}

void bm_z_dp(benchmark::State& state) {
  MarginalSums beta = z_margins();
  CellParams p = z_params();
  for (auto _ : state) benchmark::DoNotOptimize(z_dp(beta, p));
}

}  // namespace

BENCHMARK(bm_matfac_exact)->Arg(5)->Arg(20)->Arg(50);
BENCHMARK(bm_matfac_modular)->Arg(5)->Arg(20)->Arg(50);
BENCHMARK(bm_matfac_binsplit)->Arg(5)->Arg(20)->Arg(50);
BENCHMARK(bm_reduction_interval)->Arg(1)->Arg(5)->Arg(20)->Arg(100);
BENCHMARK(bm_z_naive);
BENCHMARK(bm_z_dp);

BENCHMARK_MAIN();
