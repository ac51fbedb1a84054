#include <benchmark/benchmark.h>

#include "macroq/catalog.hpp"
#include "macroq/kernels.hpp"

namespace k = macroq::kernels;

namespace {

macroq::DensityMatrix bench_state(int cutoff) {
  return macroq::make_decohered_scs({2.0, 0.3}, cutoff);
}

template <class Fn>
void run_rhs(benchmark::State& st, Fn fn) {
  const auto rho = bench_state(static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(fn(rho.matrix(), rho.cutoffs(), 1.0));
}

template <class Fn>
void run_traces(benchmark::State& st, Fn fn) {
  const auto rho = bench_state(static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(fn(rho.matrix(), rho.cutoffs()));
}

template <class Fn>
void run_wigner(benchmark::State& st, Fn fn) {
  const auto rho = bench_state(40);
  const macroq::Axis a = macroq::symmetric_axis(8.0, static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(fn(rho.matrix(), a, a));
}

template <class Fn>
void run_displacement(benchmark::State& st, Fn fn) {
  const int d = static_cast<int>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(fn(macroq::cplx{0.8, -0.3}, d));
}

}  // namespace

static void BM_LindbladSerial(benchmark::State& st) { run_rhs(st, k::serial::lindblad_rhs); }
static void BM_LindbladParallel(benchmark::State& st) { run_rhs(st, k::parallel::lindblad_rhs); }
BENCHMARK(BM_LindbladSerial)->Arg(30)->Arg(40)->Arg(80);
BENCHMARK(BM_LindbladParallel)->Arg(30)->Arg(40)->Arg(80);

static void BM_TracesSerial(benchmark::State& st) { run_traces(st, k::serial::operator_traces); }
static void BM_TracesParallel(benchmark::State& st) { run_traces(st, k::parallel::operator_traces); }
BENCHMARK(BM_TracesSerial)->Arg(30)->Arg(40)->Arg(80);
BENCHMARK(BM_TracesParallel)->Arg(30)->Arg(40)->Arg(80);

static void BM_WignerSerial(benchmark::State& st) { run_wigner(st, k::serial::wigner_grid); }
static void BM_WignerParallel(benchmark::State& st) { run_wigner(st, k::parallel::wigner_grid); }
BENCHMARK(BM_WignerSerial)->Arg(32)->Arg(64);
BENCHMARK(BM_WignerParallel)->Arg(32)->Arg(64);

static void BM_DisplacementSerial(benchmark::State& st) { run_displacement(st, k::serial::displacement_matrix); }
static void BM_DisplacementParallel(benchmark::State& st) { run_displacement(st, k::parallel::displacement_matrix); }
BENCHMARK(BM_DisplacementSerial)->Arg(20)->Arg(60);
BENCHMARK(BM_DisplacementParallel)->Arg(20)->Arg(60);

BENCHMARK_MAIN();
