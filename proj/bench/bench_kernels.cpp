// Serial reference kernels against their OpenMP counterparts on a
// qutrit-counterexample-sized block (16^4 = 65536 entries).
#include <benchmark/benchmark.h>

#include <vector>

#include "symdesign/irrep.hpp"
#include "symdesign/kron.hpp"
#include "symdesign/moments.hpp"
#include "symdesign/rng.hpp"

namespace {

using namespace symdesign;

struct Fixture {
  CsrMatrix tau;
  TensorLayout layout;
  std::vector<double> x;
  std::vector<double> y;

  Fixture() {
    const auto rep = build_irrep(Partition({3, 2, 1}), 6);
    tau = transposition_matrix(*rep, 2, 5);
    layout = TensorLayout({16, 16, 16, 16});
    SplitMix64 rng(7);
    x.resize(layout.size());
    for (auto& v : x) v = rng.uniform() - 0.5;
    y.resize(layout.size());
  }
};

Fixture& fixture() {
  static Fixture f;
  return f;
}

void BM_ApplyAxisSerial(benchmark::State& state) {
  auto& f = fixture();
  for (auto _ : state) {
    kernels::serial::apply_axis(f.tau, f.layout, static_cast<std::size_t>(state.range(0)), f.x, f.y);
    benchmark::DoNotOptimize(f.y.data());
  }
}

void BM_ApplyAxisParallel(benchmark::State& state) {
  auto& f = fixture();
  for (auto _ : state) {
    kernels::parallel::apply_axis(f.tau, f.layout, static_cast<std::size_t>(state.range(0)), f.x, f.y);
    benchmark::DoNotOptimize(f.y.data());
  }
}

void BM_DotSerial(benchmark::State& state) {
  auto& f = fixture();
  for (auto _ : state) benchmark::DoNotOptimize(kernels::serial::dot(f.x, f.x));
}

void BM_DotParallel(benchmark::State& state) {
  auto& f = fixture();
  for (auto _ : state) benchmark::DoNotOptimize(kernels::parallel::dot(f.x, f.x));
}

void BM_SwapTwirl(benchmark::State& state) {
  IrrepCache cache;
  BlockContext ctx(SectorTuple::parse("(3,2,1),(3,2,1);(3,2,1),(3,2,1)"), cache);
  AssemblyOptions opts;
  opts.dense_threshold = 0;
  const auto block = twirl_swap_k(ctx, {2, 3}, opts);
  auto& f = fixture();
  for (auto _ : state) {
    block.apply(f.x, f.y);
    benchmark::DoNotOptimize(f.y.data());
  }
}

}  // namespace

BENCHMARK(BM_ApplyAxisSerial)->Arg(0)->Arg(3);
BENCHMARK(BM_ApplyAxisParallel)->Arg(0)->Arg(3);
BENCHMARK(BM_DotSerial);
BENCHMARK(BM_DotParallel);
BENCHMARK(BM_SwapTwirl);

BENCHMARK_MAIN();
