// Serial reference vs OpenMP path for each kernel.

#include <benchmark/benchmark.h>

#include <random>

#include "snapcx/complex.hpp"
#include "snapcx/kernels.hpp"
#include "snapcx/strata.hpp"
#include "snapcx/topology.hpp"

using namespace snapcx;

namespace {

const Complex& complex_for(int which) {
  static const Complex small = Complex::build(RoundCounter::of({2, 1, 1}));
  static const Complex mid = Complex::build(RoundCounter::of({1, 1, 1, 1}));
  static const Complex large = Complex::build(RoundCounter::of({2, 1, 1, 1}));
  return which == 0 ? small : which == 1 ? mid : large;
}

Exec exec_of(const benchmark::State& state) {
  return state.range(1) ? Exec::parallel : Exec::serial;
}

void label(benchmark::State& state) {
  state.SetLabel(state.range(1) ? "parallel" : "serial");
}

void BM_SingleGhosts(benchmark::State& state) {
  const Complex& k = complex_for(static_cast<int>(state.range(0)));
  for (auto _ : state)
    benchmark::DoNotOptimize(kernels::single_ghosts(k.simplices(), exec_of(state)));
  state.SetItemsProcessed(state.iterations() * k.size());
  label(state);
}

void BM_CountIds(benchmark::State& state) {
  std::mt19937_64 rng(1);
  const std::size_t n = 1u << 16;
  std::vector<std::uint32_t> ids(std::size_t{1} << static_cast<int>(state.range(0) + 18));
  for (auto& x : ids) x = static_cast<std::uint32_t>(rng() % n);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::count_ids(ids, n, exec_of(state)));
  state.SetItemsProcessed(state.iterations() * ids.size());
  label(state);
}

void BM_RankGF2(benchmark::State& state) {
  std::mt19937_64 rng(2);
  const std::size_t n = 256u << state.range(0);
  BitMatrix m(n, n);
  for (std::size_t c = 0; c < n; ++c)
    for (int e = 0; e < 4; ++e) m.set(rng() % n, c);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::rank_gf2(m, exec_of(state)));
  label(state);
}

void BM_Membership(benchmark::State& state) {
  const Complex& k = complex_for(static_cast<int>(state.range(0)));
  const auto ref = StratumRef::x(ProcessSet{0, 1}, ProcessSet{0});
  for (auto _ : state) benchmark::DoNotOptimize(members(k, ref, exec_of(state)));
  state.SetItemsProcessed(state.iterations() * k.size());
  label(state);
}

void BM_Betti(benchmark::State& state) {
  const Complex& k = complex_for(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(reduced_betti_z2(k, {}, exec_of(state)));
  label(state);
}

}  // namespace

BENCHMARK(BM_SingleGhosts)->ArgsProduct({{0, 1, 2}, {0, 1}});
BENCHMARK(BM_CountIds)->ArgsProduct({{0, 2}, {0, 1}});
BENCHMARK(BM_RankGF2)->ArgsProduct({{0, 2}, {0, 1}});
BENCHMARK(BM_Membership)->ArgsProduct({{0, 1, 2}, {0, 1}});
BENCHMARK(BM_Betti)->ArgsProduct({{0, 1, 2}, {0, 1}});

BENCHMARK_MAIN();
