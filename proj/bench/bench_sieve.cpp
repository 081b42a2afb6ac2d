#include <benchmark/benchmark.h>

#include "modchar/config.hpp"
#include "modchar/series.hpp"
#include "modchar/sieve.hpp"

using namespace modchar;

static ModifiedCharacter fig1() { return build_modified(preset_config("fig1")); }

static void BM_SerialSpfSieve(benchmark::State& state) {
  const auto mc = fig1();
  const ValueCodec codec(mc);
  for (auto _ : state) {
    auto v = sieve_exponents_serial(codec, static_cast<std::uint64_t>(state.range(0)));
    benchmark::DoNotOptimize(v.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SerialSpfSieve)->Arg(1 << 20)->Arg(1 << 24)->Unit(benchmark::kMillisecond);

static void BM_BlockSieve(benchmark::State& state) {
  const auto mc = fig1();
  const ValueCodec codec(mc);
  SieveOptions opts;
  opts.threads = static_cast<int>(state.range(1));
  for (auto _ : state) {
    auto v = sieve_exponents(codec, static_cast<std::uint64_t>(state.range(0)), opts);
    benchmark::DoNotOptimize(v.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_BlockSieve)->Args({1 << 20, 1})->Args({1 << 24, 1})->Args({1 << 24, 0})->Unit(benchmark::kMillisecond);

static void BM_PartialSums(benchmark::State& state) {
  const auto mc = fig1();
  for (auto _ : state) {
    auto s = partial_sums(mc, static_cast<std::uint64_t>(state.range(0)), CheckpointRule::parse("dyadic"));
    benchmark::DoNotOptimize(s.sums.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_PartialSums)->Arg(10000000)->Unit(benchmark::kMillisecond);

static void BM_RieszMeans(benchmark::State& state) {
  const auto mc = build_modified(preset_config("bcc"));
  std::vector<double> cps;
  for (auto c : make_checkpoints(CheckpointRule::parse("geometric:1.02"), 1000000)) cps.push_back(static_cast<double>(c));
  for (auto _ : state) {
    auto r = riesz_means(mc, {static_cast<int>(state.range(0))}, cps);
    benchmark::DoNotOptimize(r.values.data());
  }
}
BENCHMARK(BM_RieszMeans)->Arg(13)->Arg(39)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
