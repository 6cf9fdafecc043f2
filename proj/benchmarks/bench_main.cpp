#include <benchmark/benchmark.h>

#include "ehkit/connectivity.hpp"
#include "ehkit/gset.hpp"
#include "ehkit/magma.hpp"
#include "ehkit/windex.hpp"

using namespace ehkit;

static void BM_TransferSystems(benchmark::State& state) {
  const GroupPtr g = cyclic_group(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(enumerate_transfer_systems(g).size());
  }
}
BENCHMARK(BM_TransferSystems)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

static void BM_ContextTables(benchmark::State& state) {
  const GroupPtr g = cyclic_group(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    const ContextPtr ctx = IndexingContext::create(g, default_cutoff(g));
    benchmark::DoNotOptimize(ctx->pullbacks(0).size());
  }
}
BENCHMARK(BM_ContextTables)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

static void BM_EnumerateCategories(benchmark::State& state) {
  const GroupPtr g = cyclic_group(static_cast<std::size_t>(state.range(0)));
  const ContextPtr ctx = IndexingContext::create(g, default_cutoff(g));
  EnumerationOptions opts;
  opts.filter = static_cast<Filter>(state.range(1));
  for (auto _ : state) {
    benchmark::DoNotOptimize(enumerate_weak_indexing_categories(ctx, opts).size());
  }
}
BENCHMARK(BM_EnumerateCategories)
    ->Args({2, static_cast<int>(Filter::all)})
    ->Args({2, static_cast<int>(Filter::unital)})
    ->Args({4, static_cast<int>(Filter::unital)})
    ->Args({4, static_cast<int>(Filter::almost_unital)})
    ->Unit(benchmark::kMillisecond);

static void BM_EnumerateSystems(benchmark::State& state) {
  const GroupPtr g = cyclic_group(static_cast<std::size_t>(state.range(0)));
  const ContextPtr ctx = IndexingContext::create(g, default_cutoff(g));
  EnumerationOptions opts;
  opts.filter = Filter::almost_unital;
  for (auto _ : state) {
    benchmark::DoNotOptimize(enumerate_weak_indexing_systems(ctx, opts).size());
  }
}
BENCHMARK(BM_EnumerateSystems)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

static void BM_LehaAllPairs(benchmark::State& state) {
  const GroupPtr g = cyclic_group(static_cast<std::size_t>(state.range(0)));
  const ContextPtr ctx = IndexingContext::create(g, default_cutoff(g));
  const CategoryPosetPtr d = almost_unital_domain(ctx);
  for (auto _ : state) {
    std::size_t strict = 0;
    for (std::size_t a = 0; a < d->size(); ++a) {
      for (std::size_t b = 0; b < d->size(); ++b) {
        strict += leha_check(d, d->node(a), d->node(b)).strict_witnesses.size();
      }
    }
    benchmark::DoNotOptimize(strict);
  }
}
BENCHMARK(BM_LehaAllPairs)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

static void BM_EhSweep(benchmark::State& state) {
  SweepBounds b;
  b.max_e = b.max_G = static_cast<std::size_t>(state.range(0));
  const auto reading = static_cast<PowerReading>(state.range(1));
  for (auto _ : state) {
    benchmark::DoNotOptimize(eh_sweep(b, reading).pairs);
  }
}
BENCHMARK(BM_EhSweep)
    ->Args({2, static_cast<int>(PowerReading::literal)})
    ->Args({3, static_cast<int>(PowerReading::norm)})
    ->Unit(benchmark::kMillisecond);

static void BM_Coinduce(benchmark::State& state) {
  const GroupPtr g = cyclic_group(4);
  const Subgroup e = Subgroup::trivial(g);
  const GSet s = GSet::from_orbits(
      e, std::vector<Subgroup>(static_cast<std::size_t>(state.range(0)), e));
  for (auto _ : state) {
    benchmark::DoNotOptimize(coinduce(Subgroup::whole(g), s).size());
  }
}
BENCHMARK(BM_Coinduce)->Arg(2)->Arg(4)->Arg(6)->Unit(benchmark::kMicrosecond);

static void BM_CountHoms(benchmark::State& state) {
  const GroupPtr g = cyclic_group(4);
  const Subgroup w = Subgroup::whole(g);
  const Subgroup e = Subgroup::trivial(g);
  const GSet s = GSet::from_orbits(w, {e, e, w});
  const GSet t = coinduce(w, GSet::from_orbits(e, {e, e, e}));
  for (auto _ : state) {
    benchmark::DoNotOptimize(count_homs(s, t));
  }
}
BENCHMARK(BM_CountHoms)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
