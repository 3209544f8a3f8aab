#include <benchmark/benchmark.h>

#include "kvol/kvol_engine.hpp"

using namespace kvol;

namespace {

void BM_CurvePool(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Origami o = build_l_shape({n + 1, n + 1});
  const std::int64_t k = default_max_sq_len(n);
  std::size_t size = 0;
  for (auto _ : state) {
    auto pool = curve_pool(o, k);
    size = pool.size();
    benchmark::DoNotOptimize(pool);
  }
  state.counters["pool"] = static_cast<double>(size);
}
BENCHMARK(BM_CurvePool)->Arg(2)->Arg(4)->Arg(8)->Arg(12)->Unit(benchmark::kMillisecond);

void BM_PairSearch(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Origami o = build_l_shape({n + 1, n + 1});
  const std::int64_t k = default_max_sq_len(n);
  const auto pool = curve_pool(o, k);
  for (auto _ : state) benchmark::DoNotOptimize(kvol_estimate(o, pool, k));
  state.counters["pairs"] = static_cast<double>(pool.size() * (pool.size() - 1) / 2);
}
BENCHMARK(BM_PairSearch)->Arg(2)->Arg(4)->Arg(8)->Arg(12)->Unit(benchmark::kMillisecond);

void BM_GeometricIntersection(benchmark::State& state) {
  const Origami o = build_l_shape({5, 5});
  const auto pool = curve_pool(o, 100);
  for (auto _ : state) {
    std::int64_t acc = 0;
    for (std::size_t i = 0; i + 1 < pool.size(); i += 2) {
      if (pool[i].direction == pool[i + 1].direction) continue;
      acc += geometric_intersection(o, pool[i], pool[i + 1]);
    }
    benchmark::DoNotOptimize(acc);
  }
}
BENCHMARK(BM_GeometricIntersection)->Unit(benchmark::kMillisecond);

void BM_CertifyPair(benchmark::State& state) {
  const Origami o = build_l_shape({4, 4});
  const auto pool = curve_pool(o, 100);
  const auto pairs = sample_core_pairs(o, pool, 20, 1);
  for (auto _ : state) {
    for (auto [i, j] : pairs) benchmark::DoNotOptimize(certify_pair(o, pool[i], pool[j], 3));
  }
}
BENCHMARK(BM_CertifyPair)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
