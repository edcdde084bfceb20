#include <memory>
#include <random>

#include <benchmark/benchmark.h>

#include "caracomm/equality.hpp"
#include "caracomm/geometry.hpp"
#include "caracomm/newman.hpp"

using namespace caracomm;

namespace {

ConvexCombination random_instance(std::uint64_t seed, std::size_t d,
                                  std::size_t m) {
  std::mt19937_64 rng(seed);
  auto u = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
  auto set = std::make_shared<PointSet>();
  set->dimension = d;
  set->points.assign(m, Point(d));
  for (auto& p : set->points)
    for (auto& v : p) v = 2.0 * u() - 1.0;
  ConvexCombination c;
  c.set = set;
  double sum = 0.0;
  c.support.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    c.support[i] = {i, u() + 1e-6};
    sum += c.support[i].weight;
  }
  for (auto& e : c.support) e.weight /= sum;
  return c;
}

void BM_CaratheodoryReduce(benchmark::State& state) {
  const std::size_t d = state.range(0);
  const ConvexCombination c = random_instance(1, d, 10 * d);
  for (auto _ : state)
    benchmark::DoNotOptimize(caratheodory_reduce(c));
}
BENCHMARK(BM_CaratheodoryReduce)->Arg(5)->Arg(20)->Arg(50);

void BM_ApproxSample(benchmark::State& state) {
  const std::size_t d = state.range(0);
  const ConvexCombination c = random_instance(2, d, 512);
  const SamplingPlan plan = SamplingPlan::for_dimension(d, 0.1);
  std::uint64_t seed = 0;
  for (auto _ : state)
    benchmark::DoNotOptimize(approx_caratheodory_sample(c, plan, seed++));
}
BENCHMARK(BM_ApproxSample)->Arg(256)->Arg(1024)->Arg(4096);

void BM_NewmanEquality(benchmark::State& state) {
  const int n = state.range(0);
  const auto [f, pub] = build_equality(n, 2);
  NewmanOptions opts;
  opts.delta = 0.1;
  for (auto _ : state) {
    opts.seed++;
    benchmark::DoNotOptimize(newman_transform(f, pub, opts));
  }
}
BENCHMARK(BM_NewmanEquality)->Arg(3)->Arg(4);

}  // namespace

BENCHMARK_MAIN();
