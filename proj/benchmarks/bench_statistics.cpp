// Copyright 2026 The affectinfo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include <algorithm>
#include <random>

#include "affectinfo/stats.hpp"

namespace {

using namespace affectinfo::stats;

std::vector<double> sample(std::size_t n, double shift, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(shift, 1.0);
  std::vector<double> out(n);
  for (auto& v : out) v = std::round(g(rng) * 20.0) / 20.0;
  return out;
}

void BM_Pearson(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto x = sample(n, 0.0, 1);
  const auto y = sample(n, 0.0, 2);
  for (auto _ : state) benchmark::DoNotOptimize(pearson(x, y).coefficient);
}
BENCHMARK(BM_Pearson)->Arg(1'000)->Arg(100'000);

void BM_Spearman(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto x = sample(n, 0.0, 1);
  const auto y = sample(n, 0.0, 2);
  for (auto _ : state) benchmark::DoNotOptimize(spearman(x, y).coefficient);
}
BENCHMARK(BM_Spearman)->Arg(1'000)->Arg(100'000);

void BM_MannWhitneyExact(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto a = sample(n, 0.3, 3);
  const auto b = sample(n, 0.0, 4);
  for (auto _ : state) benchmark::DoNotOptimize(mann_whitney_shift(a, b).p_value);
}
BENCHMARK(BM_MannWhitneyExact)->Arg(20)->Arg(100)->Unit(benchmark::kMicrosecond);

void BM_MannWhitneyNormal(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto a = sample(n, 0.3, 5);
  const auto b = sample(1'000, 0.0, 6);
  for (auto _ : state) benchmark::DoNotOptimize(mann_whitney_shift(a, b).p_value);
}
BENCHMARK(BM_MannWhitneyNormal)->Arg(10'000)->Arg(100'000)->Unit(benchmark::kMillisecond);

void BM_KthPairwiseDifference(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  auto a = sample(n, 0.3, 7);
  auto b = sample(n, 0.0, 8);
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const std::uint64_t k = static_cast<std::uint64_t>(n) * n / 2;
  for (auto _ : state) benchmark::DoNotOptimize(kth_pairwise_difference(a, b, k));
}
BENCHMARK(BM_KthPairwiseDifference)->Arg(1'000)->Arg(100'000)->Unit(benchmark::kMicrosecond);

void BM_WeightedShiftTest(benchmark::State& state) {
  auto values = sample(1'000, 0.0, 9);
  for (auto& v : values) v = std::clamp(v / 3.0, -1.0, 1.0);
  std::vector<double> weights(values.size());
  std::mt19937_64 rng(10);
  std::exponential_distribution<double> e(1.0);
  for (auto& w : weights) w = e(rng);
  const WeightedDistribution d(values, weights);
  const auto size = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(weighted_shift_test(d, size, 1).shift);
}
BENCHMARK(BM_WeightedShiftTest)->Arg(10'000)->Arg(kDefaultResampleSize)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
