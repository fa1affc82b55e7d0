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

#include <random>

#include "affectinfo/report.hpp"
#include "affectinfo/synthetic.hpp"

namespace {

using namespace affectinfo;

std::vector<report::CloudEntry> entries(std::size_t n) {
  const auto words = synthetic::pseudo_words(n);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> v(-1.0, 1.0);
  std::vector<report::CloudEntry> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back({words[i], 1e4 / static_cast<double>(i + 1), v(rng)});
  return out;
}

void BM_WordCloud(benchmark::State& state) {
  const auto words = entries(static_cast<std::size_t>(state.range(0)));
  const report::Canvas canvas{1200.0, 900.0};
  std::uint64_t seed = 0;
  for (auto _ : state) {
    auto cloud = report::wordcloud(words, canvas, ++seed);
    benchmark::DoNotOptimize(cloud.svg.size());
  }
}
BENCHMARK(BM_WordCloud)->Arg(100)->Arg(500)->Arg(1'000)->Unit(benchmark::kMillisecond);

void BM_HistogramFigure(benchmark::State& state) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> v(-1.0, 1.0);
  std::exponential_distribution<double> w(1.0);
  std::vector<double> values(2'000), weights(2'000);
  for (std::size_t i = 0; i < values.size(); ++i) {
    values[i] = v(rng);
    weights[i] = w(rng);
  }
  const auto unweighted = stats::WeightedDistribution::unit(values);
  const stats::WeightedDistribution weighted(values, weights);
  for (auto _ : state) benchmark::DoNotOptimize(report::histogram_figure(unweighted, weighted, 40).svg.size());
}
BENCHMARK(BM_HistogramFigure)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
