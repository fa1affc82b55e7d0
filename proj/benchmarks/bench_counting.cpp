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

#include <sstream>

#include "affectinfo/corpus.hpp"
#include "affectinfo/infotheory.hpp"
#include "affectinfo/synthetic.hpp"
#include "affectinfo/text.hpp"

namespace {

using namespace affectinfo;

const std::vector<std::string>& documents() {
  static const auto docs = [] {
    synthetic::CorpusOptions o;
    o.documents = 400;
    o.seed = 11;
    return synthetic::make_corpus(synthetic::make_lexicon(50), o);
  }();
  return docs;
}

std::size_t token_count() {
  static const std::size_t n = [] {
    std::size_t total = 0;
    for (const auto& d : documents()) total += text::tokenize(d).size();
    return total;
  }();
  return n;
}

void BM_Tokenize(benchmark::State& state) {
  std::size_t bytes = 0;
  for (const auto& d : documents()) bytes += d.size();
  for (auto _ : state) {
    std::size_t n = 0;
    for (const auto& d : documents()) text::for_each_token(d, [&n](std::string_view) { ++n; });
    benchmark::DoNotOptimize(n);
  }
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * bytes));
}
BENCHMARK(BM_Tokenize)->Unit(benchmark::kMillisecond);

void BM_CountNgrams(benchmark::State& state) {
  const auto max_order = static_cast<std::size_t>(state.range(0));
  const auto shards = static_cast<std::size_t>(state.range(1));
  for (auto _ : state) {
    auto tables = corpus::count_texts(documents(), max_order, shards);
    benchmark::DoNotOptimize(tables.order(max_order).size());
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * token_count()));
}
BENCHMARK(BM_CountNgrams)
    ->ArgsProduct({{1, 3, 5}, {1, 4}})
    ->ArgNames({"order", "shards"})
    ->Unit(benchmark::kMillisecond)
    ->UseRealTime();

void BM_MergeTables(benchmark::State& state) {
  const auto half = documents().size() / 2;
  const std::span<const std::string> all(documents());
  const std::vector<corpus::CountTables> parts{corpus::count_texts(all.first(half), 5, 1),
                                               corpus::count_texts(all.subspan(half), 5, 1)};
  for (auto _ : state) {
    auto merged = corpus::merge(parts);
    benchmark::DoNotOptimize(merged.order(5).size());
  }
}
BENCHMARK(BM_MergeTables)->Unit(benchmark::kMillisecond);

void BM_WriteCountTable(benchmark::State& state) {
  const auto tables = corpus::count_texts(documents(), 5, 1);
  for (auto _ : state) {
    std::ostringstream out;
    corpus::write_count_table(out, tables.order(5));
    benchmark::DoNotOptimize(out.str().size());
  }
}
BENCHMARK(BM_WriteCountTable)->Unit(benchmark::kMillisecond);

void BM_ScoreLexicon(benchmark::State& state) {
  const auto lexicon = synthetic::make_lexicon(50);
  const auto tables = corpus::count_texts(documents(), 5, 1);
  for (auto _ : state) {
    auto result = info::score_lexicon(lexicon, tables);
    benchmark::DoNotOptimize(result.scores.size());
  }
}
BENCHMARK(BM_ScoreLexicon)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
