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

#pragma once

// End-to-end commands behind the `affectinfo` CLI: count, import-ngrams,
// analyze, render and validate. Every command writes its artifacts through
// temp-file + rename and records a manifest with the config hash and seed.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "affectinfo/corpus.hpp"
#include "affectinfo/infotheory.hpp"
#include "affectinfo/lexicon.hpp"
#include "affectinfo/stats.hpp"

namespace affectinfo::pipeline {

namespace fs = std::filesystem;

inline constexpr const char* kDataDirEnv = "AFFECTINFO_DATA";

enum class CorpusKind { raw, counts };

struct RunConfig {
  fs::path lexicon_path;
  ValenceScale scale = ValenceScale::sam9();
  std::string language = "en";

  CorpusKind corpus_kind = CorpusKind::raw;
  fs::path raw_corpus;
  std::map<std::size_t, fs::path> count_paths;  // order -> count-TSV
  std::optional<fs::path> alternate_unigrams;

  std::size_t max_context = 4;
  info::LogBase log_base = info::LogBase::natural;
  std::size_t bins = info::kDefaultBins;
  std::size_t histogram_bins = 20;
  std::size_t resample_size = stats::kDefaultResampleSize;
  std::uint64_t seed = 1;
  std::size_t shards = 1;
  fs::path output_dir = "run";

  double cloud_width = 800.0;
  double cloud_height = 600.0;
  double size_exponent = 0.5;
  std::size_t cloud_max_words = 300;
};

// Relative paths resolve against $AFFECTINFO_DATA when set, otherwise
// against `base_dir` (the config file's directory).
RunConfig parse_config(const nlohmann::json& doc, const fs::path& base_dir);
RunConfig load_config(const fs::path& path);

nlohmann::json to_json(const RunConfig& config);
std::string config_hash(const RunConfig& config);  // 16 hex digits, FNV-1a

// Throws validation naming the first problem: missing paths, a context size
// above the available table orders, out-of-range knobs.
void validate(const RunConfig& config);

struct CountOptions {
  std::vector<fs::path> inputs;  // files or directory trees
  std::size_t max_order = 5;
  std::size_t shards = 1;
  fs::path output_dir;
  std::optional<fs::path> lexicon_path;  // for the coverage diagnostic
  std::optional<ValenceScale> scale;
};

// Writes counts_<n>.tsv, diagnostics.json and manifest.json; returns the
// files written.
std::vector<fs::path> run_count(const CountOptions& options);

struct ImportOptions {
  std::vector<fs::path> inputs;
  std::size_t order = 1;
  corpus::NgramFormat format = corpus::NgramFormat::automatic;
  bool strip_pos_tags = false;
  fs::path output;
};

fs::path run_import(const ImportOptions& options);

struct AnalysisResult {
  info::ScoringResult scoring;
  stats::CorrelationTable table;
  LexiconSummary lexicon;
  double weighted_mean = 0.0;
  double weighted_median = 0.0;
  stats::RankTestResult shift;
  nlohmann::json statistics;
  nlohmann::json distribution;
  nlohmann::json diagnostics;
  std::vector<fs::path> files;
};

// Loads the lexicon and corpus, scores, runs every statistic and writes
// scores.csv, statistics.json, distribution.json, diagnostics.json, the
// three table CSVs and manifest.json. Byte-identical on rerun.
AnalysisResult run_analyze(const RunConfig& config);

// Computation only; nothing is written.
AnalysisResult analyze(const RunConfig& config);

enum class FigureKind { cloud, histogram, bins };
FigureKind parse_figure(const std::string& name);

// Reads the analyze outputs in config.output_dir and writes the figure.
std::vector<fs::path> run_render(const RunConfig& config, FigureKind figure);

void write_atomic(const fs::path& path, const std::string& content);

// Exit status for an error: 2 for validation, 1 otherwise.
int exit_code_for(const std::exception& error) noexcept;

}  // namespace affectinfo::pipeline
