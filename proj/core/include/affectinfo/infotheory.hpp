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

// Self-information of a word's bare probability and the occurrence-averaged
// information of a word given the n-1 tokens that precede it.

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "affectinfo/corpus.hpp"
#include "affectinfo/lexicon.hpp"

namespace affectinfo::info {

enum class LogBase { natural, two };

LogBase parse_log_base(std::string_view name);  // "e" | "2"
std::string_view to_string(LogBase base) noexcept;

// -log p. Throws domain unless 0 < p <= 1.
double self_information(double p, LogBase base = LogBase::natural);

// Context statistics of one n-gram table, indexed by the final token.
class ContextModel {
 public:
  explicit ContextModel(const corpus::CountTable& ngrams);

  std::size_t order() const noexcept { return order_; }

  // nullopt when the word never ends an n-gram (not scorable).
  std::optional<double> information(std::string_view word, LogBase base = LogBase::natural) const;

  // Occurrences of the word as a continuation (the N of the average).
  std::uint64_t continuations(std::string_view word) const;

  std::uint64_t continuation_total(std::string_view context) const;

  struct Integrity {
    std::size_t contexts_checked = 0;
    std::size_t contexts_discrepant = 0;  // continuation total off by more than 5%
    double worst_discrepancy = 0.0;
  };

  // Compares against the (n-1)-gram table. Throws data_integrity when some
  // count(c w) exceeds count(c).
  Integrity check_against(const corpus::CountTable& lower) const;

 private:
  struct Continuation {
    std::size_t context;  // index into context_names_
    std::uint64_t count;
  };

  std::size_t order_;
  // Contexts in table order, which is byte order for ordinary tokens;
  // context_lookup_ holds their indices sorted by name.
  std::vector<std::string> context_names_;
  std::vector<std::uint64_t> context_totals_;
  std::vector<std::uint64_t> context_max_;
  std::vector<std::size_t> context_lookup_;
  std::unordered_map<std::string, std::vector<Continuation>, corpus::StringHash, std::equal_to<>> by_word_;
};

inline constexpr double kIntegrityTolerance = 0.05;

// One-off evaluation. When `lower` is given its counts are checked for
// consistency with `ngrams` first.
std::optional<double> contextual_information(std::string_view word, const corpus::CountTable& ngrams,
                                             const corpus::CountTable* lower = nullptr,
                                             LogBase base = LogBase::natural);

struct InformationScores {
  std::string word;
  double valence = 0.0;
  std::size_t length = 0;
  double frequency_per_million = 0.0;
  double self_info = 0.0;
  std::array<std::optional<double>, 3> context_info{};  // I_2, I_3, I_4
  std::uint64_t occurrences = 0;
};

struct ScoringOptions {
  LogBase base = LogBase::natural;
  std::size_t max_context = 4;  // 1 = self-information only
};

struct ScoringResult {
  std::vector<InformationScores> scores;  // lexicon order
  std::vector<std::string> missing;       // lexicon words absent from the unigrams
  std::array<std::size_t, 3> context_pairs{};  // scored words per context size
  std::array<std::optional<ContextModel::Integrity>, 3> integrity{};
};

// Scores every lexicon word that occurs in the unigram table. Throws
// empty_input on an empty unigram table and validation when a requested
// context size has no table.
ScoringResult score_lexicon(const Lexicon& lexicon, const corpus::CountTables& tables,
                            const ScoringOptions& options = {});

struct InfoBin {
  std::vector<std::size_t> members;  // indices into the scored input
  double mean_info = 0.0;
  double mean_valence = 0.0;
  double valence_stderr = 0.0;
  double min_info = 0.0;
  double max_info = 0.0;
};

inline constexpr std::size_t kDefaultBins = 10;

// Sorts by information (stable) and splits into near-equal bins; the first
// `size % bins` bins take one extra word.
std::vector<InfoBin> bin_by_information(std::span<const double> info, std::span<const double> valences,
                                        std::size_t bins = kDefaultBins);

// Min-max rescale onto [0, 1]; for display only.
std::vector<double> rescale_for_display(std::span<const double> values);

}  // namespace affectinfo::info
