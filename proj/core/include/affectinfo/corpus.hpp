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

// N-gram count tables, the streaming counter that fills them, and the
// count-TSV reader/writer.

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "affectinfo/text.hpp"

namespace affectinfo::corpus {

inline constexpr std::size_t kMaxOrder = 5;

// A sequence of 1..5 normalized tokens, stored space-joined.
class NgramKey {
 public:
  explicit NgramKey(std::span<const std::string> tokens);
  // Accepts already space-joined tokens; validates arity and non-empty parts.
  static NgramKey from_joined(std::string joined);

  const std::string& str() const noexcept { return joined_; }
  std::size_t order() const noexcept { return order_; }
  std::vector<std::string> tokens() const;

  bool operator==(const NgramKey&) const = default;

 private:
  NgramKey() = default;
  std::string joined_;
  std::size_t order_ = 0;
};

struct StringHash {
  using is_transparent = void;
  std::size_t operator()(std::string_view s) const noexcept { return std::hash<std::string_view>{}(s); }
};

// Entries are kept in byte order of their keys, which is the canonical
// ordering of the TSV form.
class CountTable {
 public:
  using Entry = std::pair<std::string, std::uint64_t>;

  explicit CountTable(std::size_t order);
  // Sorts and sums repeated keys. Validates like add().
  static CountTable from_entries(std::size_t order, std::vector<Entry> entries);

  std::size_t order() const noexcept { return order_; }
  std::uint64_t total() const noexcept { return total_; }
  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }
  const std::vector<Entry>& counts() const noexcept { return entries_; }

  // `key` is space-joined; its arity must equal order(). count must be > 0.
  // Appending keys in order is amortized constant; other inserts are linear.
  void add(std::string_view key, std::uint64_t count = 1);
  void add(const NgramKey& key, std::uint64_t count = 1) { add(std::string_view(key.str()), count); }

  std::uint64_t count(std::string_view key) const;
  // Adds every count of `other`, which must have the same order.
  void absorb(const CountTable& other);
  void absorb(CountTable&& other);

  bool operator==(const CountTable&) const = default;

 private:
  friend class NgramCounter;
  void add_total(std::uint64_t count);
  // Sorts entries_, sums repeats and recomputes total_.
  void normalize();

  std::size_t order_;
  std::vector<Entry> entries_;
  std::uint64_t total_ = 0;
};

// Tables for orders 1..max_order (index 0 holds unigrams).
class CountTables {
 public:
  CountTables() = default;
  explicit CountTables(std::size_t max_order);

  std::size_t max_order() const noexcept { return tables_.size(); }
  const CountTable& order(std::size_t n) const;
  CountTable& order(std::size_t n);
  bool has_order(std::size_t n) const noexcept { return n >= 1 && n <= tables_.size(); }

  // Installs a table loaded from disk; orders may be supplied out of sequence
  // but gaps are filled with empty tables.
  void set(CountTable table);

  bool operator==(const CountTables&) const = default;

 private:
  std::vector<CountTable> tables_;
};

// Counts every contiguous window of each document independently; no padding.
class NgramCounter {
 public:
  explicit NgramCounter(std::size_t max_order);

  void add_document(std::span<const std::string> tokens);
  // Tokenizes and counts one document.
  void add_text(std::string_view utf8);

  const text::TokenizerStats& stats() const noexcept { return stats_; }
  std::uint64_t documents() const noexcept { return documents_; }

  CountTables finish() &&;

 private:
  using Gram = std::array<std::uint32_t, kMaxOrder>;
  struct Run {
    Gram gram;
    std::uint64_t count;
  };

  std::uint32_t intern(std::string_view token);
  void count_ids();
  static void compact(std::vector<Run>& runs);

  std::size_t max_order_;
  std::unordered_map<std::string, std::uint32_t, StringHash, std::equal_to<>> vocab_;
  std::vector<std::string> words_;
  // Window tuples per order; sorted and collapsed whenever they grow large.
  std::vector<std::vector<Run>> runs_;
  std::vector<std::size_t> compacted_;
  std::vector<std::uint32_t> ids_;
  text::TokenizerStats stats_;
  std::uint64_t documents_ = 0;
};

CountTables count_ngrams(std::span<const std::string> tokens, std::size_t max_order);

// Key-wise sum. Throws mismatch when orders differ, empty_input on no tables.
CountTable merge(std::span<const CountTable> tables);
CountTables merge(std::span<const CountTables> shards);

// Reads `tok1 ... tokn<TAB>count` lines. Tokens are case-folded and repeated
// keys are summed.
CountTable load_count_table(std::istream& in, std::size_t order);
CountTable load_count_table(const std::filesystem::path& path, std::size_t order);

// Canonical form: byte-ordered keys, one `key<TAB>count` line each.
void write_count_table(std::ostream& out, const CountTable& table);

enum class NgramFormat { automatic, counts, books };

// Imports public N-gram exports: `ngram<TAB>count` (counts) or
// `ngram<TAB>year<TAB>match_count<TAB>volume_count` (books; summed over
// years). Optional part-of-speech suffixes such as `_NOUN` are stripped.
CountTable import_ngrams(std::istream& in, std::size_t order, NgramFormat format,
                         bool strip_pos_tags = false);

// 1e6 * count / total, 0 for absent words; empty_input on an empty table.
double frequency_per_million(std::string_view word, const CountTable& unigrams);

struct CorpusStats {
  std::uint64_t documents = 0;
  text::TokenizerStats tokenizer;
};

// Regular files under a directory (recursively, sorted by path) or the file
// itself. Throws io when the path does not exist.
std::vector<std::filesystem::path> list_documents(const std::filesystem::path& root);

// Counts the given documents split into `shards` contiguous groups, each
// counted on its own thread, then merged. The result does not depend on the
// number of shards.
CountTables count_documents(std::span<const std::filesystem::path> documents, std::size_t max_order,
                            std::size_t shards, CorpusStats* stats = nullptr);
CountTables count_texts(std::span<const std::string> documents, std::size_t max_order,
                        std::size_t shards, CorpusStats* stats = nullptr);

}  // namespace affectinfo::corpus
