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

#include "affectinfo/corpus.hpp"

#include <algorithm>
#include <charconv>
#include <exception>
#include <fstream>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>
#include <thread>

#include "affectinfo/error.hpp"

namespace affectinfo::corpus {

namespace fs = std::filesystem;

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }

// Arity of a space-joined key, or 0 when it is malformed.
std::size_t key_arity(std::string_view key) {
  if (key.empty() || key.front() == ' ' || key.back() == ' ') return 0;
  std::size_t n = 1;
  for (std::size_t i = 0; i < key.size(); ++i) {
    const char c = key[i];
    if (c == '\t' || c == '\n' || c == '\r') return 0;
    if (c == ' ') {
      if (key[i + 1] == ' ') return 0;
      ++n;
    }
  }
  return n;
}

std::string_view strip_cr(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  return line;
}

std::vector<std::string_view> split_fields(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(sep, start);
    if (pos == std::string_view::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

std::vector<std::string_view> split_words(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && is_space(s[i])) ++i;
    const std::size_t start = i;
    while (i < s.size() && !is_space(s[i])) ++i;
    if (i > start) out.push_back(s.substr(start, i - start));
  }
  return out;
}

std::uint64_t parse_count(std::string_view s, std::size_t line_no) {
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) {
    throw Error(ErrorCode::parse, "count '" + std::string(s) + "' is not a non-negative integer",
                line_no);
  }
  if (value == 0) throw Error(ErrorCode::parse, "count must be positive", line_no);
  return value;
}

std::string strip_pos_tag(std::string_view token) {
  const auto pos = token.rfind('_');
  if (pos == std::string_view::npos || pos + 1 == token.size()) return std::string(token);
  const auto tag = token.substr(pos + 1);
  const bool is_tag = std::all_of(tag.begin(), tag.end(), [](char c) {
    return (c >= 'A' && c <= 'Z') || c == '.' || c == '_';
  });
  return is_tag ? std::string(token.substr(0, pos)) : std::string(token);
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::io, "cannot read '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return std::move(buf).str();
}

template <typename Source, typename Feed>
CountTables count_sharded(std::span<const Source> documents, std::size_t max_order,
                          std::size_t shards, CorpusStats* stats, Feed feed) {
  shards = std::max<std::size_t>(1, std::min(shards, documents.size()));
  std::vector<CountTables> results(shards);
  std::vector<CorpusStats> shard_stats(shards);
  std::vector<std::exception_ptr> errors(shards);
  {
    std::vector<std::jthread> workers;
    workers.reserve(shards);
    for (std::size_t s = 0; s < shards; ++s) {
      workers.emplace_back([&, s]() {
        try {
          const std::size_t begin = s * documents.size() / shards;
          const std::size_t end = (s + 1) * documents.size() / shards;
          NgramCounter counter(max_order);
          for (std::size_t d = begin; d < end; ++d) feed(counter, documents[d]);
          shard_stats[s].documents = counter.documents();
          shard_stats[s].tokenizer = counter.stats();
          results[s] = std::move(counter).finish();
        } catch (...) {
          errors[s] = std::current_exception();
        }
      });
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  if (stats) {
    *stats = {};
    for (const auto& st : shard_stats) {
      stats->documents += st.documents;
      stats->tokenizer += st.tokenizer;
    }
  }
  if (documents.empty()) return CountTables(max_order);
  CountTables out = std::move(results.front());
  for (std::size_t s = 1; s < results.size(); ++s) {
    for (std::size_t n = 1; n <= max_order; ++n) out.order(n).absorb(std::move(results[s].order(n)));
  }
  return out;
}

}  // namespace

NgramKey::NgramKey(std::span<const std::string> tokens) {
  if (tokens.empty() || tokens.size() > kMaxOrder) {
    throw Error(ErrorCode::domain, "n-gram must hold 1 to 5 tokens");
  }
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i) joined_.push_back(' ');
    joined_ += tokens[i];
  }
  order_ = key_arity(joined_);
  if (order_ != tokens.size()) throw Error(ErrorCode::domain, "n-gram tokens must be non-empty words");
}

NgramKey NgramKey::from_joined(std::string joined) {
  NgramKey key;
  key.order_ = key_arity(joined);
  if (key.order_ == 0 || key.order_ > kMaxOrder) {
    throw Error(ErrorCode::domain, "malformed n-gram key '" + joined + "'");
  }
  key.joined_ = std::move(joined);
  return key;
}

std::vector<std::string> NgramKey::tokens() const {
  std::vector<std::string> out;
  for (const auto t : split_fields(joined_, ' ')) out.emplace_back(t);
  return out;
}

CountTable::CountTable(std::size_t order) : order_(order) {
  if (order < 1 || order > kMaxOrder) throw Error(ErrorCode::domain, "n-gram order must be 1..5");
}

CountTable CountTable::from_entries(std::size_t order, std::vector<Entry> entries) {
  CountTable table(order);
  for (const auto& [key, count] : entries) {
    if (count == 0) throw Error(ErrorCode::domain, "n-gram counts must be positive");
    if (key_arity(key) != order) {
      throw Error(ErrorCode::mismatch,
                  "key '" + key + "' does not have " + std::to_string(order) + " tokens");
    }
  }
  table.entries_ = std::move(entries);
  table.normalize();
  return table;
}

void CountTable::add(std::string_view key, std::uint64_t count) {
  if (count == 0) throw Error(ErrorCode::domain, "n-gram counts must be positive");
  if (key_arity(key) != order_) {
    throw Error(ErrorCode::mismatch,
                "key '" + std::string(key) + "' does not have " + std::to_string(order_) + " tokens");
  }
  add_total(count);
  if (entries_.empty() || std::string_view(entries_.back().first) < key) {
    entries_.emplace_back(std::string(key), count);
    return;
  }
  const auto it = std::lower_bound(entries_.begin(), entries_.end(), key,
                                   [](const Entry& e, std::string_view k) { return std::string_view(e.first) < k; });
  if (it != entries_.end() && it->first == key) {
    it->second += count;
  } else {
    entries_.emplace(it, std::string(key), count);
  }
}

void CountTable::add_total(std::uint64_t count) {
  if (total_ > std::numeric_limits<std::uint64_t>::max() - count) {
    throw Error(ErrorCode::domain, "n-gram total overflows 64 bits");
  }
  total_ += count;
}

void CountTable::normalize() {
  std::sort(entries_.begin(), entries_.end(),
            [](const Entry& a, const Entry& b) { return a.first < b.first; });
  total_ = 0;
  std::size_t out = 0;
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    add_total(entries_[i].second);
    if (out > 0 && entries_[out - 1].first == entries_[i].first) {
      entries_[out - 1].second += entries_[i].second;
    } else {
      if (out != i) entries_[out] = std::move(entries_[i]);
      ++out;
    }
  }
  entries_.resize(out);
}

std::uint64_t CountTable::count(std::string_view key) const {
  const auto it = std::lower_bound(entries_.begin(), entries_.end(), key,
                                   [](const Entry& e, std::string_view k) { return std::string_view(e.first) < k; });
  return it != entries_.end() && it->first == key ? it->second : 0;
}

CountTables::CountTables(std::size_t max_order) {
  if (max_order < 1 || max_order > kMaxOrder) throw Error(ErrorCode::domain, "max order must be 1..5");
  for (std::size_t n = 1; n <= max_order; ++n) tables_.emplace_back(n);
}

const CountTable& CountTables::order(std::size_t n) const {
  if (!has_order(n)) throw Error(ErrorCode::validation, "no " + std::to_string(n) + "-gram table");
  return tables_[n - 1];
}

CountTable& CountTables::order(std::size_t n) {
  if (!has_order(n)) throw Error(ErrorCode::validation, "no " + std::to_string(n) + "-gram table");
  return tables_[n - 1];
}

void CountTables::set(CountTable table) {
  const std::size_t n = table.order();
  while (tables_.size() < n) tables_.emplace_back(tables_.size() + 1);
  tables_[n - 1] = std::move(table);
}

NgramCounter::NgramCounter(std::size_t max_order)
    : max_order_(max_order), runs_(max_order), compacted_(max_order, 0) {
  if (max_order < 1 || max_order > kMaxOrder) {
    throw Error(ErrorCode::validation, "n-gram order must be 1.." + std::to_string(kMaxOrder));
  }
}

std::uint32_t NgramCounter::intern(std::string_view token) {
  if (const auto it = vocab_.find(token); it != vocab_.end()) return it->second;
  if (words_.size() >= std::numeric_limits<std::uint32_t>::max() - 1) {
    throw Error(ErrorCode::out_of_range, "vocabulary exceeds 2^32 types");
  }
  const auto id = static_cast<std::uint32_t>(words_.size() + 1);
  words_.emplace_back(token);
  vocab_.emplace(std::string(token), id);
  return id;
}

void NgramCounter::compact(std::vector<Run>& runs) {
  std::sort(runs.begin(), runs.end(), [](const Run& a, const Run& b) { return a.gram < b.gram; });
  std::size_t out = 0;
  for (std::size_t i = 0; i < runs.size(); ++i) {
    if (out > 0 && runs[out - 1].gram == runs[i].gram) {
      runs[out - 1].count += runs[i].count;
    } else {
      runs[out++] = runs[i];
    }
  }
  runs.resize(out);
}

void NgramCounter::count_ids() {
  ++documents_;
  constexpr std::size_t kSlack = std::size_t{1} << 20;
  for (std::size_t n = 1; n <= max_order_ && n <= ids_.size(); ++n) {
    auto& runs = runs_[n - 1];
    for (std::size_t i = 0; i + n <= ids_.size(); ++i) {
      Run r{Gram{}, 1};
      std::copy_n(ids_.begin() + static_cast<std::ptrdiff_t>(i), n, r.gram.begin());
      runs.push_back(r);
    }
    if (runs.size() > 2 * compacted_[n - 1] + kSlack) {
      compact(runs);
      compacted_[n - 1] = runs.size();
    }
  }
}

void NgramCounter::add_document(std::span<const std::string> tokens) {
  for (const auto& t : tokens) {
    if (t.empty() || std::any_of(t.begin(), t.end(), is_space)) {
      throw Error(ErrorCode::domain, "tokens must be non-empty and contain no whitespace");
    }
  }
  ids_.clear();
  for (const auto& t : tokens) ids_.push_back(intern(t));
  count_ids();
}

void NgramCounter::add_text(std::string_view utf8) {
  ids_.clear();
  text::for_each_token(utf8, [this](std::string_view token) { ids_.push_back(intern(token)); }, &stats_);
  count_ids();
}

CountTables NgramCounter::finish() && {
  // Renumbers ids by byte order of the words so that tuple order matches
  // the byte order of the joined keys.
  std::vector<std::uint32_t> by_word(words_.size());
  std::iota(by_word.begin(), by_word.end(), 0);
  std::sort(by_word.begin(), by_word.end(), [&](std::uint32_t a, std::uint32_t b) { return words_[a] < words_[b]; });
  std::vector<std::uint32_t> rank(words_.size() + 1, 0);
  for (std::size_t r = 0; r < by_word.size(); ++r) rank[by_word[r] + 1] = static_cast<std::uint32_t>(r);

  CountTables tables(max_order_);
  for (std::size_t n = 1; n <= max_order_; ++n) {
    auto& runs = runs_[n - 1];
    for (auto& r : runs) {
      for (std::size_t k = 0; k < n; ++k) r.gram[k] = rank[r.gram[k]];
    }
    compact(runs);
    auto& table = tables.order(n);
    table.entries_.reserve(runs.size());
    std::size_t length = 0;
    for (const auto& r : runs) {
      length = n - 1;
      for (std::size_t k = 0; k < n; ++k) length += words_[by_word[r.gram[k]]].size();
      std::string key;
      key.reserve(length);
      for (std::size_t k = 0; k < n; ++k) {
        if (k) key.push_back(' ');
        key += words_[by_word[r.gram[k]]];
      }
      table.add_total(r.count);
      table.entries_.emplace_back(std::move(key), r.count);
    }
    runs = {};
    // Tokens holding bytes below the space character break the equivalence.
    if (!std::is_sorted(table.entries_.begin(), table.entries_.end(),
                        [](const CountTable::Entry& a, const CountTable::Entry& b) { return a.first < b.first; })) {
      table.normalize();
    }
  }
  return tables;
}

CountTables count_ngrams(std::span<const std::string> tokens, std::size_t max_order) {
  NgramCounter counter(max_order);
  counter.add_document(tokens);
  return std::move(counter).finish();
}

namespace {

template <typename Source, typename Take>
std::vector<CountTable::Entry> merge_sorted(std::vector<CountTable::Entry>& into, Source& from, Take take) {
  std::vector<CountTable::Entry> out;
  out.reserve(into.size() + from.size());
  auto a = into.begin();
  auto b = from.begin();
  while (a != into.end() && b != from.end()) {
    if (a->first < b->first) {
      out.push_back(std::move(*a++));
    } else if (b->first < a->first) {
      out.push_back(take(*b++));
    } else {
      a->second += b->second;
      out.push_back(std::move(*a++));
      ++b;
    }
  }
  for (; a != into.end(); ++a) out.push_back(std::move(*a));
  for (; b != from.end(); ++b) out.push_back(take(*b));
  return out;
}

}  // namespace

void CountTable::absorb(const CountTable& other) {
  if (other.order_ != order_) {
    throw Error(ErrorCode::mismatch, "cannot merge " + std::to_string(other.order_) + "-gram table into " +
                                         std::to_string(order_) + "-gram table");
  }
  add_total(other.total_);
  if (entries_.empty()) {
    entries_ = other.entries_;
    return;
  }
  entries_ = merge_sorted(entries_, other.entries_, [](const Entry& e) { return e; });
}

void CountTable::absorb(CountTable&& other) {
  if (other.order_ != order_) {
    throw Error(ErrorCode::mismatch, "cannot merge " + std::to_string(other.order_) + "-gram table into " +
                                         std::to_string(order_) + "-gram table");
  }
  add_total(other.total_);
  if (entries_.empty()) {
    entries_ = std::move(other.entries_);
  } else {
    entries_ = merge_sorted(entries_, other.entries_, [](Entry& e) { return std::move(e); });
  }
  other.entries_.clear();
  other.total_ = 0;
}

CountTable merge(std::span<const CountTable> tables) {
  if (tables.empty()) throw Error(ErrorCode::empty_input, "nothing to merge");
  CountTable out(tables.front().order());
  for (const auto& t : tables) out.absorb(t);
  return out;
}

CountTables merge(std::span<const CountTables> shards) {
  if (shards.empty()) throw Error(ErrorCode::empty_input, "nothing to merge");
  const std::size_t max_order = shards.front().max_order();
  CountTables out(max_order);
  for (const auto& s : shards) {
    if (s.max_order() != max_order) throw Error(ErrorCode::mismatch, "shards differ in max order");
    for (std::size_t n = 1; n <= max_order; ++n) out.order(n).absorb(s.order(n));
  }
  return out;
}

CountTable load_count_table(std::istream& in, std::size_t order) {
  std::vector<CountTable::Entry> entries;
  std::string line;
  std::size_t line_no = 0;
  std::string key;
  while (std::getline(in, line)) {
    ++line_no;
    const auto view = strip_cr(line);
    if (split_words(view).empty()) continue;
    const auto tab = view.rfind('\t');
    if (tab == std::string_view::npos) throw Error(ErrorCode::parse, "missing tab before count", line_no);
    const auto words = split_words(view.substr(0, tab));
    if (words.size() != order) {
      throw Error(ErrorCode::parse,
                  "expected " + std::to_string(order) + " tokens, found " + std::to_string(words.size()),
                  line_no);
    }
    const auto count = parse_count(view.substr(tab + 1), line_no);
    key.clear();
    for (std::size_t i = 0; i < words.size(); ++i) {
      if (i) key.push_back(' ');
      key += text::fold_case(words[i]);
    }
    entries.emplace_back(key, count);
  }
  return CountTable::from_entries(order, std::move(entries));
}

CountTable load_count_table(const fs::path& path, std::size_t order) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::io, "cannot open count table '" + path.string() + "'");
  return load_count_table(in, order);
}

void write_count_table(std::ostream& out, const CountTable& table) {
  for (const auto& [key, count] : table.counts()) out << key << '\t' << count << '\n';
}

CountTable import_ngrams(std::istream& in, std::size_t order, NgramFormat format, bool strip_pos_tags) {
  std::vector<CountTable::Entry> entries;
  std::string line;
  std::size_t line_no = 0;
  std::string key;
  while (std::getline(in, line)) {
    ++line_no;
    const auto view = strip_cr(line);
    if (split_words(view).empty()) continue;
    const auto fields = split_fields(view, '\t');
    if (format == NgramFormat::automatic) {
      if (fields.size() == 2) {
        format = NgramFormat::counts;
      } else if (fields.size() == 4) {
        format = NgramFormat::books;
      } else {
        throw Error(ErrorCode::parse, "cannot detect n-gram format from " +
                                          std::to_string(fields.size()) + " tab-separated fields",
                    line_no);
      }
    }
    const std::size_t expected = format == NgramFormat::counts ? 2 : 4;
    if (fields.size() != expected) {
      throw Error(ErrorCode::parse,
                  "expected " + std::to_string(expected) + " tab-separated fields", line_no);
    }
    const auto count = parse_count(format == NgramFormat::counts ? fields[1] : fields[2], line_no);
    const auto words = split_words(fields[0]);
    if (words.size() != order) {
      throw Error(ErrorCode::parse,
                  "expected " + std::to_string(order) + " tokens, found " + std::to_string(words.size()),
                  line_no);
    }
    key.clear();
    bool usable = true;
    for (std::size_t i = 0; i < words.size(); ++i) {
      std::string token = strip_pos_tags ? strip_pos_tag(words[i]) : std::string(words[i]);
      if (token.empty()) {
        usable = false;
        break;
      }
      if (i) key.push_back(' ');
      key += text::fold_case(token);
    }
    if (usable) entries.emplace_back(key, count);
  }
  return CountTable::from_entries(order, std::move(entries));
}

double frequency_per_million(std::string_view word, const CountTable& unigrams) {
  if (unigrams.total() == 0) throw Error(ErrorCode::empty_input, "unigram table is empty");
  return 1e6 * static_cast<double>(unigrams.count(word)) / static_cast<double>(unigrams.total());
}

std::vector<fs::path> list_documents(const fs::path& root) {
  std::error_code ec;
  const auto status = fs::status(root, ec);
  if (ec || !fs::exists(status)) {
    throw Error(ErrorCode::io, "corpus path '" + root.string() + "' does not exist");
  }
  std::vector<fs::path> out;
  if (fs::is_regular_file(status)) {
    out.push_back(root);
    return out;
  }
  for (const auto& entry : fs::recursive_directory_iterator(root)) {
    if (entry.is_regular_file()) out.push_back(entry.path());
  }
  std::sort(out.begin(), out.end());
  return out;
}

CountTables count_documents(std::span<const fs::path> documents, std::size_t max_order,
                            std::size_t shards, CorpusStats* stats) {
  return count_sharded(documents, max_order, shards, stats,
                       [](NgramCounter& c, const fs::path& p) { c.add_text(read_file(p)); });
}

CountTables count_texts(std::span<const std::string> documents, std::size_t max_order,
                        std::size_t shards, CorpusStats* stats) {
  return count_sharded(documents, max_order, shards, stats,
                       [](NgramCounter& c, const std::string& t) { c.add_text(t); });
}

}  // namespace affectinfo::corpus
