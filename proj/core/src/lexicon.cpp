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

#include "affectinfo/lexicon.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>

#include "affectinfo/error.hpp"
#include "affectinfo/stats.hpp"
#include "affectinfo/text.hpp"

namespace affectinfo {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

// Minimal RFC 4180 field splitter; quoted fields may contain commas and "".
std::vector<std::string> split_csv(std::string_view line, std::size_t line_no) {
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  bool was_quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field.push_back(c);
      }
    } else if (c == '"' && trim(field).empty()) {
      field.clear();
      quoted = true;
      was_quoted = true;
    } else if (c == ',') {
      fields.push_back(was_quoted ? field : std::string(trim(field)));
      field.clear();
      was_quoted = false;
    } else {
      field.push_back(c);
    }
  }
  if (quoted) throw Error(ErrorCode::parse, "unterminated quoted field", line_no);
  fields.push_back(was_quoted ? field : std::string(trim(field)));
  return fields;
}

double parse_real(std::string_view s, std::size_t line_no) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(value)) {
    throw Error(ErrorCode::parse, "non-numeric valence '" + std::string(s) + "'", line_no);
  }
  return value;
}

}  // namespace

ValenceScale::ValenceScale(double min_raw, double max_raw) : min_raw_(min_raw), max_raw_(max_raw) {
  if (!(std::isfinite(min_raw) && std::isfinite(max_raw) && min_raw < max_raw)) {
    throw Error(ErrorCode::domain, "valence scale requires finite min_raw < max_raw");
  }
}

ValenceScale ValenceScale::preset(std::string_view name) {
  if (name == "sam9") return sam9();
  if (name == "bipolar3") return bipolar3();
  throw Error(ErrorCode::validation, "unknown valence scale preset '" + std::string(name) + "'");
}

double rescale_valence(double raw, const ValenceScale& scale, std::string_view word) {
  if (!(raw >= scale.min_raw() && raw <= scale.max_raw())) {
    std::string msg = "valence " + std::to_string(raw) + " outside scale [" +
                      std::to_string(scale.min_raw()) + ", " + std::to_string(scale.max_raw()) + "]";
    if (!word.empty()) msg += " for word '" + std::string(word) + "'";
    throw Error(ErrorCode::out_of_range, msg);
  }
  if (raw == scale.min_raw()) return -1.0;
  if (raw == scale.max_raw()) return 1.0;
  const double span = scale.max_raw() - scale.min_raw();
  const double v = (2.0 * raw - (scale.min_raw() + scale.max_raw())) / span;
  return std::clamp(v, -1.0, 1.0);
}

Lexicon::Lexicon(std::string language, ValenceScale scale)
    : language_(std::move(language)), scale_(scale) {}

const LexiconEntry& Lexicon::add(std::string_view word, double valence_raw) {
  std::string folded = text::fold_case(trim(word));
  if (folded.empty()) throw Error(ErrorCode::parse, "empty word");
  if (index_.count(folded)) {
    throw Error(ErrorCode::duplicate, "duplicate lexicon word '" + folded + "'");
  }
  LexiconEntry entry;
  entry.valence = rescale_valence(valence_raw, scale_, folded);
  entry.valence_raw = valence_raw;
  entry.length = text::grapheme_count(folded);
  entry.word = std::move(folded);
  index_.emplace(entry.word, entries_.size());
  entries_.push_back(std::move(entry));
  return entries_.back();
}

const LexiconEntry* Lexicon::find(std::string_view word) const {
  const auto it = index_.find(text::fold_case(word));
  return it == index_.end() ? nullptr : &entries_[it->second];
}

Lexicon parse_lexicon(std::istream& in, const ValenceScale& scale, std::string language) {
  Lexicon lexicon(std::move(language), scale);
  std::string line;
  std::size_t line_no = 0;
  std::size_t word_col = 0;
  std::size_t valence_col = 0;
  std::size_t columns = 0;
  bool have_header = false;

  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view(line);
    if (line_no == 1 && view.substr(0, 3) == "\xEF\xBB\xBF") view.remove_prefix(3);
    if (trim(view).empty()) continue;

    auto fields = split_csv(view, line_no);
    if (!have_header) {
      bool found_word = false;
      bool found_valence = false;
      for (std::size_t i = 0; i < fields.size(); ++i) {
        const std::string name = text::fold_case(fields[i]);
        if (name == "word" && !found_word) {
          word_col = i;
          found_word = true;
        } else if (name == "valence" && !found_valence) {
          valence_col = i;
          found_valence = true;
        }
      }
      if (!found_word || !found_valence) {
        throw Error(ErrorCode::parse, "header must name 'word' and 'valence' columns", line_no);
      }
      columns = fields.size();
      have_header = true;
      continue;
    }

    if (fields.size() != columns) {
      throw Error(ErrorCode::parse,
                  "expected " + std::to_string(columns) + " columns, found " +
                      std::to_string(fields.size()),
                  line_no);
    }
    const double raw = parse_real(fields[valence_col], line_no);
    try {
      lexicon.add(fields[word_col], raw);
    } catch (const Error& e) {
      throw Error(e.code(), std::string(e.what()), line_no);
    }
  }
  if (!have_header) throw Error(ErrorCode::parse, "missing header row", line_no);
  return lexicon;
}

Lexicon load_lexicon(const std::string& path, const ValenceScale& scale, std::string language) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::io, "cannot open lexicon '" + path + "'");
  return parse_lexicon(in, scale, std::move(language));
}

void write_lexicon(std::ostream& out, const Lexicon& lexicon) {
  out << "word,valence\n";
  char buf[64];
  for (const auto& e : lexicon.entries()) {
    const auto res = std::to_chars(buf, buf + sizeof buf, e.valence_raw);
    out << e.word << ',' << std::string_view(buf, static_cast<std::size_t>(res.ptr - buf)) << '\n';
  }
}

LexiconSummary lexicon_summary(const Lexicon& lexicon) {
  if (lexicon.empty()) throw Error(ErrorCode::empty_input, "lexicon is empty");
  std::vector<double> values;
  values.reserve(lexicon.size());
  for (const auto& e : lexicon.entries()) values.push_back(e.valence);
  const auto dist = stats::WeightedDistribution::unit(values);
  return {stats::weighted_mean(dist), stats::weighted_median(dist), lexicon.size()};
}

}  // namespace affectinfo
