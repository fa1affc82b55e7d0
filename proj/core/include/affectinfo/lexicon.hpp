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

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace affectinfo {

// Closed rating interval of a source lexicon, e.g. the 1..9 SAM scale.
class ValenceScale {
 public:
  ValenceScale(double min_raw, double max_raw);

  static ValenceScale sam9() { return {1.0, 9.0}; }
  static ValenceScale bipolar3() { return {-3.0, 3.0}; }
  // Accepts "sam9" or "bipolar3".
  static ValenceScale preset(std::string_view name);

  double min_raw() const noexcept { return min_raw_; }
  double max_raw() const noexcept { return max_raw_; }
  double midpoint() const noexcept { return 0.5 * (min_raw_ + max_raw_); }

  bool operator==(const ValenceScale&) const = default;

 private:
  double min_raw_;
  double max_raw_;
};

// Affine map of [min_raw, max_raw] onto [-1, 1]. Throws out_of_range when raw
// lies outside the scale; `word` is only used in the message.
double rescale_valence(double raw, const ValenceScale& scale, std::string_view word = {});

struct LexiconEntry {
  std::string word;
  double valence_raw = 0.0;
  double valence = 0.0;
  std::size_t length = 0;  // grapheme clusters

  bool operator==(const LexiconEntry&) const = default;
};

class Lexicon {
 public:
  Lexicon(std::string language, ValenceScale scale);

  // Folds case, rescales the raw value and measures the word length.
  // Throws duplicate / out_of_range.
  const LexiconEntry& add(std::string_view word, double valence_raw);

  const std::string& language() const noexcept { return language_; }
  const ValenceScale& scale() const noexcept { return scale_; }
  const std::vector<LexiconEntry>& entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }

  // Case-insensitive.
  const LexiconEntry* find(std::string_view word) const;

  bool operator==(const Lexicon& other) const {
    return language_ == other.language_ && scale_ == other.scale_ && entries_ == other.entries_;
  }

 private:
  std::string language_;
  ValenceScale scale_;
  std::vector<LexiconEntry> entries_;
  std::unordered_map<std::string, std::size_t> index_;
};

// Reads the `word,valence` CSV (header required, extra columns ignored,
// optional double quotes around fields, CRLF and a UTF-8 BOM tolerated).
Lexicon parse_lexicon(std::istream& in, const ValenceScale& scale, std::string language);
Lexicon load_lexicon(const std::string& path, const ValenceScale& scale, std::string language);

// Writes raw valences so that parse_lexicon reproduces the same lexicon.
void write_lexicon(std::ostream& out, const Lexicon& lexicon);

struct LexiconSummary {
  double mean = 0.0;
  double median = 0.0;
  std::size_t count = 0;
};

// Unweighted mean and median of the rescaled valences. The median follows the
// same rule as stats::weighted_median with unit weights.
LexiconSummary lexicon_summary(const Lexicon& lexicon);

}  // namespace affectinfo
