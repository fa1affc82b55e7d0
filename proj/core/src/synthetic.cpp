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

#include "affectinfo/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>
#include <unordered_set>

namespace affectinfo::synthetic {

namespace {

constexpr std::string_view kConsonants = "bdfgklmnprstv";
constexpr std::string_view kVowels = "aeiou";

std::string syllables(std::uint64_t seed, std::size_t count) {
  std::string w;
  for (std::size_t s = 0; s < count; ++s) {
    w.push_back(kConsonants[seed % kConsonants.size()]);
    seed /= kConsonants.size();
    w.push_back(kVowels[seed % kVowels.size()]);
    seed /= kVowels.size();
    seed = seed * 2654435761u + 97;
  }
  return w;
}

class Sampler {
 public:
  explicit Sampler(std::vector<double> weights) : cumulative_(weights.size()) {
    std::partial_sum(weights.begin(), weights.end(), cumulative_.begin());
  }
  std::size_t operator()(std::mt19937_64& rng) const {
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53 * cumulative_.back();
    const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
    return std::min<std::size_t>(static_cast<std::size_t>(it - cumulative_.begin()), cumulative_.size() - 1);
  }

 private:
  std::vector<double> cumulative_;
};

}  // namespace

std::vector<std::string> pseudo_words(std::size_t count) {
  std::vector<std::string> out;
  std::unordered_set<std::string> seen;
  for (std::uint64_t i = 0; out.size() < count; ++i) {
    auto w = syllables(i * 7919 + 13, 2 + i % 3);
    if (seen.insert(w).second) out.push_back(std::move(w));
  }
  return out;
}

void write_lexicon(std::ostream& out, std::size_t count) {
  const auto words = pseudo_words(count);
  out << "word,valence\n";
  for (std::size_t i = 0; i < count; ++i) {
    const double raw = count == 1 ? 5.0 : 1.0 + 8.0 * static_cast<double>(i) / static_cast<double>(count - 1);
    std::ostringstream value;
    value.precision(17);
    value << raw;
    out << words[i] << ',' << value.str() << '\n';
  }
}

Lexicon make_lexicon(std::size_t count) {
  std::stringstream csv;
  write_lexicon(csv, count);
  return parse_lexicon(csv, ValenceScale::sam9(), "synthetic");
}

std::vector<std::string> make_corpus(const Lexicon& lexicon, const CorpusOptions& options) {
  std::vector<double> lexicon_weights;
  for (const auto& e : lexicon.entries()) lexicon_weights.push_back(std::exp(options.valence_slope * e.valence));
  const Sampler lexicon_sampler(lexicon_weights);

  std::vector<std::string> fillers;
  std::vector<double> filler_weights;
  for (std::size_t j = 0; j < options.filler_words; ++j) {
    fillers.push_back("z" + syllables(j * 104729 + 7, 1 + j % 3));
    filler_weights.push_back(1.0 / static_cast<double>(j + 1));
  }
  const Sampler filler_sampler(filler_weights);

  std::mt19937_64 rng(options.seed);
  const auto uniform = [&rng]() { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };

  std::vector<std::string> documents;
  documents.reserve(options.documents);
  for (std::size_t d = 0; d < options.documents; ++d) {
    std::string doc;
    std::size_t sentence_left = 0;
    for (std::size_t t = 0; t < options.tokens_per_document; ++t) {
      const bool from_lexicon = !lexicon.empty() && uniform() < options.lexicon_share;
      std::string token = from_lexicon ? lexicon.entries()[lexicon_sampler(rng)].word
                                       : fillers.empty() ? std::string("zo") : fillers[filler_sampler(rng)];
      if (sentence_left == 0) {
        sentence_left = 8 + static_cast<std::size_t>(rng() % 7);
        if (!doc.empty()) doc += ". ";
        token[0] = static_cast<char>(token[0] - 'a' + 'A');
      } else {
        doc.push_back(' ');
      }
      doc += token;
      --sentence_left;
    }
    doc += ".\n";
    documents.push_back(std::move(doc));
  }
  return documents;
}

}  // namespace affectinfo::synthetic
