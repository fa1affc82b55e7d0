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

// Deterministic synthetic data: a pseudo-word lexicon with evenly spaced
// valences and a corpus in which word frequency grows with valence.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "affectinfo/lexicon.hpp"

namespace affectinfo::synthetic {

// `count` distinct pseudo-words; none starts with 'z' (reserved for filler).
std::vector<std::string> pseudo_words(std::size_t count);

// word,valence CSV on the 1..9 scale with raw valences evenly spaced over
// the whole scale, so rescaled valences are uniform on [-1, 1].
void write_lexicon(std::ostream& out, std::size_t count = 50);
Lexicon make_lexicon(std::size_t count = 50);

struct CorpusOptions {
  std::size_t documents = 200;
  std::size_t tokens_per_document = 500;
  std::uint64_t seed = 1;
  double valence_slope = 2.0;   // lexicon word weight ~ exp(slope * valence)
  double lexicon_share = 0.35;  // fraction of tokens drawn from the lexicon
  std::size_t filler_words = 150;
};

// One string per document: capitalized sentences ending in periods.
std::vector<std::string> make_corpus(const Lexicon& lexicon, const CorpusOptions& options = {});

}  // namespace affectinfo::synthetic
