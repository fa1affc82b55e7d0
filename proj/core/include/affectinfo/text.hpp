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

// UTF-8 text utilities shared by the lexicon parser and the corpus tokenizer.
// Case folding is the locale-independent simple lowercase mapping; invalid
// byte sequences decode to U+FFFD and are counted as replacements.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace affectinfo::text {

inline constexpr char32_t kReplacementChar = 0xFFFD;

struct TokenizerStats {
  std::uint64_t tokens = 0;
  std::uint64_t replacements = 0;

  TokenizerStats& operator+=(const TokenizerStats& other) {
    tokens += other.tokens;
    replacements += other.replacements;
    return *this;
  }
};

// Decodes one code point starting at `pos` and advances it. Malformed input
// (overlong forms, surrogates, truncated sequences) yields kReplacementChar
// and consumes exactly one byte.
char32_t decode_next(std::string_view utf8, std::size_t& pos, bool* replaced = nullptr) noexcept;

void append_utf8(std::string& out, char32_t cp);

std::string fold_case(std::string_view utf8);

// Number of extended grapheme clusters.
std::size_t grapheme_count(std::string_view utf8);

// Calls `sink` once per token. A token is a maximal run of letters (with any
// combining marks that follow a letter) where an apostrophe is kept only when
// both neighbours are letters. U+2019 is normalized to '\''. Everything else
// separates tokens. Tokens are emitted case-folded.
void for_each_token(std::string_view utf8, const std::function<void(std::string_view)>& sink,
                    TokenizerStats* stats = nullptr);

std::vector<std::string> tokenize(std::string_view utf8, TokenizerStats* stats = nullptr);

}  // namespace affectinfo::text
