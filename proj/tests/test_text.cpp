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

#include <doctest.h>

#include "affectinfo/text.hpp"

using affectinfo::text::TokenizerStats;
using affectinfo::text::tokenize;
using Tokens = std::vector<std::string>;

TEST_CASE("tokenize splits on punctuation and lowercases") {
  CHECK(tokenize("Fluffy bunnies are violent.") == Tokens{"fluffy", "bunnies", "are", "violent"});
}

TEST_CASE("tokenize keeps internal apostrophes only") {
  CHECK(tokenize("don't stop") == Tokens{"don't", "stop"});
  CHECK(tokenize("'quoted' words'") == Tokens{"quoted", "words"});
  CHECK(tokenize("rock''n roll") == Tokens{"rock", "n", "roll"});
  CHECK(tokenize("it\xE2\x80\x99s") == Tokens{"it's"});
}

TEST_CASE("digits and symbols are separators") {
  CHECK(tokenize("\xC3\xBC" "ber 9000!") == Tokens{"\xC3\xBC" "ber"});
  CHECK(tokenize("a1b2c") == Tokens{"a", "b", "c"});
  CHECK(tokenize("e-mail #tag") == Tokens{"e", "mail", "tag"});
  CHECK(tokenize("").empty());
  CHECK(tokenize("  \t\n 42 ...").empty());
}

TEST_CASE("non-ASCII letters are lowercased without locale") {
  CHECK(tokenize("\xC3\x9C" "BER Stra\xC3\x9F" "e") == Tokens{"\xC3\xBC" "ber", "stra\xC3\x9F" "e"});
  CHECK(tokenize("\xC3\x91" "and\xC3\xBA") == Tokens{"\xC3\xB1" "and\xC3\xBA"});
  CHECK(tokenize("\xCE\x91\xCE\x92\xCE\x93") == Tokens{"\xCE\xB1\xCE\xB2\xCE\xB3"});
}

TEST_CASE("combining marks stay inside the token") {
  // "cafe" followed by U+0301 COMBINING ACUTE ACCENT.
  CHECK(tokenize("Cafe\xCC\x81 noir") == Tokens{"cafe\xCC\x81", "noir"});
  CHECK(affectinfo::text::grapheme_count("cafe\xCC\x81") == 4);
}

TEST_CASE("invalid UTF-8 is replaced and counted") {
  TokenizerStats stats;
  const auto tokens = tokenize("ab\xFF" "cd \xC3", &stats);
  CHECK(tokens == Tokens{"ab", "cd"});
  CHECK(stats.replacements == 2);
  CHECK(stats.tokens == 2);

  TokenizerStats overlong;
  CHECK(tokenize("x\xC0\xAFy", &overlong) == Tokens{"x", "y"});
  CHECK(overlong.replacements >= 1);
}

TEST_CASE("grapheme count differs from byte count") {
  using affectinfo::text::grapheme_count;
  CHECK(grapheme_count("party") == 5);
  CHECK(grapheme_count("\xC3\xBC" "ber") == 4);
  CHECK(grapheme_count("ni\xC3\xB1o") == 4);
  CHECK(grapheme_count("") == 0);
}

TEST_CASE("fold_case is idempotent") {
  using affectinfo::text::fold_case;
  for (const std::string s : {"MiXeD", "\xC3\x9C" "ber", "don't", "abc"}) {
    CHECK(fold_case(fold_case(s)) == fold_case(s));
  }
  CHECK(fold_case("ABC") == "abc");
}

TEST_CASE("decode_next and append_utf8 round-trip code points") {
  for (const char32_t cp : {U'a', U'ü', U'€', U'\U0001F600'}) {
    std::string s;
    affectinfo::text::append_utf8(s, cp);
    std::size_t pos = 0;
    bool replaced = false;
    CHECK(affectinfo::text::decode_next(s, pos, &replaced) == cp);
    CHECK_FALSE(replaced);
    CHECK(pos == s.size());
  }
}

TEST_CASE("TokenizerStats accumulate") {
  TokenizerStats a{3, 1};
  a += TokenizerStats{2, 4};
  CHECK(a.tokens == 5);
  CHECK(a.replacements == 5);
}
