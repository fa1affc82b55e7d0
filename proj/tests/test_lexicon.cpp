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

#include <random>
#include <sstream>

#include "affectinfo/error.hpp"
#include "affectinfo/lexicon.hpp"
#include "oracles.hpp"

using affectinfo::Error;
using affectinfo::ErrorCode;
using affectinfo::Lexicon;
using affectinfo::ValenceScale;
using affectinfo::parse_lexicon;
using affectinfo::rescale_valence;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an affectinfo::Error");
  return ErrorCode::io;
}

Lexicon parse(const std::string& text, ValenceScale scale = ValenceScale::sam9()) {
  std::istringstream in(text);
  return parse_lexicon(in, scale, "en");
}

Lexicon from_valences(const std::vector<double>& valences) {
  Lexicon lex("en", ValenceScale(-1.0, 1.0));
  for (std::size_t i = 0; i < valences.size(); ++i) lex.add("w" + std::to_string(i), valences[i]);
  return lex;
}

}  // namespace

TEST_CASE("rescale_valence maps the SAM scale onto [-1, 1]") {
  const auto sam = ValenceScale::sam9();
  CHECK(rescale_valence(9.0, sam) == 1.0);
  CHECK(rescale_valence(1.0, sam) == -1.0);
  CHECK(rescale_valence(5.0, sam) == 0.0);
  CHECK(rescale_valence(7.86, sam) == doctest::Approx(0.715).epsilon(1e-12));
}

TEST_CASE("rescale_valence handles the bipolar preset") {
  const auto bi = ValenceScale::bipolar3();
  CHECK(rescale_valence(-3.0, bi) == -1.0);
  CHECK(rescale_valence(0.0, bi) == 0.0);
  CHECK(rescale_valence(3.0, bi) == 1.0);
  CHECK(rescale_valence(1.5, bi) == doctest::Approx(0.5));
}

TEST_CASE("rescale_valence rejects values outside the scale and names the word") {
  CHECK(code_of([] { rescale_valence(9.5, ValenceScale::sam9(), "party"); }) == ErrorCode::out_of_range);
  try {
    rescale_valence(0.5, ValenceScale::sam9(), "party");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("party") != std::string::npos);
  }
}

TEST_CASE("rescale_valence is strictly increasing") {
  const ValenceScale scale(0.0, 7.0);
  double previous = -2.0;
  for (int i = 0; i <= 700; ++i) {
    const double v = rescale_valence(i / 100.0, scale);
    CHECK(v > previous);
    previous = v;
  }
}

TEST_CASE("ValenceScale validates its bounds and presets") {
  CHECK(code_of([] { ValenceScale(5.0, 5.0); }) == ErrorCode::domain);
  CHECK(code_of([] { ValenceScale(9.0, 1.0); }) == ErrorCode::domain);
  CHECK(ValenceScale::preset("sam9") == ValenceScale::sam9());
  CHECK(ValenceScale::preset("bipolar3") == ValenceScale::bipolar3());
  CHECK(code_of([] { ValenceScale::preset("likert5"); }) == ErrorCode::validation);
}

TEST_CASE("parse_lexicon reads two rows") {
  const auto lex = parse("word,valence\nParty,7.86\nsunrise,7.86\n");
  REQUIRE(lex.size() == 2);
  CHECK(lex.entries()[0].word == "party");
  CHECK(lex.entries()[0].length == 5);
  CHECK(lex.entries()[0].valence_raw == 7.86);
  CHECK(lex.entries()[0].valence == doctest::Approx(0.715));
  CHECK(lex.find("sunrise") != nullptr);
  CHECK(lex.find("SUNRISE") != nullptr);
  CHECK(lex.find("moon") == nullptr);
}

TEST_CASE("parse_lexicon tolerates BOM, CRLF, quotes and extra columns") {
  const auto lex = parse("\xEF\xBB\xBFword,arousal,valence\r\n\"gl\xC3\xBC" "ck\",3,8\r\n\r\nsad,2,2\r\n");
  REQUIRE(lex.size() == 2);
  CHECK(lex.entries()[0].word == "gl\xC3\xBC" "ck");
  CHECK(lex.entries()[0].length == 5);
  CHECK(lex.entries()[1].valence == doctest::Approx(-0.75));
}

TEST_CASE("parse_lexicon errors") {
  CHECK(code_of([] { parse("word,valence\nparty,9.5\n"); }) == ErrorCode::out_of_range);
  CHECK(code_of([] { parse("word,valence\nparty,high\n"); }) == ErrorCode::parse);
  CHECK(code_of([] { parse("word,valence\nparty\n"); }) == ErrorCode::parse);
  CHECK(code_of([] { parse("term,score\nparty,5\n"); }) == ErrorCode::parse);
  CHECK(code_of([] { parse(""); }) == ErrorCode::parse);
  CHECK(code_of([] { parse("word,valence\n,5\n"); }) == ErrorCode::parse);
}

TEST_CASE("parse errors carry the line number") {
  try {
    parse("word,valence\nhappy,8\nparty,lots\n");
    FAIL("no error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::parse);
    REQUIRE(e.line().has_value());
    CHECK(*e.line() == 3);
  }
}

TEST_CASE("duplicate words are rejected by name") {
  try {
    parse("word,valence\nparty,7\nPARTY,8\n");
    FAIL("no error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::duplicate);
    CHECK(std::string(e.what()).find("party") != std::string::npos);
  }
}

TEST_CASE("write then parse round-trips a lexicon") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> raw(1.0, 9.0);
  Lexicon lex("en", ValenceScale::sam9());
  for (int i = 0; i < 200; ++i) lex.add("word" + std::to_string(i), raw(rng));
  lex.add("\xC3\xBC" "ber", 9.0);
  std::ostringstream out;
  write_lexicon(out, lex);
  std::istringstream in(out.str());
  CHECK(parse_lexicon(in, ValenceScale::sam9(), "en") == lex);
}

TEST_CASE("lexicon_summary examples") {
  auto s = lexicon_summary(from_valences({-0.5, 0.0, 0.5}));
  CHECK(s.mean == 0.0);
  CHECK(s.median == 0.0);
  CHECK(s.count == 3);

  s = lexicon_summary(from_valences({-1.0, 1.0, 1.0}));
  CHECK(s.mean == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  CHECK(s.median == 1.0);

  CHECK(code_of([] { lexicon_summary(Lexicon("en", ValenceScale::sam9())); }) == ErrorCode::empty_input);
}

TEST_CASE("lexicon_summary matches a sort-based oracle") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> v(-1.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> values(1 + trial * 7);
    for (auto& x : values) x = v(rng);
    const auto s = lexicon_summary(from_valences(values));
    CHECK(std::abs(s.mean - oracle::mean(values)) < 1e-12);
    CHECK(std::abs(s.median - oracle::median_by_sort(values)) < 1e-12);
  }
}
