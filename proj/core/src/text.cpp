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

#include "affectinfo/text.hpp"

#include <unicode/ubrk.h>
#include <unicode/uchar.h>
#include <unicode/utext.h>

#include <memory>

#include "affectinfo/error.hpp"

namespace affectinfo::text {

namespace {

bool is_continuation(unsigned char byte) { return (byte & 0xC0) == 0x80; }

bool is_letter(char32_t cp) {
  if (cp < 0x80) {
    return (cp >= 'a' && cp <= 'z') || (cp >= 'A' && cp <= 'Z');
  }
  return u_isalpha(static_cast<UChar32>(cp)) != 0;
}

bool is_mark(char32_t cp) {
  if (cp < 0x80) return false;
  return (U_GET_GC_MASK(static_cast<UChar32>(cp)) & U_GC_M_MASK) != 0;
}

bool is_apostrophe(char32_t cp) { return cp == U'\'' || cp == 0x2019; }

char32_t lower(char32_t cp) {
  if (cp < 0x80) {
    return (cp >= 'A' && cp <= 'Z') ? cp + ('a' - 'A') : cp;
  }
  return static_cast<char32_t>(u_tolower(static_cast<UChar32>(cp)));
}

}  // namespace

char32_t decode_next(std::string_view s, std::size_t& pos, bool* replaced) noexcept {
  const auto fail = [&]() {
    ++pos;
    if (replaced) *replaced = true;
    return kReplacementChar;
  };
  if (replaced) *replaced = false;
  const auto lead = static_cast<unsigned char>(s[pos]);
  if (lead < 0x80) {
    ++pos;
    return lead;
  }
  std::size_t extra = 0;
  char32_t cp = 0;
  char32_t min_value = 0;
  if ((lead & 0xE0) == 0xC0) {
    extra = 1;
    cp = lead & 0x1F;
    min_value = 0x80;
  } else if ((lead & 0xF0) == 0xE0) {
    extra = 2;
    cp = lead & 0x0F;
    min_value = 0x800;
  } else if ((lead & 0xF8) == 0xF0) {
    extra = 3;
    cp = lead & 0x07;
    min_value = 0x10000;
  } else {
    return fail();
  }
  if (pos + extra >= s.size()) return fail();
  for (std::size_t k = 1; k <= extra; ++k) {
    const auto byte = static_cast<unsigned char>(s[pos + k]);
    if (!is_continuation(byte)) return fail();
    cp = (cp << 6) | (byte & 0x3F);
  }
  if (cp < min_value || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) return fail();
  pos += extra + 1;
  return cp;
}

void append_utf8(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

std::string fold_case(std::string_view utf8) {
  std::string out;
  out.reserve(utf8.size());
  std::size_t pos = 0;
  while (pos < utf8.size()) {
    append_utf8(out, lower(decode_next(utf8, pos)));
  }
  return out;
}

std::size_t grapheme_count(std::string_view utf8) {
  if (utf8.empty()) return 0;
  // ICU rejects ill-formed input; normalize replacements first.
  std::string clean;
  clean.reserve(utf8.size());
  std::size_t pos = 0;
  while (pos < utf8.size()) append_utf8(clean, decode_next(utf8, pos));

  UErrorCode status = U_ZERO_ERROR;
  std::unique_ptr<UText, decltype(&utext_close)> ut(
      utext_openUTF8(nullptr, clean.data(), static_cast<int64_t>(clean.size()), &status),
      &utext_close);
  if (U_FAILURE(status)) throw Error(ErrorCode::domain, "cannot open text for segmentation");
  std::unique_ptr<UBreakIterator, decltype(&ubrk_close)> it(
      ubrk_open(UBRK_CHARACTER, "", nullptr, 0, &status), &ubrk_close);
  if (U_FAILURE(status)) throw Error(ErrorCode::domain, "cannot create grapheme iterator");
  ubrk_setUText(it.get(), ut.get(), &status);
  if (U_FAILURE(status)) throw Error(ErrorCode::domain, "cannot attach text to grapheme iterator");

  std::size_t count = 0;
  ubrk_first(it.get());
  while (ubrk_next(it.get()) != UBRK_DONE) ++count;
  return count;
}

void for_each_token(std::string_view utf8, const std::function<void(std::string_view)>& sink,
                    TokenizerStats* stats) {
  std::string token;
  bool pending_apostrophe = false;
  std::uint64_t emitted = 0;
  std::uint64_t replacements = 0;

  const auto flush = [&]() {
    if (!token.empty()) {
      sink(token);
      ++emitted;
      token.clear();
    }
    pending_apostrophe = false;
  };

  std::size_t pos = 0;
  while (pos < utf8.size()) {
    bool replaced = false;
    const char32_t cp = decode_next(utf8, pos, &replaced);
    if (replaced) ++replacements;

    if (is_letter(cp)) {
      if (pending_apostrophe) {
        token.push_back('\'');
        pending_apostrophe = false;
      }
      append_utf8(token, lower(cp));
    } else if (is_mark(cp) && !token.empty() && !pending_apostrophe) {
      append_utf8(token, cp);
    } else if (is_apostrophe(cp) && !token.empty() && !pending_apostrophe) {
      pending_apostrophe = true;
    } else {
      flush();
    }
  }
  flush();

  if (stats) {
    stats->tokens += emitted;
    stats->replacements += replacements;
  }
}

std::vector<std::string> tokenize(std::string_view utf8, TokenizerStats* stats) {
  std::vector<std::string> tokens;
  for_each_token(utf8, [&](std::string_view t) { tokens.emplace_back(t); }, stats);
  return tokens;
}

}  // namespace affectinfo::text
