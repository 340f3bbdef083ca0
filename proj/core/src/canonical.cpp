// Copyright 2026 The MFEE Authors
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

#include "mfee/text.hpp"

#include <unicode/locid.h>
#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>
#include <unicode/utf8.h>

namespace mfee {

namespace {

icu::UnicodeString from_utf8(std::string_view utf8) {
  return icu::UnicodeString::fromUTF8(
      icu::StringPiece(utf8.data(), static_cast<int32_t>(utf8.size())));
}

bool is_terminal_punct(UChar32 c) { return c == '?' || c == '!' || c == '.'; }

}  // namespace

std::string canonicalize(std::string_view prompt) {
  UErrorCode ec = U_ZERO_ERROR;
  const icu::Normalizer2* nfc = icu::Normalizer2::getNFCInstance(ec);
  icu::UnicodeString text = from_utf8(prompt);
  if (U_SUCCESS(ec)) {
    icu::UnicodeString normalized = nfc->normalize(text, ec);
    if (U_SUCCESS(ec)) {
      text = std::move(normalized);
    }
  }
  text.toLower(icu::Locale::getRoot());

  // Collapse whitespace runs to one ASCII space; leading runs drop outright
  // and a trailing run is never flushed, so the result needs no extra trim.
  icu::UnicodeString collapsed;
  bool pending_space = false;
  bool seen_content = false;
  for (int32_t i = 0; i < text.length();) {
    const UChar32 c = text.char32At(i);
    i += U16_LENGTH(c);
    if (u_isUWhiteSpace(c)) {
      pending_space = seen_content;
      continue;
    }
    if (pending_space) {
      collapsed.append(static_cast<char16_t>(u' '));
      pending_space = false;
    }
    seen_content = true;
    collapsed.append(c);
  }

  // Strip terminal '?', '!', '.' plus any whitespace this exposes, until the
  // tail is stable: "2+2 = ?" ends up as "2+2 =".
  while (collapsed.length() > 0) {
    const UChar32 last = collapsed.char32At(collapsed.length() - 1);
    if (is_terminal_punct(last) || u_isUWhiteSpace(last)) {
      collapsed.truncate(collapsed.length() - U16_LENGTH(last));
    } else {
      break;
    }
  }

  std::string out;
  collapsed.toUTF8String(out);
  return out;
}

std::size_t codepoint_count(std::string_view utf8) {
  const auto* bytes = reinterpret_cast<const std::uint8_t*>(utf8.data());
  const auto length = static_cast<int32_t>(utf8.size());
  std::size_t count = 0;
  for (int32_t i = 0; i < length;) {
    UChar32 c;
    U8_NEXT(bytes, i, length, c);
    (void)c;
    ++count;
  }
  return count;
}

std::string codepoint_prefix(std::string_view utf8, std::size_t max_codepoints) {
  const auto* bytes = reinterpret_cast<const std::uint8_t*>(utf8.data());
  const auto length = static_cast<int32_t>(utf8.size());
  std::size_t count = 0;
  int32_t i = 0;
  while (i < length && count < max_codepoints) {
    UChar32 c;
    U8_NEXT(bytes, i, length, c);
    (void)c;
    ++count;
  }
  return std::string(utf8.substr(0, static_cast<std::size_t>(i)));
}

TextStats analyze_text(std::string_view utf8) {
  const auto* bytes = reinterpret_cast<const std::uint8_t*>(utf8.data());
  const auto length = static_cast<int32_t>(utf8.size());
  TextStats stats;
  for (int32_t i = 0; i < length;) {
    UChar32 c;
    U8_NEXT(bytes, i, length, c);
    ++stats.codepoints;
    if (c < 0) {
      // Malformed byte: counts as opaque non-space content.
      ++stats.non_space;
      continue;
    }
    if (!u_isUWhiteSpace(c)) {
      ++stats.non_space;
    }
    if (u_isalpha(c)) {
      ++stats.alphabetic;
    }
    if (u_isalnum(c)) {
      ++stats.alphanumeric;
    }
  }
  return stats;
}

std::string to_upper(std::string_view utf8) {
  icu::UnicodeString text = from_utf8(utf8);
  text.toUpper(icu::Locale::getRoot());
  std::string out;
  text.toUTF8String(out);
  return out;
}

std::string to_lower(std::string_view utf8) {
  icu::UnicodeString text = from_utf8(utf8);
  text.toLower(icu::Locale::getRoot());
  std::string out;
  text.toUTF8String(out);
  return out;
}

}  // namespace mfee
