// Copyright 2026  avdr-score authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include "avdr/text_metrics.hpp"

#include <unicode/normalizer2.h>
#include <unicode/unistr.h>

#include <limits>

#include "avdr/types.hpp"

namespace avdr {
namespace {

struct Range {
  char32_t lo;
  char32_t hi;
};

// Sorted, non-overlapping.
constexpr Range kPunctuation[] = {
    {0x21, 0x2F},     {0x3A, 0x40},     {0x5B, 0x60},     {0x7B, 0x7E},
    {0xA1, 0xA1},     {0xA7, 0xA7},     {0xAB, 0xAB},     {0xB6, 0xB7},
    {0xBB, 0xBB},     {0xBF, 0xBF},     {0x2010, 0x2027}, {0x2030, 0x205E},
    {0x3001, 0x3003}, {0x3008, 0x3011}, {0x3014, 0x301F}, {0x30FB, 0x30FB},
    {0xFE10, 0xFE19}, {0xFE30, 0xFE4F}, {0xFE50, 0xFE6B}, {0xFF01, 0xFF0F},
    {0xFF1A, 0xFF20}, {0xFF3B, 0xFF40}, {0xFF5B, 0xFF65},
};

constexpr Range kSpace[] = {
    {0x09, 0x0D},     {0x20, 0x20},     {0x85, 0x85},     {0xA0, 0xA0},
    {0x1680, 0x1680}, {0x2000, 0x200B}, {0x2028, 0x2029}, {0x202F, 0x202F},
    {0x205F, 0x205F}, {0x3000, 0x3000}, {0xFEFF, 0xFEFF},
};

template <std::size_t N>
bool in_table(const Range (&table)[N], char32_t c) {
  for (const auto& r : table) {
    if (c < r.lo) return false;
    if (c <= r.hi) return true;
  }
  return false;
}

char32_t fold_latin(char32_t c) {
  if (c >= U'A' && c <= U'Z') return c + 0x20;
  if (c >= 0xFF21 && c <= 0xFF3A) return c + 0x20;  // fullwidth A-Z
  return c;
}

std::u32string nfc(const std::u32string& cps) {
  bool ascii = true;
  for (char32_t c : cps) {
    if (c >= 0x80) {
      ascii = false;
      break;
    }
  }
  if (ascii) return cps;
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* norm = icu::Normalizer2::getNFCInstance(status);
  if (U_FAILURE(status)) throw std::runtime_error("ICU NFC normalizer unavailable");
  const icu::UnicodeString src =
      icu::UnicodeString::fromUTF32(reinterpret_cast<const UChar32*>(cps.data()),
                                    static_cast<int32_t>(cps.size()));
  const icu::UnicodeString out = norm->normalize(src, status);
  if (U_FAILURE(status)) throw std::runtime_error("ICU NFC normalization failed");
  std::u32string result;
  result.reserve(static_cast<std::size_t>(out.countChar32()));
  for (int32_t i = 0; i < out.length();) {
    const UChar32 c = out.char32At(i);
    result.push_back(static_cast<char32_t>(c));
    i += U16_LENGTH(c);
  }
  return result;
}

}  // namespace

bool is_stripped_punctuation(char32_t c) { return in_table(kPunctuation, c); }
bool is_removed_space(char32_t c) { return in_table(kSpace, c); }

std::u32string decode_utf8(std::string_view text) {
  std::u32string out;
  out.reserve(text.size());
  std::size_t i = 0;
  auto fail = [&](const char* why) {
    return Error(ErrorKind::kValidation,
                 std::string("invalid UTF-8 at byte ") + std::to_string(i) + ": " + why);
  };
  while (i < text.size()) {
    const auto b0 = static_cast<unsigned char>(text[i]);
    if (b0 < 0x80) {
      out.push_back(b0);
      ++i;
      continue;
    }
    std::size_t len = 0;
    char32_t cp = 0;
    char32_t min = 0;
    if ((b0 & 0xE0) == 0xC0) {
      len = 2;
      cp = b0 & 0x1F;
      min = 0x80;
    } else if ((b0 & 0xF0) == 0xE0) {
      len = 3;
      cp = b0 & 0x0F;
      min = 0x800;
    } else if ((b0 & 0xF8) == 0xF0) {
      len = 4;
      cp = b0 & 0x07;
      min = 0x10000;
    } else {
      throw fail("bad lead byte");
    }
    if (i + len > text.size()) throw fail("truncated sequence");
    for (std::size_t k = 1; k < len; ++k) {
      const auto b = static_cast<unsigned char>(text[i + k]);
      if ((b & 0xC0) != 0x80) throw fail("bad continuation byte");
      cp = (cp << 6) | (b & 0x3F);
    }
    if (cp < min) throw fail("overlong encoding");
    if (cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) throw fail("invalid code point");
    out.push_back(cp);
    i += len;
  }
  return out;
}

std::string encode_utf8(std::u32string_view text) {
  std::string out;
  out.reserve(text.size() * 3);
  for (char32_t c : text) {
    if (c < 0x80) {
      out.push_back(static_cast<char>(c));
    } else if (c < 0x800) {
      out.push_back(static_cast<char>(0xC0 | (c >> 6)));
      out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
    } else if (c < 0x10000) {
      out.push_back(static_cast<char>(0xE0 | (c >> 12)));
      out.push_back(static_cast<char>(0x80 | ((c >> 6) & 0x3F)));
      out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
    } else {
      out.push_back(static_cast<char>(0xF0 | (c >> 18)));
      out.push_back(static_cast<char>(0x80 | ((c >> 12) & 0x3F)));
      out.push_back(static_cast<char>(0x80 | ((c >> 6) & 0x3F)));
      out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
    }
  }
  return out;
}

std::string encode_utf8(const CharSeq& seq) {
  return encode_utf8(std::u32string_view(seq.data(), seq.size()));
}

CharSeq normalize_text(std::string_view raw, const NormalizeOptions& options) {
  const std::u32string composed = nfc(decode_utf8(raw));
  CharSeq out;
  out.reserve(composed.size());
  for (char32_t c : composed) {
    if (is_removed_space(c)) continue;
    if (options.strip_punctuation && is_stripped_punctuation(c)) continue;
    out.push_back(options.lowercase_latin ? fold_latin(c) : c);
  }
  return out;
}

double EditCounts::cer() const {
  if (n == 0) return errors() == 0 ? 0.0 : std::numeric_limits<double>::infinity();
  return static_cast<double>(errors()) / static_cast<double>(n);
}

EditCounts edit_counts(const CharSeq& ref, const CharSeq& hyp) {
  // Each cell carries the counts of the path the backtrace would follow, so
  // only two rows are kept.
  struct Cell {
    std::int64_t cost;
    std::int64_t s, d, i;
  };
  const std::size_t m = hyp.size();
  std::vector<Cell> prev(m + 1), cur(m + 1);
  for (std::size_t j = 0; j <= m; ++j) {
    prev[j] = {static_cast<std::int64_t>(j), 0, 0, static_cast<std::int64_t>(j)};
  }
  for (std::size_t r = 1; r <= ref.size(); ++r) {
    cur[0] = {static_cast<std::int64_t>(r), 0, static_cast<std::int64_t>(r), 0};
    for (std::size_t j = 1; j <= m; ++j) {
      const bool same = ref[r - 1] == hyp[j - 1];
      const Cell& diag = prev[j - 1];
      const Cell& up = prev[j];
      const Cell& left = cur[j - 1];
      const std::int64_t c_diag = diag.cost + (same ? 0 : 1);
      const std::int64_t c_del = up.cost + 1;
      const std::int64_t c_ins = left.cost + 1;
      if (c_diag <= c_del && c_diag <= c_ins) {
        cur[j] = {c_diag, diag.s + (same ? 0 : 1), diag.d, diag.i};
      } else if (c_del <= c_ins) {
        cur[j] = {c_del, up.s, up.d + 1, up.i};
      } else {
        cur[j] = {c_ins, left.s, left.d, left.i + 1};
      }
    }
    std::swap(prev, cur);
  }
  const Cell& last = prev[m];
  return {last.s, last.d, last.i, static_cast<std::int64_t>(ref.size())};
}

}  // namespace avdr
