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

#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace avdr {

/// Normalized character tokens: one Unicode code point each, never whitespace.
using CharSeq = std::vector<char32_t>;

struct NormalizeOptions {
  /// Remove the punctuation table (ASCII punctuation and symbols, Latin-1
  /// marks, General Punctuation, CJK symbols and punctuation, CJK
  /// compatibility / small / vertical forms, fullwidth punctuation).
  bool strip_punctuation = true;
  /// Fold ASCII and fullwidth Latin capitals to lowercase.
  bool lowercase_latin = false;

  friend bool operator==(const NormalizeOptions&, const NormalizeOptions&) = default;
};

/// NFC-composes `raw`, drops whitespace (and BOM / zero-width space), then
/// splits into code points. Throws Error{kValidation} on malformed UTF-8.
CharSeq normalize_text(std::string_view raw, const NormalizeOptions& options = {});

bool is_stripped_punctuation(char32_t c);
bool is_removed_space(char32_t c);

/// Strict UTF-8 decode (rejects overlongs, surrogates, values past U+10FFFF).
std::u32string decode_utf8(std::string_view text);
std::string encode_utf8(std::u32string_view text);
std::string encode_utf8(const CharSeq& seq);

/// Substitution / deletion / insertion counts against a reference of n tokens.
struct EditCounts {
  std::int64_t s = 0;
  std::int64_t d = 0;
  std::int64_t i = 0;
  std::int64_t n = 0;

  std::int64_t errors() const { return s + d + i; }
  /// (s + d + i) / n; 0 when both sides are empty; +infinity when n == 0 and
  /// the hypothesis is not empty (check is_unbounded()).
  double cer() const;
  bool is_unbounded() const { return n == 0 && errors() > 0; }

  EditCounts& operator+=(const EditCounts& o) {
    s += o.s;
    d += o.d;
    i += o.i;
    n += o.n;
    return *this;
  }
  friend bool operator==(const EditCounts&, const EditCounts&) = default;
};

/// Unit-cost Levenshtein alignment. Among minimum-cost alignments the
/// backtrace from the end prefers a diagonal step (match or substitution),
/// then deletion, then insertion, so the S/D/I split is deterministic.
/// Runs in O(|ref| * |hyp|) time and O(|hyp|) memory.
EditCounts edit_counts(const CharSeq& ref, const CharSeq& hyp);

}  // namespace avdr
