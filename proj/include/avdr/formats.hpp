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

#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "avdr/types.hpp"

namespace avdr {

/// Parses a decimal seconds field ("10.50", "3", "0.125") into exact
/// milliseconds. More than three fractional digits, signs, exponents and
/// non-digits are rejected with a parse error.
Millis parse_seconds(std::string_view field, std::size_t line = 0);

/// Formats milliseconds as seconds with exactly two decimals, rounding
/// half-up on the dropped millisecond digit (10505 ms -> "10.51").
std::string format_seconds(Millis ms);

/// Reads RTTM text. Blank lines and ";;" comments are ignored. Records other
/// than SPEAKER are skipped and reported through `warnings` when given.
/// Only fields 2 (session), 3 (channel), 4 (start), 5 (duration) and
/// 8 (speaker) are interpreted; placeholders elsewhere are ignored.
std::vector<SpeakerTurn> parse_rttm(std::string_view text,
                                    std::vector<std::string>* warnings = nullptr);

/// Writes the canonical 10-field form, sorted by (session, start, speaker).
std::string emit_rttm(std::span<const SpeakerTurn> turns);

/// Splits "<speaker>_<session>" at the last underscore.
std::pair<std::string, std::string> split_utterance_id(std::string_view id,
                                                       std::size_t line = 0);

/// Reads "<utterance id><whitespace><text>" lines. The text after the first
/// whitespace run is kept verbatim; order_key is the entry's index.
std::vector<TranscriptEntry> parse_transcript(std::string_view text);

/// Writes one "<speaker>_<session> <text>" line per entry, in input order.
std::string emit_transcript(std::span<const TranscriptEntry> entries);

/// Whole-file helpers; both throw Error{kIo} on failure.
std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view contents);

}  // namespace avdr
