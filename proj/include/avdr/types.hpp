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
#include <stdexcept>
#include <string>

namespace avdr {

/// All times are integer milliseconds. RTTM decimal seconds are converted
/// exactly, so DER components are exact integer sums.
using Millis = std::int64_t;

/// Closed-open interval [start, start + dur).
struct TimeInterval {
  Millis start = 0;
  Millis dur = 0;

  constexpr Millis end() const { return start + dur; }
  constexpr bool contains(Millis t) const { return t >= start && t < end(); }

  friend constexpr bool operator==(const TimeInterval&, const TimeInterval&) = default;
  friend constexpr auto operator<=>(const TimeInterval&, const TimeInterval&) = default;
};

/// One SPEAKER line of an RTTM file.
struct SpeakerTurn {
  std::string session;
  std::string channel = "1";  // carried verbatim, never scored
  std::string speaker;
  TimeInterval interval;

  friend bool operator==(const SpeakerTurn&, const SpeakerTurn&) = default;
};

/// One line of a transcript file. `order_key` is the line index, or the start
/// time in ms when the utterance has been tied to a timed segment.
struct TranscriptEntry {
  std::string speaker;
  std::string session;
  std::string text;
  std::int64_t order_key = 0;

  std::string utterance_id() const { return speaker + "_" + session; }

  friend bool operator==(const TranscriptEntry&, const TranscriptEntry&) = default;
};

enum class ErrorKind {
  kParse,       // malformed input text
  kValidation,  // well-formed but violates a contract
  kIo,          // unreadable / unwritable file
  kUndefined,   // metric undefined for the input (e.g. zero reference)
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what, std::size_t line = 0)
      : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what),
        kind_(kind),
        line_(line) {}

  ErrorKind kind() const { return kind_; }
  /// 1-based input line, 0 when not tied to a line.
  std::size_t line() const { return line_; }

 private:
  ErrorKind kind_;
  std::size_t line_;
};

}  // namespace avdr
