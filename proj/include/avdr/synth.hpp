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
#include <map>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "avdr/timeline.hpp"
#include "avdr/types.hpp"

namespace avdr {

/// Seeded generator with a platform-independent output sequence:
/// std::mt19937_64 (whose sequence the standard fixes) plus explicit
/// rejection-sampled range reduction instead of the implementation-defined
/// std::uniform_*_distribution.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform integer in [lo, hi].
  std::int64_t uniform(std::int64_t lo, std::int64_t hi);

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t k = v.size(); k > 1; --k) {
      const auto j = static_cast<std::size_t>(uniform(0, static_cast<std::int64_t>(k) - 1));
      std::swap(v[k - 1], v[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

/// Splits `total` units over slots in proportion to `weights` without
/// exceeding `caps`; the floor-share remainder goes one unit at a time to
/// slots visited in seeded random order. Throws Error{kValidation} when the
/// caps cannot hold `total`.
std::vector<std::int64_t> allocate_units(std::int64_t total, std::span<const std::int64_t> weights,
                                         std::span<const std::int64_t> caps, Rng& rng);

struct SessionParams {
  std::string session = "S001";
  int speakers = 4;
  Millis duration_ms = 600'000;
  double overlap_ratio = 0.05;
  double silence_ratio = 0.2;
  std::uint64_t seed = 1;
  double chars_per_second = 4.0;
};

struct SynthSession {
  Diarization reference;
  std::vector<SpeakerTurn> turns;              // chronological, one per utterance
  std::vector<TranscriptEntry> transcript;     // parallel to turns; order_key = start ms
  double realized_overlap = 0.0;               // share of [0, duration) with >= 2 speakers
  double realized_silence = 0.0;               // share of [0, duration) with no speaker
};

/// Builds a reproducible conversation on a 10 ms grid: turns alternate
/// between different speakers, neighbouring turns either leave a gap or
/// overlap, and one speaker's turns never touch. Each turn carries random
/// CJK text whose length is proportional to its duration. Ratio targets are
/// best-effort; the realized values are reported.
SynthSession generate_session(const SessionParams& params);

struct DiarizationInjection {
  Millis fa = 0;
  Millis miss = 0;
  Millis spkerr = 0;
};

struct InjectionPiece {
  std::string kind;     // "FA", "MISS" or "SPKERR"
  std::string speaker;  // label made active (FA), removed (MISS) or replaced (SPKERR)
  std::string target;   // SPKERR only: label that replaces `speaker`
  TimeInterval interval;
};

struct DiarizationLedger {
  DiarizationInjection totals;
  std::vector<InjectionPiece> pieces;
};

struct CorruptedDiarization {
  Diarization hypothesis;
  DiarizationLedger ledger;
};

/// Derives a hypothesis whose DER against `ref` is exactly the injection.
/// False alarms go inside silent gaps, at least 10 ms from any speech; misses
/// cut pieces out of single-speaker stretches; speaker errors relabel other
/// single-speaker pieces to a different existing speaker. Amounts are spread
/// over the eligible stretches in proportion to their length and must be
/// multiples of 10 ms. Throws Error{kValidation} when there is not enough
/// room, or when the edits would let a different speaker mapping win.
CorruptedDiarization corrupt_diarization(const Diarization& ref, const DiarizationInjection& inject,
                                         std::uint64_t seed);

struct TextInjection {
  std::int64_t s = 0;
  std::int64_t d = 0;
  std::int64_t i = 0;

  friend bool operator==(const TextInjection&, const TextInjection&) = default;
};

struct CorruptedText {
  std::vector<TranscriptEntry> hypothesis;  // parallel to the reference entries
  TextInjection ledger;
};

/// Edits the per-speaker streams so that cpCER recovers exactly (s, d, i).
/// Substituted and inserted characters never occur anywhere in the session's
/// reference, and a stream receives deletions or insertions but never both;
/// under those two rules every minimum-cost alignment has the injected split.
/// Entries are normalized (default options) before editing.
/// Throws Error{kValidation} for infeasible counts, or when the edited
/// streams would no longer be matched to their own reference speaker.
CorruptedText corrupt_text(std::span<const TranscriptEntry> ref, const TextInjection& inject,
                           std::uint64_t seed);

/// "<KIND>\t<amount>" lines: FA/MISS/SPKERR in ms, then S/D/I in characters.
std::string emit_ledger(const DiarizationInjection& diarization, const TextInjection& text);
std::map<std::string, std::int64_t> parse_ledger(std::string_view text);

}  // namespace avdr
