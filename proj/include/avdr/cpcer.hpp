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

#include <map>
#include <span>
#include <string>
#include <vector>

#include "avdr/diarization_metrics.hpp"
#include "avdr/text_metrics.hpp"
#include "avdr/types.hpp"

namespace avdr {

/// Per-session, per-speaker chronologically concatenated text.
struct SpeakerText {
  std::string session;
  std::map<std::string, CharSeq> streams;

  std::int64_t total_chars() const;
  friend bool operator==(const SpeakerText&, const SpeakerText&) = default;
};

/// Joins each speaker's texts in ascending order_key (stable for equal keys),
/// then normalizes. All entries must share one session (Error{kValidation}
/// otherwise). Equal (speaker, order_key) with differing text is kept in
/// input order and reported through `warnings`.
SpeakerText concat_by_speaker(std::span<const TranscriptEntry> entries,
                              const NormalizeOptions& options = {},
                              std::vector<std::string>* warnings = nullptr);

/// concat_by_speaker applied per session.
std::map<std::string, SpeakerText> concat_by_session(std::span<const TranscriptEntry> entries,
                                                     const NormalizeOptions& options = {},
                                                     std::vector<std::string>* warnings = nullptr);

enum class CpcerMode {
  kAssignment,  // Hungarian on the padded cost matrix
  kBruteForce,  // every bijection of the padded sides (oracle)
};

/// One matched stream pair; an empty id stands for a padding (empty) stream.
struct StreamAlignment {
  std::string ref;
  std::string hyp;
  EditCounts counts;

  friend bool operator==(const StreamAlignment&, const StreamAlignment&) = default;
};

struct CpcerResult {
  SpeakerMap assignment;
  std::vector<StreamAlignment> alignments;
  EditCounts counts;  // summed over alignments; n = total reference chars

  double cpcer() const { return counts.cer(); }
  friend bool operator==(const CpcerResult&, const CpcerResult&) = default;
};

/// Concatenated minimum-permutation CER. The smaller side is padded with
/// empty streams; cost(r, h) = s + d + i. Among optimal assignments the
/// lexicographically first (ref id order, then hyp id order, padding last)
/// is chosen in both modes, so the S/D/I split is mode-independent. `jobs`
/// bounds the threads used for the cost-matrix fill. Throws Error{kUndefined}
/// when the reference has no characters.
CpcerResult compute_cpcer(const SpeakerText& ref, const SpeakerText& hyp,
                          CpcerMode mode = CpcerMode::kAssignment, int jobs = 1);

/// Corpus-level counts: sums of per-session edit operations and N.
EditCounts aggregate_cpcer(std::span<const CpcerResult> parts);

}  // namespace avdr
