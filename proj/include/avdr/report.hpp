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
#include <vector>

#include "avdr/cpcer.hpp"
#include "avdr/diarization_metrics.hpp"
#include "avdr/types.hpp"

namespace avdr {

/// 100 * num / den with two decimals, rounded half-up from the exact ratio.
/// Returns "inf" when den == 0 and num > 0, "0.00" when both are zero.
std::string format_percent(std::int64_t num, std::int64_t den);

struct DerRow {
  std::string session;  // "ALL" for the aggregate
  DerBreakdown breakdown;
};

struct DerReport {
  std::vector<std::string> settings;  // "key=value", echoed into headers
  std::vector<DerRow> sessions;       // sorted by session id
  DerRow total;
  std::vector<std::string> ref_only;  // scored against an empty hypothesis
  std::vector<std::string> hyp_only;  // not scored

  std::string text() const;
  std::string tsv() const;
};

/// Groups both sides by session and scores each shared or reference-only
/// session, up to `jobs` at a time. Throws Error{kValidation} when no
/// reference session has a hypothesis.
DerReport score_der_corpus(std::span<const SpeakerTurn> ref, std::span<const SpeakerTurn> hyp,
                           MappingMode mode = MappingMode::kAssignment, int jobs = 1);

struct CpcerRow {
  std::string session;
  EditCounts counts;
};

struct CpcerReport {
  std::vector<std::string> settings;
  std::vector<CpcerRow> sessions;
  CpcerRow total;
  std::vector<std::string> ref_only;
  std::vector<std::string> hyp_only;
  std::vector<std::string> warnings;

  std::string text() const;
  std::string tsv() const;
};

struct CpcerCorpusOptions {
  NormalizeOptions normalize;
  CpcerMode mode = CpcerMode::kAssignment;
  int jobs = 1;
};

/// Ties reference transcript lines to timed turns: the k-th line of a
/// (speaker, session) takes the start of that pair's k-th turn in `turns`
/// as its order key. Throws Error{kValidation} when the counts differ.
std::vector<TranscriptEntry> order_by_turns(std::span<const TranscriptEntry> entries,
                                            std::span<const SpeakerTurn> turns);

/// Session handling mirrors score_der_corpus. A session whose reference has
/// no characters after normalization is Error{kUndefined}.
CpcerReport score_cpcer_corpus(std::span<const TranscriptEntry> ref,
                               std::span<const TranscriptEntry> hyp,
                               const CpcerCorpusOptions& options = {});

}  // namespace avdr
