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
#include <string_view>
#include <vector>

#include "avdr/timeline.hpp"
#include "avdr/types.hpp"

namespace avdr {

/// Frame-level speech probabilities, one column per speaker. Frame f covers
/// [f * frame_ms, (f + 1) * frame_ms).
struct ProbabilityMatrix {
  std::string session;
  Millis frame_ms = 10;
  std::vector<std::string> speakers;
  std::vector<double> values;  // row-major, frames x speakers

  std::size_t frames() const { return speakers.empty() ? 0 : values.size() / speakers.size(); }
  double at(std::size_t frame, std::size_t speaker) const {
    return values[frame * speakers.size() + speaker];
  }
};

/// Text form: a header "session frame_ms spk1 spk2 ..." followed by one
/// whitespace-separated row of probabilities per frame.
ProbabilityMatrix parse_probability_matrix(std::string_view text);
std::string emit_probability_matrix(const ProbabilityMatrix& m);

/// Frames with probability >= threshold become active; maximal runs become
/// intervals. Throws Error{kValidation} unless 0 < threshold < 1.
Diarization binarize_probs(const ProbabilityMatrix& probs, double threshold = 0.5);

struct SmoothingOptions {
  Millis max_gap_ms = 300;  // gaps strictly shorter than this are bridged
  Millis min_dur_ms = 200;  // segments strictly shorter than this are dropped
};

/// Per speaker: bridge short gaps first, then drop short segments.
Diarization smooth_segments(const Diarization& d, const SmoothingOptions& options = {});

struct ManifestRow {
  std::string session;
  std::string speaker;
  TimeInterval interval;

  /// "<speaker>_<session>-<start ms, 8 digits>-<end ms, 8 digits>"
  std::string segment_id() const;
  friend bool operator==(const ManifestRow&, const ManifestRow&) = default;
};

/// Utterance segments in (session, start, speaker) order.
struct SegmentManifest {
  std::vector<ManifestRow> rows;
  friend bool operator==(const SegmentManifest&, const SegmentManifest&) = default;
};

SegmentManifest build_manifest(const Diarization& d);
SegmentManifest build_manifest(std::span<const Diarization> sessions);
std::map<std::string, Diarization> manifest_to_diarizations(const SegmentManifest& manifest);

/// TSV with the header "segment_id session speaker start_ms dur_ms".
std::string emit_manifest(const SegmentManifest& manifest);
/// Rejects malformed rows, non-positive durations and unsorted input.
SegmentManifest parse_manifest(std::string_view text);

/// "<segment_id> <decoded text>" per line; duplicate ids are rejected.
std::map<std::string, std::string> parse_segment_texts(std::string_view text);

/// Joins each (session, speaker)'s decoded segment texts in start-time order
/// into a single transcript entry, output sorted by (session, speaker).
/// Rows without text contribute nothing; a text whose id is not in the
/// manifest is a validation error.
std::vector<TranscriptEntry> assemble_transcript(const SegmentManifest& manifest,
                                                 const std::map<std::string, std::string>& texts);

}  // namespace avdr
