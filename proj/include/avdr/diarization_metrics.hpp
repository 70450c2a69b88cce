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

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "avdr/timeline.hpp"

namespace avdr {

/// Injective ref <-> hyp speaker correspondence. Pairs are sorted by ref id.
struct SpeakerMap {
  std::vector<std::pair<std::string, std::string>> pairs;
  std::vector<std::string> unmatched_ref;
  std::vector<std::string> unmatched_hyp;

  std::optional<std::string> hyp_for(const std::string& ref) const;
  std::optional<std::string> ref_for(const std::string& hyp) const;

  friend bool operator==(const SpeakerMap&, const SpeakerMap&) = default;
};

enum class MappingMode {
  kAssignment,  // Hungarian with lexicographic tie-break
  kBruteForce,  // enumerate every injective map (oracle; factorial cost)
};

/// Mapping that maximizes the total co-activity of matched pairs. Only pairs
/// with positive overlap are kept. Among optimal maps the lexicographically
/// first by (ref, hyp) id order wins, identically in both modes.
SpeakerMap optimal_speaker_map(const Diarization& ref, const Diarization& hyp,
                               MappingMode mode = MappingMode::kAssignment);

/// FA / MISS / SPKERR / TOTAL in milliseconds. The ratio is derived from the
/// integer durations, never stored.
struct DerBreakdown {
  Millis fa = 0;
  Millis miss = 0;
  Millis spkerr = 0;
  Millis total = 0;

  Millis errors() const { return fa + miss + spkerr; }
  /// (fa + miss + spkerr) / total. Throws Error{kUndefined} when total == 0.
  double der() const;

  friend bool operator==(const DerBreakdown&, const DerBreakdown&) = default;
};

/// Scores `hyp` against `ref` over the joint region tiling, no collar, with
/// overlapped speech scored. Throws Error{kUndefined} when the reference has
/// no speech.
DerBreakdown compute_der(const Diarization& ref, const Diarization& hyp, const SpeakerMap& map);

/// compute_der with the optimal map.
DerBreakdown score_session(const Diarization& ref, const Diarization& hyp,
                           MappingMode mode = MappingMode::kAssignment);

/// Duration-weighted corpus score: sums each component over sessions.
DerBreakdown aggregate_der(std::span<const DerBreakdown> parts);

}  // namespace avdr
