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
#include <span>
#include <string>
#include <vector>

#include "avdr/types.hpp"

namespace avdr {

/// Per-session speaker activity. For every speaker the intervals are sorted,
/// pairwise disjoint, non-adjacent and of positive duration; speakers with no
/// activity are not stored.
class Diarization {
 public:
  using SpeakerMap = std::map<std::string, std::vector<TimeInterval>>;

  Diarization() = default;
  explicit Diarization(std::string session) : session_(std::move(session)) {}

  const std::string& session() const { return session_; }
  const SpeakerMap& speakers() const { return speakers_; }
  std::vector<std::string> speaker_ids() const;
  bool empty() const { return speakers_.empty(); }
  bool has_speaker(const std::string& id) const { return speakers_.count(id) != 0; }

  /// Adds activity, merging with overlapping or touching intervals of the
  /// same speaker. Zero-length intervals are ignored.
  void add(const std::string& speaker, TimeInterval interval);
  /// Removes activity of `speaker` inside `interval`.
  void remove(const std::string& speaker, TimeInterval interval);

  /// Sum of interval durations over speakers (overlap counted per speaker).
  Millis total_speech() const;
  Millis speech_of(const std::string& speaker) const;
  /// Earliest start and latest end over all speakers; {0,0} when empty.
  TimeInterval extent() const;

  friend bool operator==(const Diarization&, const Diarization&) = default;

 private:
  std::string session_;
  SpeakerMap speakers_;
};

/// Groups turns per session. Overlapping turns of one speaker are merged.
std::map<std::string, Diarization> group_by_session(std::span<const SpeakerTurn> turns);

/// One turn per interval, in (start, speaker) order.
std::vector<SpeakerTurn> to_turns(const Diarization& d, const std::string& channel = "1");

/// A constant stretch of the joint timeline of several diarizations.
/// `active[k]` holds indices into `Tiling::speakers[k]`, ascending.
struct TiledRegion {
  Millis start = 0;
  Millis end = 0;
  std::vector<std::vector<std::uint32_t>> active;

  Millis dur() const { return end - start; }
};

struct Tiling {
  std::vector<std::vector<std::string>> speakers;  // sorted ids per input
  std::vector<TiledRegion> regions;
};

/// Cuts the union extent of all inputs at every interval boundary. Regions
/// tile [min boundary, max boundary) without gaps, including silent ones.
/// Throws Error{kValidation} if the inputs belong to different sessions.
Tiling tile(std::span<const Diarization* const> inputs);

struct PairedRegion {
  TimeInterval interval;
  std::vector<std::string> a_active;
  std::vector<std::string> b_active;

  friend bool operator==(const PairedRegion&, const PairedRegion&) = default;
};

std::vector<PairedRegion> build_regions(const Diarization& a, const Diarization& b);

/// Dense ref x hyp matrix of co-activity durations.
class OverlapMatrix {
 public:
  OverlapMatrix() = default;
  OverlapMatrix(std::vector<std::string> ref_ids, std::vector<std::string> hyp_ids)
      : ref_ids_(std::move(ref_ids)),
        hyp_ids_(std::move(hyp_ids)),
        cells_(ref_ids_.size() * hyp_ids_.size(), 0) {}

  std::size_t rows() const { return ref_ids_.size(); }
  std::size_t cols() const { return hyp_ids_.size(); }
  const std::vector<std::string>& ref_ids() const { return ref_ids_; }
  const std::vector<std::string>& hyp_ids() const { return hyp_ids_; }

  Millis& at(std::size_t r, std::size_t h) { return cells_[r * hyp_ids_.size() + h]; }
  Millis at(std::size_t r, std::size_t h) const { return cells_[r * hyp_ids_.size() + h]; }

 private:
  std::vector<std::string> ref_ids_;
  std::vector<std::string> hyp_ids_;
  std::vector<Millis> cells_;
};

OverlapMatrix pairwise_overlap(const Diarization& ref, const Diarization& hyp);

}  // namespace avdr
