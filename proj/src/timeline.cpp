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

#include "avdr/timeline.hpp"

#include <algorithm>
#include <limits>

namespace avdr {

std::vector<std::string> Diarization::speaker_ids() const {
  std::vector<std::string> ids;
  ids.reserve(speakers_.size());
  for (const auto& [id, _] : speakers_) ids.push_back(id);
  return ids;
}

void Diarization::add(const std::string& speaker, TimeInterval interval) {
  if (interval.dur <= 0) return;
  auto& list = speakers_[speaker];
  Millis lo = interval.start;
  Millis hi = interval.end();
  // first interval whose end reaches lo (touching counts as mergeable)
  auto first = std::lower_bound(list.begin(), list.end(), lo,
                                [](const TimeInterval& iv, Millis t) { return iv.end() < t; });
  auto last = first;
  while (last != list.end() && last->start <= hi) {
    lo = std::min(lo, last->start);
    hi = std::max(hi, last->end());
    ++last;
  }
  first = list.erase(first, last);
  list.insert(first, TimeInterval{lo, hi - lo});
}

void Diarization::remove(const std::string& speaker, TimeInterval interval) {
  auto it = speakers_.find(speaker);
  if (it == speakers_.end() || interval.dur <= 0) return;
  std::vector<TimeInterval> kept;
  kept.reserve(it->second.size() + 1);
  for (const auto& iv : it->second) {
    if (iv.end() <= interval.start || iv.start >= interval.end()) {
      kept.push_back(iv);
      continue;
    }
    if (iv.start < interval.start) kept.push_back({iv.start, interval.start - iv.start});
    if (iv.end() > interval.end()) kept.push_back({interval.end(), iv.end() - interval.end()});
  }
  if (kept.empty()) {
    speakers_.erase(it);
  } else {
    it->second = std::move(kept);
  }
}

Millis Diarization::total_speech() const {
  Millis total = 0;
  for (const auto& [_, list] : speakers_) {
    for (const auto& iv : list) total += iv.dur;
  }
  return total;
}

Millis Diarization::speech_of(const std::string& speaker) const {
  auto it = speakers_.find(speaker);
  if (it == speakers_.end()) return 0;
  Millis total = 0;
  for (const auto& iv : it->second) total += iv.dur;
  return total;
}

TimeInterval Diarization::extent() const {
  if (speakers_.empty()) return {};
  Millis lo = std::numeric_limits<Millis>::max();
  Millis hi = std::numeric_limits<Millis>::min();
  for (const auto& [_, list] : speakers_) {
    lo = std::min(lo, list.front().start);
    hi = std::max(hi, list.back().end());
  }
  return {lo, hi - lo};
}

std::map<std::string, Diarization> group_by_session(std::span<const SpeakerTurn> turns) {
  std::map<std::string, Diarization> out;
  for (const auto& t : turns) {
    auto it = out.try_emplace(t.session, t.session).first;
    it->second.add(t.speaker, t.interval);
  }
  return out;
}

std::vector<SpeakerTurn> to_turns(const Diarization& d, const std::string& channel) {
  std::vector<SpeakerTurn> turns;
  for (const auto& [speaker, list] : d.speakers()) {
    for (const auto& iv : list) turns.push_back({d.session(), channel, speaker, iv});
  }
  std::sort(turns.begin(), turns.end(), [](const SpeakerTurn& a, const SpeakerTurn& b) {
    if (a.interval.start != b.interval.start) return a.interval.start < b.interval.start;
    return a.speaker < b.speaker;
  });
  return turns;
}

Tiling tile(std::span<const Diarization* const> inputs) {
  Tiling tiling;
  for (std::size_t k = 1; k < inputs.size(); ++k) {
    if (inputs[k]->session() != inputs[0]->session()) {
      throw Error(ErrorKind::kValidation, "session mismatch: '" + inputs[0]->session() +
                                              "' vs '" + inputs[k]->session() + "'");
    }
  }
  std::vector<Millis> bounds;
  std::vector<std::vector<const std::vector<TimeInterval>*>> lists(inputs.size());
  tiling.speakers.resize(inputs.size());
  for (std::size_t k = 0; k < inputs.size(); ++k) {
    for (const auto& [id, list] : inputs[k]->speakers()) {
      tiling.speakers[k].push_back(id);
      lists[k].push_back(&list);
      for (const auto& iv : list) {
        bounds.push_back(iv.start);
        bounds.push_back(iv.end());
      }
    }
  }
  std::sort(bounds.begin(), bounds.end());
  bounds.erase(std::unique(bounds.begin(), bounds.end()), bounds.end());
  if (bounds.size() < 2) return tiling;

  std::vector<std::vector<std::size_t>> cursor(inputs.size());
  for (std::size_t k = 0; k < inputs.size(); ++k) cursor[k].assign(lists[k].size(), 0);

  tiling.regions.reserve(bounds.size() - 1);
  for (std::size_t b = 0; b + 1 < bounds.size(); ++b) {
    TiledRegion region;
    region.start = bounds[b];
    region.end = bounds[b + 1];
    region.active.resize(inputs.size());
    for (std::size_t k = 0; k < inputs.size(); ++k) {
      for (std::size_t s = 0; s < lists[k].size(); ++s) {
        const auto& list = *lists[k][s];
        auto& c = cursor[k][s];
        while (c < list.size() && list[c].end() <= region.start) ++c;
        if (c < list.size() && list[c].start <= region.start) {
          region.active[k].push_back(static_cast<std::uint32_t>(s));
        }
      }
    }
    tiling.regions.push_back(std::move(region));
  }
  return tiling;
}

std::vector<PairedRegion> build_regions(const Diarization& a, const Diarization& b) {
  const Diarization* inputs[] = {&a, &b};
  const Tiling tiling = tile(inputs);
  std::vector<PairedRegion> out;
  out.reserve(tiling.regions.size());
  for (const auto& r : tiling.regions) {
    PairedRegion pr;
    pr.interval = {r.start, r.dur()};
    for (auto s : r.active[0]) pr.a_active.push_back(tiling.speakers[0][s]);
    for (auto s : r.active[1]) pr.b_active.push_back(tiling.speakers[1][s]);
    out.push_back(std::move(pr));
  }
  return out;
}

OverlapMatrix pairwise_overlap(const Diarization& ref, const Diarization& hyp) {
  const Diarization* inputs[] = {&ref, &hyp};
  const Tiling tiling = tile(inputs);
  OverlapMatrix m(tiling.speakers[0], tiling.speakers[1]);
  for (const auto& r : tiling.regions) {
    for (auto i : r.active[0]) {
      for (auto j : r.active[1]) m.at(i, j) += r.dur();
    }
  }
  return m;
}

}  // namespace avdr
