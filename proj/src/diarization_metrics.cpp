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

#include "avdr/diarization_metrics.hpp"

#include <algorithm>
#include <limits>

#include "avdr/assignment.hpp"

namespace avdr {
namespace {

SpeakerMap build_map(const OverlapMatrix& w, const std::vector<std::ptrdiff_t>& ref_to_hyp) {
  SpeakerMap map;
  std::vector<char> hyp_used(w.cols(), 0);
  for (std::size_t r = 0; r < w.rows(); ++r) {
    const auto h = ref_to_hyp[r];
    if (h >= 0 && w.at(r, static_cast<std::size_t>(h)) > 0) {
      map.pairs.emplace_back(w.ref_ids()[r], w.hyp_ids()[static_cast<std::size_t>(h)]);
      hyp_used[static_cast<std::size_t>(h)] = 1;
    } else {
      map.unmatched_ref.push_back(w.ref_ids()[r]);
    }
  }
  for (std::size_t h = 0; h < w.cols(); ++h) {
    if (!hyp_used[h]) map.unmatched_hyp.push_back(w.hyp_ids()[h]);
  }
  return map;
}

// Square matrix of side R + H: real refs first, then one padding row per hyp;
// real hyps first, then one padding column per ref. A ref sent to a padding
// column is unmatched. Refs try positive-overlap hyps, then padding (which
// never blocks a later ref), then zero-overlap hyps.
std::vector<std::ptrdiff_t> map_by_assignment(const OverlapMatrix& w) {
  const std::size_t n = w.rows() + w.cols();
  CostMatrix cost(n, n, 0);
  for (std::size_t r = 0; r < w.rows(); ++r) {
    for (std::size_t h = 0; h < w.cols(); ++h) cost.at(r, h) = -w.at(r, h);
  }
  const Assignment a = solve_min_cost_lex(
      cost,
      [&](std::size_t r, std::size_t c) {
        if (c >= w.cols()) return 1;
        return w.at(r, c) > 0 ? 0 : 2;
      },
      w.rows());
  std::vector<std::ptrdiff_t> ref_to_hyp(w.rows(), -1);
  for (std::size_t r = 0; r < w.rows(); ++r) {
    const auto c = a.row_to_col[r];
    if (c < w.cols() && w.at(r, c) > 0) ref_to_hyp[r] = static_cast<std::ptrdiff_t>(c);
  }
  return ref_to_hyp;
}

// Depth-first over refs in id order; each ref tries its positive-overlap hyps
// in id order, then "unmatched". Keeping only strict improvements yields the
// same lexicographic winner as the assignment path.
void search(const OverlapMatrix& w, std::size_t r, Millis acc, std::vector<char>& used,
            std::vector<std::ptrdiff_t>& current, Millis& best,
            std::vector<std::ptrdiff_t>& best_map) {
  if (r == w.rows()) {
    if (acc > best) {
      best = acc;
      best_map = current;
    }
    return;
  }
  for (std::size_t h = 0; h < w.cols(); ++h) {
    if (used[h] || w.at(r, h) <= 0) continue;
    used[h] = 1;
    current[r] = static_cast<std::ptrdiff_t>(h);
    search(w, r + 1, acc + w.at(r, h), used, current, best, best_map);
    used[h] = 0;
  }
  current[r] = -1;
  search(w, r + 1, acc, used, current, best, best_map);
}

std::vector<std::ptrdiff_t> map_by_enumeration(const OverlapMatrix& w) {
  std::vector<char> used(w.cols(), 0);
  std::vector<std::ptrdiff_t> current(w.rows(), -1);
  std::vector<std::ptrdiff_t> best_map(w.rows(), -1);
  Millis best = -1;
  search(w, 0, 0, used, current, best, best_map);
  return best_map;
}

}  // namespace

std::optional<std::string> SpeakerMap::hyp_for(const std::string& ref) const {
  for (const auto& [r, h] : pairs) {
    if (r == ref) return h;
  }
  return std::nullopt;
}

std::optional<std::string> SpeakerMap::ref_for(const std::string& hyp) const {
  for (const auto& [r, h] : pairs) {
    if (h == hyp) return r;
  }
  return std::nullopt;
}

SpeakerMap optimal_speaker_map(const Diarization& ref, const Diarization& hyp, MappingMode mode) {
  const OverlapMatrix w = pairwise_overlap(ref, hyp);
  return build_map(w, mode == MappingMode::kAssignment ? map_by_assignment(w)
                                                       : map_by_enumeration(w));
}

double DerBreakdown::der() const {
  if (total <= 0) throw Error(ErrorKind::kUndefined, "DER undefined: reference has no speech");
  return static_cast<double>(errors()) / static_cast<double>(total);
}

DerBreakdown compute_der(const Diarization& ref, const Diarization& hyp, const SpeakerMap& map) {
  const Diarization* inputs[] = {&ref, &hyp};
  const Tiling tiling = tile(inputs);
  const auto& ref_ids = tiling.speakers[0];
  const auto& hyp_ids = tiling.speakers[1];

  // ref index -> hyp index of its mapped partner
  std::vector<std::ptrdiff_t> partner(ref_ids.size(), -1);
  for (const auto& [r, h] : map.pairs) {
    const auto ri = std::lower_bound(ref_ids.begin(), ref_ids.end(), r);
    const auto hi = std::lower_bound(hyp_ids.begin(), hyp_ids.end(), h);
    if (ri == ref_ids.end() || *ri != r || hi == hyp_ids.end() || *hi != h) {
      throw Error(ErrorKind::kValidation, "speaker map pair (" + r + ", " + h +
                                              ") does not match the diarizations");
    }
    partner[static_cast<std::size_t>(ri - ref_ids.begin())] = hi - hyp_ids.begin();
  }

  DerBreakdown out;
  std::vector<char> hyp_active(hyp_ids.size(), 0);
  for (const auto& region : tiling.regions) {
    const Millis dur = region.dur();
    const auto n_ref = static_cast<Millis>(region.active[0].size());
    const auto n_hyp = static_cast<Millis>(region.active[1].size());
    if (n_ref == 0 && n_hyp == 0) continue;
    for (auto h : region.active[1]) hyp_active[h] = 1;
    Millis n_correct = 0;
    for (auto r : region.active[0]) {
      const auto p = partner[r];
      if (p >= 0 && hyp_active[static_cast<std::size_t>(p)]) ++n_correct;
    }
    for (auto h : region.active[1]) hyp_active[h] = 0;

    out.total += dur * n_ref;
    out.miss += dur * std::max<Millis>(0, n_ref - n_hyp);
    out.fa += dur * std::max<Millis>(0, n_hyp - n_ref);
    out.spkerr += dur * (std::min(n_ref, n_hyp) - n_correct);
  }
  if (out.total == 0) {
    throw Error(ErrorKind::kUndefined,
                "DER undefined: reference has no speech in session '" + ref.session() + "'");
  }
  return out;
}

DerBreakdown score_session(const Diarization& ref, const Diarization& hyp, MappingMode mode) {
  return compute_der(ref, hyp, optimal_speaker_map(ref, hyp, mode));
}

DerBreakdown aggregate_der(std::span<const DerBreakdown> parts) {
  if (parts.empty()) throw Error(ErrorKind::kValidation, "aggregate_der: no sessions");
  DerBreakdown sum;
  for (const auto& p : parts) {
    sum.fa += p.fa;
    sum.miss += p.miss;
    sum.spkerr += p.spkerr;
    sum.total += p.total;
  }
  return sum;
}

}  // namespace avdr
