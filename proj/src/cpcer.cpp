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

#include "avdr/cpcer.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "avdr/assignment.hpp"
#include "parallel.hpp"

namespace avdr {
namespace {

constexpr std::size_t kBruteForceLimit = 10;

std::vector<std::size_t> lex_first_min_permutation(const CostMatrix& cost) {
  const std::size_t n = cost.rows();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::size_t> best = perm;
  std::int64_t best_cost = std::numeric_limits<std::int64_t>::max();
  do {
    std::int64_t c = 0;
    for (std::size_t r = 0; r < n; ++r) c += cost.at(r, perm[r]);
    if (c < best_cost) {
      best_cost = c;
      best = perm;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

}  // namespace

std::int64_t SpeakerText::total_chars() const {
  std::int64_t n = 0;
  for (const auto& [_, s] : streams) n += static_cast<std::int64_t>(s.size());
  return n;
}

SpeakerText concat_by_speaker(std::span<const TranscriptEntry> entries,
                              const NormalizeOptions& options,
                              std::vector<std::string>* warnings) {
  SpeakerText out;
  if (entries.empty()) return out;
  out.session = entries.front().session;
  std::map<std::string, std::vector<const TranscriptEntry*>> by_speaker;
  for (const auto& e : entries) {
    if (e.session != out.session) {
      throw Error(ErrorKind::kValidation, "concat_by_speaker: mixed sessions '" + out.session +
                                              "' and '" + e.session + "'");
    }
    by_speaker[e.speaker].push_back(&e);
  }
  for (auto& [speaker, list] : by_speaker) {
    std::stable_sort(list.begin(), list.end(),
                     [](const TranscriptEntry* a, const TranscriptEntry* b) {
                       return a->order_key < b->order_key;
                     });
    std::string joined;
    for (std::size_t k = 0; k < list.size(); ++k) {
      if (warnings && k > 0 && list[k]->order_key == list[k - 1]->order_key &&
          list[k]->text != list[k - 1]->text) {
        warnings->push_back("session " + out.session + ", speaker " + speaker +
                            ": two different texts share order key " +
                            std::to_string(list[k]->order_key) + "; kept in input order");
      }
      joined += list[k]->text;
    }
    out.streams.emplace(speaker, normalize_text(joined, options));
  }
  return out;
}

std::map<std::string, SpeakerText> concat_by_session(std::span<const TranscriptEntry> entries,
                                                     const NormalizeOptions& options,
                                                     std::vector<std::string>* warnings) {
  std::map<std::string, std::vector<TranscriptEntry>> grouped;
  for (const auto& e : entries) grouped[e.session].push_back(e);
  std::map<std::string, SpeakerText> out;
  for (const auto& [session, list] : grouped) {
    out.emplace(session, concat_by_speaker(list, options, warnings));
  }
  return out;
}

CpcerResult compute_cpcer(const SpeakerText& ref, const SpeakerText& hyp, CpcerMode mode,
                          int jobs) {
  if (!hyp.streams.empty() && !ref.streams.empty() && ref.session != hyp.session) {
    throw Error(ErrorKind::kValidation,
                "session mismatch: '" + ref.session + "' vs '" + hyp.session + "'");
  }
  const std::int64_t n_ref = ref.total_chars();
  if (n_ref == 0) {
    throw Error(ErrorKind::kUndefined,
                "cpCER undefined: reference of session '" + ref.session + "' has no characters");
  }

  std::vector<const std::string*> ref_ids, hyp_ids;
  std::vector<const CharSeq*> ref_seq, hyp_seq;
  for (const auto& [id, s] : ref.streams) {
    ref_ids.push_back(&id);
    ref_seq.push_back(&s);
  }
  for (const auto& [id, s] : hyp.streams) {
    hyp_ids.push_back(&id);
    hyp_seq.push_back(&s);
  }
  const std::size_t R = ref_ids.size();
  const std::size_t H = hyp_ids.size();
  const std::size_t K = std::max(R, H);
  if (mode == CpcerMode::kBruteForce && K > kBruteForceLimit) {
    throw Error(ErrorKind::kValidation, "brute-force cpCER is limited to " +
                                            std::to_string(kBruteForceLimit) +
                                            " speakers per side");
  }

  // counts for every cell, padding rows/cols included
  std::vector<EditCounts> cell(K * K);
  detail::parallel_for(K * K, jobs, [&](std::size_t idx) {
    const std::size_t r = idx / K;
    const std::size_t h = idx % K;
    EditCounts c;
    if (r < R && h < H) {
      c = edit_counts(*ref_seq[r], *hyp_seq[h]);
    } else if (r < R) {
      c.n = c.d = static_cast<std::int64_t>(ref_seq[r]->size());
    } else if (h < H) {
      c.i = static_cast<std::int64_t>(hyp_seq[h]->size());
    }
    cell[idx] = c;
  });
  CostMatrix cost(K, K);
  for (std::size_t r = 0; r < K; ++r) {
    for (std::size_t h = 0; h < K; ++h) cost.at(r, h) = cell[r * K + h].errors();
  }

  std::vector<std::size_t> row_to_col;
  if (mode == CpcerMode::kAssignment) {
    row_to_col = solve_min_cost_lex(cost).row_to_col;
  } else {
    row_to_col = lex_first_min_permutation(cost);
  }

  CpcerResult result;
  std::vector<char> hyp_used(H, 0);
  for (std::size_t r = 0; r < K; ++r) {
    const std::size_t h = row_to_col[r];
    const EditCounts& c = cell[r * K + h];
    result.counts += c;
    StreamAlignment al;
    al.ref = r < R ? *ref_ids[r] : std::string();
    al.hyp = h < H ? *hyp_ids[h] : std::string();
    al.counts = c;
    result.alignments.push_back(std::move(al));
    if (r < R && h < H) {
      result.assignment.pairs.emplace_back(*ref_ids[r], *hyp_ids[h]);
      hyp_used[h] = 1;
    } else if (r < R) {
      result.assignment.unmatched_ref.push_back(*ref_ids[r]);
    }
  }
  for (std::size_t h = 0; h < H; ++h) {
    if (!hyp_used[h]) result.assignment.unmatched_hyp.push_back(*hyp_ids[h]);
  }
  return result;
}

EditCounts aggregate_cpcer(std::span<const CpcerResult> parts) {
  if (parts.empty()) throw Error(ErrorKind::kValidation, "aggregate_cpcer: no sessions");
  EditCounts sum;
  for (const auto& p : parts) sum += p.counts;
  return sum;
}

}  // namespace avdr
