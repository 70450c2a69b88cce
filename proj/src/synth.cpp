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

#include "avdr/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <set>

#include "avdr/cpcer.hpp"
#include "avdr/text_metrics.hpp"
#include "text_util.hpp"

namespace avdr {
namespace {

constexpr Millis kGrid = 10;
constexpr std::int64_t kMeanTurnUnits = 300;    // 3 s
constexpr std::int64_t kMeanOverlapUnits = 60;  // 0.6 s
constexpr char32_t kCjkFirst = 0x4E00;
constexpr char32_t kCjkLast = 0x9FA5;

std::string speaker_name(int k, int count) {
  const int width = count < 100 ? 2 : static_cast<int>(std::to_string(count).size());
  char buf[32];
  std::snprintf(buf, sizeof buf, "SPK%0*d", width, k + 1);
  return buf;
}

char32_t random_cjk(Rng& rng) {
  return static_cast<char32_t>(rng.uniform(kCjkFirst, kCjkLast));
}

}  // namespace

std::int64_t Rng::uniform(std::int64_t lo, std::int64_t hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  if (span == 0) return lo + static_cast<std::int64_t>(next());
  const std::uint64_t reject_below = (0 - span) % span;
  std::uint64_t x = next();
  while (x < reject_below) x = next();
  return lo + static_cast<std::int64_t>(x % span);
}

std::vector<std::int64_t> allocate_units(std::int64_t total, std::span<const std::int64_t> weights,
                                         std::span<const std::int64_t> caps, Rng& rng) {
  const std::size_t n = caps.size();
  std::vector<std::int64_t> out(n, 0);
  if (total <= 0) return out;
  const std::int64_t capacity = std::accumulate(caps.begin(), caps.end(), std::int64_t{0});
  if (capacity < total) {
    throw Error(ErrorKind::kValidation, "cannot place " + std::to_string(total) +
                                            " units; only " + std::to_string(capacity) +
                                            " available");
  }
  __int128 weight_sum = 0;
  for (std::size_t k = 0; k < n; ++k) {
    if (caps[k] > 0) weight_sum += weights[k];
  }
  std::int64_t placed = 0;
  if (weight_sum > 0) {
    for (std::size_t k = 0; k < n; ++k) {
      if (caps[k] <= 0) continue;
      const auto share = static_cast<std::int64_t>(static_cast<__int128>(total) * weights[k] /
                                                   weight_sum);
      out[k] = std::min(caps[k], share);
      placed += out[k];
    }
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  rng.shuffle(order);
  while (placed < total) {
    for (std::size_t k : order) {
      if (placed == total) break;
      if (out[k] < caps[k]) {
        ++out[k];
        ++placed;
      }
    }
  }
  return out;
}

SynthSession generate_session(const SessionParams& p) {
  if (p.speakers < 1) throw Error(ErrorKind::kValidation, "need at least one speaker");
  if (p.duration_ms < kGrid) throw Error(ErrorKind::kValidation, "duration must be >= 10 ms");
  if (!(p.overlap_ratio >= 0.0 && p.overlap_ratio < 1.0) ||
      !(p.silence_ratio >= 0.0 && p.silence_ratio < 1.0)) {
    throw Error(ErrorKind::kValidation, "ratios must lie in [0, 1)");
  }
  if (p.overlap_ratio + p.silence_ratio >= 1.0) {
    throw Error(ErrorKind::kValidation, "overlap + silence ratios must be below 1");
  }
  if (p.speakers == 1 && p.overlap_ratio > 0.0) {
    throw Error(ErrorKind::kValidation, "a single speaker cannot overlap");
  }
  if (!(p.chars_per_second > 0.0)) {
    throw Error(ErrorKind::kValidation, "chars_per_second must be positive");
  }

  Rng rng(p.seed);
  const std::int64_t units = p.duration_ms / kGrid;
  const std::int64_t silence_target = std::llround(p.silence_ratio * static_cast<double>(units));
  const std::int64_t overlap_target =
      p.speakers > 1 ? std::llround(p.overlap_ratio * static_cast<double>(units)) : 0;
  const std::int64_t covered_target = units - silence_target;
  if (covered_target < 1) throw Error(ErrorKind::kValidation, "no room for speech");

  const std::int64_t speech_units = covered_target + overlap_target;
  std::int64_t turns = std::max<std::int64_t>(
      1, std::llround(static_cast<double>(speech_units) / kMeanTurnUnits));
  turns = std::min(turns, speech_units);
  if (p.speakers == 1) turns = std::min(turns, silence_target + 1);

  std::vector<std::int64_t> len_weights(static_cast<std::size_t>(turns));
  for (auto& w : len_weights) w = rng.uniform(150, 450);
  std::vector<std::int64_t> len_caps(len_weights.size(), speech_units);
  std::vector<std::int64_t> lens = allocate_units(speech_units, len_weights, len_caps, rng);
  std::erase(lens, 0);
  const std::size_t K = lens.size();

  // overlaps at a random subset of junctions; each capped at 40% of both
  // neighbours so a turn is never swallowed by the two overlaps around it
  std::vector<std::int64_t> ov(K > 0 ? K - 1 : 0, 0);
  std::vector<char> is_ov(ov.size(), 0);
  if (overlap_target > 0 && K > 1) {
    const auto n_ov = std::clamp<std::int64_t>(
        std::llround(static_cast<double>(overlap_target) / kMeanOverlapUnits), 1,
        static_cast<std::int64_t>(K - 1));
    std::vector<std::size_t> junctions(K - 1);
    std::iota(junctions.begin(), junctions.end(), 0);
    rng.shuffle(junctions);
    std::vector<std::int64_t> weights(K - 1, 0), caps(K - 1, 0);
    for (std::int64_t k = 0; k < n_ov; ++k) {
      const auto j = junctions[static_cast<std::size_t>(k)];
      is_ov[j] = 1;
      weights[j] = rng.uniform(1, 100);
      caps[j] = std::min(lens[j], lens[j + 1]) * 2 / 5;
    }
    const std::int64_t cap_sum = std::accumulate(caps.begin(), caps.end(), std::int64_t{0});
    ov = allocate_units(std::min(overlap_target, cap_sum), weights, caps, rng);
  }

  // capped overlap leaves extra covered time; shrink turns to keep the span
  const std::int64_t required_gaps = p.speakers == 1 ? static_cast<std::int64_t>(ov.size()) : 0;
  std::int64_t silence = units - (std::accumulate(lens.begin(), lens.end(), std::int64_t{0}) -
                                  std::accumulate(ov.begin(), ov.end(), std::int64_t{0}));
  if (silence < required_gaps) {
    std::vector<std::int64_t> shrink_caps(K);
    for (std::size_t k = 0; k < K; ++k) {
      const std::int64_t left = k > 0 ? ov[k - 1] : 0;
      const std::int64_t right = k + 1 < K ? ov[k] : 0;
      const std::int64_t floor_len = std::max<std::int64_t>(1, (std::max(left, right) * 5 + 1) / 2);
      shrink_caps[k] = std::max<std::int64_t>(0, lens[k] - floor_len);
    }
    const auto cut = allocate_units(required_gaps - silence, lens, shrink_caps, rng);
    for (std::size_t k = 0; k < K; ++k) lens[k] -= cut[k];
    silence = required_gaps;
  }

  // silence slots: leading, trailing, then every non-overlap junction
  std::vector<std::size_t> gap_junctions;
  for (std::size_t j = 0; j < ov.size(); ++j) {
    if (!is_ov[j]) gap_junctions.push_back(j);
  }
  const std::int64_t min_gap = p.speakers == 1 ? 1 : 0;
  std::vector<std::int64_t> slot_weights(gap_junctions.size() + 2);
  for (auto& w : slot_weights) w = rng.uniform(1, 100);
  std::vector<std::int64_t> slot_caps(slot_weights.size(), silence);
  const auto spread = allocate_units(
      silence - min_gap * static_cast<std::int64_t>(gap_junctions.size()), slot_weights,
      slot_caps, rng);
  std::vector<std::int64_t> gap(ov.size(), 0);
  for (std::size_t g = 0; g < gap_junctions.size(); ++g) {
    gap[gap_junctions[g]] = min_gap + spread[g + 2];
  }

  SynthSession out;
  out.reference = Diarization(p.session);
  std::int64_t t = spread.empty() ? 0 : spread[0];
  int prev = -1;
  for (std::size_t k = 0; k < K; ++k) {
    int spk = 0;
    if (p.speakers > 1) {
      if (prev < 0) {
        spk = static_cast<int>(rng.uniform(0, p.speakers - 1));
      } else {
        spk = static_cast<int>(rng.uniform(0, p.speakers - 2));
        if (spk >= prev) ++spk;
      }
    }
    prev = spk;
    const TimeInterval iv{t * kGrid, lens[k] * kGrid};
    const std::string name = speaker_name(spk, p.speakers);

    const auto n_chars = std::max<std::int64_t>(
        1, std::llround(static_cast<double>(iv.dur) / 1000.0 * p.chars_per_second));
    std::u32string text;
    for (std::int64_t c = 0; c < n_chars; ++c) {
      char32_t ch = random_cjk(rng);
      while (!text.empty() && ch == text.back()) ch = random_cjk(rng);
      text.push_back(ch);
    }

    out.turns.push_back({p.session, "1", name, iv});
    out.transcript.push_back({name, p.session, encode_utf8(text), iv.start});
    out.reference.add(name, iv);
    if (k + 1 < K) t += lens[k] + (is_ov[k] ? -ov[k] : gap[k]);
  }

  const Millis span_ms = units * kGrid;
  const Diarization* inputs[] = {&out.reference};
  Millis overlapped = 0, voiced = 0;
  for (const auto& r : tile(inputs).regions) {
    if (r.active[0].size() >= 2) overlapped += r.dur();
    if (!r.active[0].empty()) voiced += r.dur();
  }
  out.realized_overlap = static_cast<double>(overlapped) / static_cast<double>(span_ms);
  out.realized_silence = static_cast<double>(span_ms - voiced) / static_cast<double>(span_ms);
  return out;
}

CorruptedDiarization corrupt_diarization(const Diarization& ref, const DiarizationInjection& inject,
                                         std::uint64_t seed) {
  for (Millis amount : {inject.fa, inject.miss, inject.spkerr}) {
    if (amount < 0 || amount % kGrid != 0) {
      throw Error(ErrorKind::kValidation, "injected durations must be non-negative multiples of 10 ms");
    }
  }
  Rng rng(seed);
  const Diarization* inputs[] = {&ref};
  const Tiling tiling = tile(inputs);
  const auto& ids = tiling.speakers[0];

  struct Slot {
    Millis start;
    Millis end;
    std::uint32_t speaker;
  };
  std::vector<Slot> silent, single;
  if (!tiling.regions.empty() && tiling.regions.front().start > 0) {
    silent.push_back({0, tiling.regions.front().start, 0});
  }
  for (const auto& r : tiling.regions) {
    if (r.active[0].empty()) silent.push_back({r.start, r.end, 0});
    if (r.active[0].size() == 1) single.push_back({r.start, r.end, r.active[0][0]});
  }

  std::vector<std::int64_t> fa_caps, single_caps;
  for (const auto& s : silent) fa_caps.push_back(std::max<Millis>(0, (s.end - s.start) / kGrid - 2));
  for (const auto& s : single) single_caps.push_back((s.end - s.start) / kGrid);

  auto place = [&](const char* what, Millis amount, std::span<const std::int64_t> caps) {
    try {
      return allocate_units(amount / kGrid, caps, caps, rng);
    } catch (const Error& e) {
      throw Error(ErrorKind::kValidation, std::string("cannot inject ") + what + ": " + e.what());
    }
  };
  if (inject.spkerr > 0 && ids.size() < 2) {
    throw Error(ErrorKind::kValidation, "speaker errors need at least two reference speakers");
  }
  const auto fa_units = place("FA", inject.fa, fa_caps);
  const auto miss_units = place("MISS", inject.miss, single_caps);
  std::vector<std::int64_t> left(single_caps.size());
  for (std::size_t k = 0; k < left.size(); ++k) left[k] = single_caps[k] - miss_units[k];
  const auto spk_units = place("SPKERR", inject.spkerr, left);

  CorruptedDiarization out;
  out.hypothesis = ref;
  out.ledger.totals = inject;
  for (std::size_t k = 0; k < single.size(); ++k) {
    const std::int64_t m = miss_units[k];
    const std::int64_t e = spk_units[k];
    if (m + e == 0) continue;
    const Slot& s = single[k];
    const std::string& who = ids[s.speaker];
    const std::int64_t offset = rng.uniform(0, single_caps[k] - m - e);
    const Millis miss_start = s.start + offset * kGrid;
    if (m > 0) {
      const TimeInterval piece{miss_start, m * kGrid};
      out.hypothesis.remove(who, piece);
      out.ledger.pieces.push_back({"MISS", who, "", piece});
    }
    if (e > 0) {
      const TimeInterval piece{miss_start + m * kGrid, e * kGrid};
      auto other = static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(ids.size()) - 2));
      if (other >= s.speaker) ++other;
      out.hypothesis.remove(who, piece);
      out.hypothesis.add(ids[other], piece);
      out.ledger.pieces.push_back({"SPKERR", who, ids[other], piece});
    }
  }
  for (std::size_t k = 0; k < silent.size(); ++k) {
    const std::int64_t f = fa_units[k];
    if (f == 0) continue;
    const std::int64_t offset = 1 + rng.uniform(0, fa_caps[k] - f);
    const TimeInterval piece{silent[k].start + offset * kGrid, f * kGrid};
    const std::string& label =
        ids[static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(ids.size()) - 1))];
    out.hypothesis.add(label, piece);
    out.ledger.pieces.push_back({"FA", label, "", piece});
  }

  // identity must stay the unique optimal map: every ref speaker overlaps its
  // own label strictly more than any other label
  const OverlapMatrix w = pairwise_overlap(ref, out.hypothesis);
  for (std::size_t r = 0; r < w.rows(); ++r) {
    const auto self = static_cast<std::size_t>(
        std::lower_bound(w.hyp_ids().begin(), w.hyp_ids().end(), w.ref_ids()[r]) -
        w.hyp_ids().begin());
    const Millis diag = self < w.cols() && w.hyp_ids()[self] == w.ref_ids()[r] ? w.at(r, self) : 0;
    for (std::size_t h = 0; h < w.cols(); ++h) {
      if (h == self) continue;
      if (w.at(r, h) >= diag && (diag > 0 || w.at(r, h) > 0)) {
        throw Error(ErrorKind::kValidation,
                    "injection would change the optimal speaker mapping for " + w.ref_ids()[r]);
      }
    }
  }
  return out;
}

CorruptedText corrupt_text(std::span<const TranscriptEntry> ref, const TextInjection& inject,
                           std::uint64_t seed) {
  if (inject.s < 0 || inject.d < 0 || inject.i < 0) {
    throw Error(ErrorKind::kValidation, "edit counts must be non-negative");
  }
  Rng rng(seed);

  // streams in (session, speaker) order; entries by order_key, stable
  struct Stream {
    std::string session;
    std::vector<std::size_t> entries;
    std::vector<std::size_t> owner;  // entry index per character
    CharSeq chars;
  };
  std::map<std::pair<std::string, std::string>, std::vector<std::size_t>> grouped;
  for (std::size_t e = 0; e < ref.size(); ++e) grouped[{ref[e].session, ref[e].speaker}].push_back(e);
  std::vector<Stream> streams;
  std::map<std::string, std::set<char32_t>> used_chars;
  for (auto& [key, list] : grouped) {
    std::stable_sort(list.begin(), list.end(), [&](std::size_t a, std::size_t b) {
      return ref[a].order_key < ref[b].order_key;
    });
    Stream s;
    s.session = key.first;
    s.entries = list;
    for (std::size_t e : list) {
      for (char32_t c : normalize_text(ref[e].text)) {
        s.chars.push_back(c);
        s.owner.push_back(e);
        used_chars[s.session].insert(c);
      }
    }
    streams.push_back(std::move(s));
  }

  std::int64_t total = 0;
  std::vector<std::int64_t> lens;
  for (const auto& s : streams) {
    lens.push_back(static_cast<std::int64_t>(s.chars.size()));
    total += lens.back();
  }
  if (inject.s + inject.d > total) {
    throw Error(ErrorKind::kValidation, "s + d exceeds the " + std::to_string(total) +
                                            " reference characters");
  }
  if (inject.d > 0 && inject.i > 0 && streams.size() < 2) {
    throw Error(ErrorKind::kValidation,
                "deletions and insertions together need at least two speaker streams");
  }
  const std::size_t n = streams.size();

  // a stream takes insertions or deletions, never both
  std::vector<char> takes_insertions(n, 0);
  if (inject.i > 0) {
    if (inject.d == 0) {
      std::fill(takes_insertions.begin(), takes_insertions.end(), 1);
    } else {
      takes_insertions[static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(n) - 1))] = 1;
    }
  }

  auto place = [&](const char* what, std::int64_t amount, std::span<const std::int64_t> weights,
                   std::span<const std::int64_t> caps) {
    try {
      return allocate_units(amount, weights, caps, rng);
    } catch (const Error& e) {
      throw Error(ErrorKind::kValidation, std::string("cannot inject ") + what + ": " + e.what());
    }
  };
  const auto subs = place("substitutions", inject.s, lens, lens);
  std::vector<std::int64_t> del_caps(n, 0), ins_weights(n, 0), ins_caps(n, 0);
  for (std::size_t k = 0; k < n; ++k) {
    if (takes_insertions[k]) {
      ins_weights[k] = lens[k] + 1;
      ins_caps[k] = inject.i;
    } else {
      del_caps[k] = lens[k] - subs[k];
    }
  }
  const auto dels = place("deletions", inject.d, del_caps, del_caps);
  const auto inss = place("insertions", inject.i, ins_weights, ins_caps);

  CorruptedText out;
  out.ledger = inject;
  out.hypothesis.assign(ref.begin(), ref.end());
  std::vector<std::u32string> texts(ref.size());

  for (std::size_t k = 0; k < n; ++k) {
    const Stream& s = streams[k];
    const std::size_t L = s.chars.size();
    const auto& forbidden = used_chars[s.session];
    auto fresh = [&] {
      char32_t c = random_cjk(rng);
      while (forbidden.count(c)) c = random_cjk(rng);
      return c;
    };

    std::vector<std::size_t> positions(L);
    std::iota(positions.begin(), positions.end(), 0);
    rng.shuffle(positions);
    std::vector<char> action(L, 0);  // 1 = substitute, 2 = delete
    for (std::int64_t q = 0; q < subs[k]; ++q) action[positions[static_cast<std::size_t>(q)]] = 1;
    for (std::int64_t q = 0; q < dels[k]; ++q) {
      action[positions[static_cast<std::size_t>(subs[k] + q)]] = 2;
    }
    std::vector<std::int64_t> inserts_before(L + 1, 0);
    for (std::int64_t q = 0; q < inss[k]; ++q) {
      ++inserts_before[static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(L)))];
    }

    for (std::size_t p = 0; p <= L; ++p) {
      const std::size_t owner = p < L ? s.owner[p] : (L > 0 ? s.owner[L - 1] : s.entries.front());
      for (std::int64_t q = 0; q < inserts_before[p]; ++q) texts[owner].push_back(fresh());
      if (p == L) break;
      if (action[p] == 1) {
        texts[owner].push_back(fresh());
      } else if (action[p] == 0) {
        texts[owner].push_back(s.chars[p]);
      }
    }
  }
  for (std::size_t e = 0; e < ref.size(); ++e) out.hypothesis[e].text = encode_utf8(texts[e]);

  // each stream must stay strictly cheapest against its own reference
  const auto ref_text = concat_by_session(ref);
  const auto hyp_text = concat_by_session(out.hypothesis);
  for (const auto& [session, rt] : ref_text) {
    const SpeakerText& ht = hyp_text.at(session);
    for (const auto& [rid, rseq] : rt.streams) {
      const std::int64_t own = edit_counts(rseq, ht.streams.at(rid)).errors();
      for (const auto& [hid, hseq] : ht.streams) {
        if (hid != rid && edit_counts(rseq, hseq).errors() <= own) {
          throw Error(ErrorKind::kValidation, "edits too dense: stream " + rid + " of session " +
                                                  session + " would not be matched to itself");
        }
      }
    }
  }
  return out;
}

std::string emit_ledger(const DiarizationInjection& diarization, const TextInjection& text) {
  std::string out;
  auto line = [&](const char* kind, std::int64_t v) {
    out += kind;
    out += '\t';
    out += std::to_string(v);
    out += '\n';
  };
  line("FA", diarization.fa);
  line("MISS", diarization.miss);
  line("SPKERR", diarization.spkerr);
  line("S", text.s);
  line("D", text.d);
  line("I", text.i);
  return out;
}

std::map<std::string, std::int64_t> parse_ledger(std::string_view text) {
  std::map<std::string, std::int64_t> out;
  std::size_t line_no = 0;
  for (std::string_view line : detail::split_lines(text)) {
    ++line_no;
    const auto fields = detail::split_fields(line);
    if (fields.empty()) continue;
    if (fields.size() != 2) throw Error(ErrorKind::kParse, "expected '<kind> <amount>'", line_no);
    try {
      out[std::string(fields[0])] = std::stoll(std::string(fields[1]));
    } catch (const std::exception&) {
      throw Error(ErrorKind::kParse, "invalid amount '" + std::string(fields[1]) + "'", line_no);
    }
  }
  return out;
}

}  // namespace avdr
