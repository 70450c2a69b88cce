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

#include "avdr/report.hpp"

#include <algorithm>
#include <cstdio>
#include <map>

#include "avdr/timeline.hpp"
#include "parallel.hpp"

namespace avdr {
namespace {

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::string aligned() const {
    std::vector<std::size_t> width(header.size());
    for (std::size_t c = 0; c < header.size(); ++c) width[c] = header[c].size();
    for (const auto& r : rows) {
      for (std::size_t c = 0; c < r.size(); ++c) width[c] = std::max(width[c], r[c].size());
    }
    std::string out;
    auto emit = [&](const std::vector<std::string>& r) {
      std::string line;
      for (std::size_t c = 0; c < r.size(); ++c) {
        if (c == 0) {
          line += r[c] + std::string(width[c] - r[c].size(), ' ');
        } else {
          line += "  " + std::string(width[c] - r[c].size(), ' ') + r[c];
        }
      }
      while (!line.empty() && line.back() == ' ') line.pop_back();
      out += line + '\n';
    };
    emit(header);
    for (const auto& r : rows) emit(r);
    return out;
  }

  std::string tab_separated() const {
    std::string out;
    auto emit = [&](const std::vector<std::string>& r) {
      for (std::size_t c = 0; c < r.size(); ++c) {
        if (c) out += '\t';
        out += r[c];
      }
      out += '\n';
    };
    emit(header);
    for (const auto& r : rows) emit(r);
    return out;
  }
};

std::string preamble(const std::vector<std::string>& settings,
                     const std::vector<std::string>& ref_only,
                     const std::vector<std::string>& hyp_only) {
  std::string out = "#";
  for (const auto& s : settings) out += " " + s;
  out += '\n';
  auto list = [&](const char* what, const std::vector<std::string>& ids) {
    if (ids.empty()) return;
    out += std::string("# ") + what + ":";
    for (const auto& id : ids) out += " " + id;
    out += '\n';
  };
  list("reference-only sessions (empty hypothesis)", ref_only);
  list("hypothesis-only sessions (not scored)", hyp_only);
  return out;
}

Table der_table(const DerReport& r) {
  Table t;
  t.header = {"session", "FA", "MISS", "SPKERR", "DER", "ref_ms", "fa_ms", "miss_ms", "spkerr_ms"};
  auto add = [&](const DerRow& row) {
    const DerBreakdown& b = row.breakdown;
    t.rows.push_back({row.session, format_percent(b.fa, b.total), format_percent(b.miss, b.total),
                      format_percent(b.spkerr, b.total), format_percent(b.errors(), b.total),
                      std::to_string(b.total), std::to_string(b.fa), std::to_string(b.miss),
                      std::to_string(b.spkerr)});
  };
  for (const auto& row : r.sessions) add(row);
  add(r.total);
  return t;
}

Table cpcer_table(const CpcerReport& r) {
  Table t;
  t.header = {"session", "S", "D", "I", "cpCER", "ref_chars", "sub", "del", "ins"};
  auto add = [&](const CpcerRow& row) {
    const EditCounts& c = row.counts;
    t.rows.push_back({row.session, format_percent(c.s, c.n), format_percent(c.d, c.n),
                      format_percent(c.i, c.n), format_percent(c.errors(), c.n),
                      std::to_string(c.n), std::to_string(c.s), std::to_string(c.d),
                      std::to_string(c.i)});
  };
  for (const auto& row : r.sessions) add(row);
  add(r.total);
  return t;
}

template <typename Map>
void split_sessions(const Map& ref, const Map& hyp, std::vector<std::string>& scored,
                    std::vector<std::string>& ref_only, std::vector<std::string>& hyp_only) {
  bool shared = false;
  for (const auto& [id, _] : ref) {
    scored.push_back(id);
    if (hyp.count(id)) {
      shared = true;
    } else {
      ref_only.push_back(id);
    }
  }
  for (const auto& [id, _] : hyp) {
    if (!ref.count(id)) hyp_only.push_back(id);
  }
  if (!shared) throw Error(ErrorKind::kValidation, "no session appears in both reference and hypothesis");
}

}  // namespace

std::string format_percent(std::int64_t num, std::int64_t den) {
  if (den <= 0) return num > 0 ? "inf" : "0.00";
  // hundredths of a percent, half-up
  const auto hundredths =
      static_cast<std::int64_t>((static_cast<__int128>(num) * 20000 + den) / (2 * static_cast<__int128>(den)));
  char buf[48];
  std::snprintf(buf, sizeof buf, "%lld.%02lld", static_cast<long long>(hundredths / 100),
                static_cast<long long>(hundredths % 100));
  return buf;
}

std::string DerReport::text() const {
  return preamble(settings, ref_only, hyp_only) + der_table(*this).aligned();
}

std::string DerReport::tsv() const {
  return preamble(settings, ref_only, hyp_only) + der_table(*this).tab_separated();
}

std::string CpcerReport::text() const {
  std::string out = preamble(settings, ref_only, hyp_only);
  for (const auto& w : warnings) out += "# warning: " + w + '\n';
  return out + cpcer_table(*this).aligned();
}

std::string CpcerReport::tsv() const {
  std::string out = preamble(settings, ref_only, hyp_only);
  for (const auto& w : warnings) out += "# warning: " + w + '\n';
  return out + cpcer_table(*this).tab_separated();
}

DerReport score_der_corpus(std::span<const SpeakerTurn> ref, std::span<const SpeakerTurn> hyp,
                           MappingMode mode, int jobs) {
  const auto ref_sessions = group_by_session(ref);
  const auto hyp_sessions = group_by_session(hyp);
  DerReport report;
  report.settings = {"metric=DER", "collar=none", "overlap=scored",
                     std::string("mapping=") +
                         (mode == MappingMode::kBruteForce ? "brute-force" : "assignment")};
  std::vector<std::string> ids;
  split_sessions(ref_sessions, hyp_sessions, ids, report.ref_only, report.hyp_only);

  report.sessions.resize(ids.size());
  detail::parallel_for(ids.size(), jobs, [&](std::size_t k) {
    const Diarization& r = ref_sessions.at(ids[k]);
    auto it = hyp_sessions.find(ids[k]);
    const Diarization h = it != hyp_sessions.end() ? it->second : Diarization(ids[k]);
    report.sessions[k] = {ids[k], score_session(r, h, mode)};
  });
  std::vector<DerBreakdown> parts;
  for (const auto& row : report.sessions) parts.push_back(row.breakdown);
  report.total = {"ALL", aggregate_der(parts)};
  return report;
}

std::vector<TranscriptEntry> order_by_turns(std::span<const TranscriptEntry> entries,
                                            std::span<const SpeakerTurn> turns) {
  std::map<std::pair<std::string, std::string>, std::vector<Millis>> starts;
  for (const auto& t : turns) starts[{t.session, t.speaker}].push_back(t.interval.start);
  std::map<std::pair<std::string, std::string>, std::size_t> used;
  std::vector<TranscriptEntry> out(entries.begin(), entries.end());
  for (auto& e : out) {
    const std::pair<std::string, std::string> key{e.session, e.speaker};
    auto it = starts.find(key);
    std::size_t& k = used[key];
    if (it == starts.end() || k >= it->second.size()) {
      throw Error(ErrorKind::kValidation, "utterance " + e.utterance_id() +
                                              " has more transcript lines than reference turns");
    }
    e.order_key = it->second[k++];
  }
  for (const auto& [key, list] : starts) {
    const auto it = used.find(key);
    const std::size_t n = it == used.end() ? 0 : it->second;
    if (n != list.size()) {
      throw Error(ErrorKind::kValidation, "utterance " + key.second + "_" + key.first + " has " +
                                              std::to_string(list.size()) + " reference turns but " +
                                              std::to_string(n) + " transcript lines");
    }
  }
  return out;
}

CpcerReport score_cpcer_corpus(std::span<const TranscriptEntry> ref,
                               std::span<const TranscriptEntry> hyp,
                               const CpcerCorpusOptions& options) {
  CpcerReport report;
  const auto ref_sessions = concat_by_session(ref, options.normalize, &report.warnings);
  const auto hyp_sessions = concat_by_session(hyp, options.normalize, &report.warnings);
  report.settings = {
      "metric=cpCER", "unit=character",
      std::string("strip_punctuation=") + (options.normalize.strip_punctuation ? "yes" : "no"),
      std::string("lowercase_latin=") + (options.normalize.lowercase_latin ? "yes" : "no"),
      std::string("assignment=") +
          (options.mode == CpcerMode::kBruteForce ? "brute-force" : "hungarian")};
  std::vector<std::string> ids;
  split_sessions(ref_sessions, hyp_sessions, ids, report.ref_only, report.hyp_only);

  report.sessions.resize(ids.size());
  detail::parallel_for(ids.size(), options.jobs, [&](std::size_t k) {
    const SpeakerText& r = ref_sessions.at(ids[k]);
    auto it = hyp_sessions.find(ids[k]);
    SpeakerText empty;
    empty.session = ids[k];
    const SpeakerText& h = it != hyp_sessions.end() ? it->second : empty;
    try {
      report.sessions[k] = {ids[k], compute_cpcer(r, h, options.mode).counts};
    } catch (const Error& e) {
      throw Error(e.kind(), "session " + ids[k] + ": " + e.what());
    }
  });
  report.total.session = "ALL";
  for (const auto& row : report.sessions) report.total.counts += row.counts;
  return report;
}

}  // namespace avdr
