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

#include "avdr/postproc.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <set>
#include <tuple>

#include "text_util.hpp"

namespace avdr {
namespace {

Millis parse_int_field(std::string_view field, std::size_t line, const char* what) {
  Millis v = 0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc() || ptr != field.data() + field.size()) {
    throw Error(ErrorKind::kParse,
                std::string("invalid ") + what + " '" + std::string(field) + "'", line);
  }
  return v;
}

bool manifest_less(const ManifestRow& a, const ManifestRow& b) {
  return std::tie(a.session, a.interval.start, a.speaker, a.interval.dur) <
         std::tie(b.session, b.interval.start, b.speaker, b.interval.dur);
}

std::string pad8(Millis v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%08lld", static_cast<long long>(v));
  return buf;
}

}  // namespace

ProbabilityMatrix parse_probability_matrix(std::string_view text) {
  ProbabilityMatrix m;
  bool have_header = false;
  std::size_t line_no = 0;
  for (std::string_view line : detail::split_lines(text)) {
    ++line_no;
    const auto fields = detail::split_fields(line);
    if (fields.empty()) continue;
    if (!have_header) {
      if (fields.size() < 3) {
        throw Error(ErrorKind::kParse, "header must be 'session frame_ms spk1 [spk2 ...]'",
                    line_no);
      }
      m.session = std::string(fields[0]);
      m.frame_ms = parse_int_field(fields[1], line_no, "frame_ms");
      if (m.frame_ms <= 0) throw Error(ErrorKind::kValidation, "frame_ms must be positive", line_no);
      std::set<std::string_view> seen;
      for (std::size_t k = 2; k < fields.size(); ++k) {
        if (!seen.insert(fields[k]).second) {
          throw Error(ErrorKind::kValidation,
                      "duplicate speaker '" + std::string(fields[k]) + "'", line_no);
        }
        m.speakers.emplace_back(fields[k]);
      }
      have_header = true;
      continue;
    }
    if (fields.size() != m.speakers.size()) {
      throw Error(ErrorKind::kParse, "expected " + std::to_string(m.speakers.size()) +
                                         " probabilities, got " + std::to_string(fields.size()),
                  line_no);
    }
    for (auto f : fields) {
      double v = 0.0;
      const auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), v);
      if (ec != std::errc() || ptr != f.data() + f.size()) {
        throw Error(ErrorKind::kParse, "invalid probability '" + std::string(f) + "'", line_no);
      }
      if (!(v >= 0.0 && v <= 1.0)) {
        throw Error(ErrorKind::kValidation,
                    "probability '" + std::string(f) + "' outside [0, 1]", line_no);
      }
      m.values.push_back(v);
    }
  }
  if (!have_header) throw Error(ErrorKind::kParse, "empty probability matrix file");
  return m;
}

std::string emit_probability_matrix(const ProbabilityMatrix& m) {
  std::string out = m.session + " " + std::to_string(m.frame_ms);
  for (const auto& s : m.speakers) out += " " + s;
  out += '\n';
  char buf[32];
  for (std::size_t f = 0; f < m.frames(); ++f) {
    for (std::size_t s = 0; s < m.speakers.size(); ++s) {
      std::snprintf(buf, sizeof buf, "%.6g", m.at(f, s));
      if (s) out += ' ';
      out += buf;
    }
    out += '\n';
  }
  return out;
}

Diarization binarize_probs(const ProbabilityMatrix& probs, double threshold) {
  if (!(threshold > 0.0 && threshold < 1.0)) {
    throw Error(ErrorKind::kValidation, "threshold must lie strictly between 0 and 1");
  }
  Diarization out(probs.session);
  const std::size_t frames = probs.frames();
  for (std::size_t s = 0; s < probs.speakers.size(); ++s) {
    std::size_t f = 0;
    while (f < frames) {
      if (probs.at(f, s) < threshold) {
        ++f;
        continue;
      }
      const std::size_t run_start = f;
      while (f < frames && probs.at(f, s) >= threshold) ++f;
      const auto start = static_cast<Millis>(run_start) * probs.frame_ms;
      out.add(probs.speakers[s], {start, static_cast<Millis>(f - run_start) * probs.frame_ms});
    }
  }
  return out;
}

Diarization smooth_segments(const Diarization& d, const SmoothingOptions& options) {
  Diarization out(d.session());
  for (const auto& [speaker, list] : d.speakers()) {
    std::vector<TimeInterval> merged;
    for (const auto& iv : list) {
      if (!merged.empty() && iv.start - merged.back().end() < options.max_gap_ms) {
        merged.back().dur = iv.end() - merged.back().start;
      } else {
        merged.push_back(iv);
      }
    }
    for (const auto& iv : merged) {
      if (iv.dur >= options.min_dur_ms) out.add(speaker, iv);
    }
  }
  return out;
}

std::string ManifestRow::segment_id() const {
  return speaker + "_" + session + "-" + pad8(interval.start) + "-" + pad8(interval.end());
}

SegmentManifest build_manifest(const Diarization& d) {
  return build_manifest(std::span<const Diarization>(&d, 1));
}

SegmentManifest build_manifest(std::span<const Diarization> sessions) {
  SegmentManifest m;
  for (const auto& d : sessions) {
    for (const auto& [speaker, list] : d.speakers()) {
      for (const auto& iv : list) m.rows.push_back({d.session(), speaker, iv});
    }
  }
  std::sort(m.rows.begin(), m.rows.end(), manifest_less);
  return m;
}

std::map<std::string, Diarization> manifest_to_diarizations(const SegmentManifest& manifest) {
  std::map<std::string, Diarization> out;
  for (const auto& row : manifest.rows) {
    out.try_emplace(row.session, row.session).first->second.add(row.speaker, row.interval);
  }
  return out;
}

std::string emit_manifest(const SegmentManifest& manifest) {
  std::string out = "segment_id\tsession\tspeaker\tstart_ms\tdur_ms\n";
  for (const auto& r : manifest.rows) {
    out += r.segment_id();
    out += '\t';
    out += r.session;
    out += '\t';
    out += r.speaker;
    out += '\t';
    out += std::to_string(r.interval.start);
    out += '\t';
    out += std::to_string(r.interval.dur);
    out += '\n';
  }
  return out;
}

SegmentManifest parse_manifest(std::string_view text) {
  SegmentManifest m;
  std::size_t line_no = 0;
  bool header = false;
  for (std::string_view line : detail::split_lines(text)) {
    ++line_no;
    const auto fields = detail::split_fields(line);
    if (fields.empty()) continue;
    if (!header) {
      header = true;
      if (fields[0] == "segment_id") continue;
    }
    if (fields.size() != 5) {
      throw Error(ErrorKind::kParse, "expected 5 fields, got " + std::to_string(fields.size()),
                  line_no);
    }
    ManifestRow row;
    row.session = std::string(fields[1]);
    row.speaker = std::string(fields[2]);
    row.interval.start = parse_int_field(fields[3], line_no, "start_ms");
    row.interval.dur = parse_int_field(fields[4], line_no, "dur_ms");
    if (row.interval.start < 0 || row.interval.dur <= 0) {
      throw Error(ErrorKind::kValidation, "start must be >= 0 and duration > 0", line_no);
    }
    if (row.segment_id() != fields[0]) {
      throw Error(ErrorKind::kValidation, "segment id '" + std::string(fields[0]) +
                                              "' does not match its row (expected '" +
                                              row.segment_id() + "')",
                  line_no);
    }
    if (!m.rows.empty() && manifest_less(row, m.rows.back())) {
      throw Error(ErrorKind::kValidation, "rows not sorted by (session, start, speaker)", line_no);
    }
    m.rows.push_back(std::move(row));
  }
  return m;
}

std::map<std::string, std::string> parse_segment_texts(std::string_view text) {
  std::map<std::string, std::string> out;
  std::size_t line_no = 0;
  for (std::string_view line : detail::split_lines(text)) {
    ++line_no;
    if (detail::is_blank(line)) continue;
    const auto id_end = line.find_first_of(" \t");
    const std::string id(line.substr(0, id_end));
    std::string body;
    if (id_end != std::string_view::npos) {
      const auto start = line.find_first_not_of(" \t", id_end);
      if (start != std::string_view::npos) body = std::string(line.substr(start));
    }
    if (id.empty()) throw Error(ErrorKind::kParse, "missing segment id", line_no);
    if (!out.emplace(id, std::move(body)).second) {
      throw Error(ErrorKind::kValidation, "duplicate segment id '" + id + "'", line_no);
    }
  }
  return out;
}

std::vector<TranscriptEntry> assemble_transcript(const SegmentManifest& manifest,
                                                 const std::map<std::string, std::string>& texts) {
  std::map<std::string, const ManifestRow*> by_id;
  for (const auto& row : manifest.rows) by_id.emplace(row.segment_id(), &row);
  for (const auto& [id, _] : texts) {
    if (!by_id.count(id)) {
      throw Error(ErrorKind::kValidation, "text given for segment '" + id +
                                              "' which is not in the manifest");
    }
  }

  std::map<std::pair<std::string, std::string>, std::vector<const ManifestRow*>> grouped;
  for (const auto& row : manifest.rows) grouped[{row.session, row.speaker}].push_back(&row);

  std::vector<TranscriptEntry> out;
  for (auto& [key, rows] : grouped) {
    std::stable_sort(rows.begin(), rows.end(), [](const ManifestRow* a, const ManifestRow* b) {
      return a->interval.start < b->interval.start;
    });
    TranscriptEntry e;
    e.session = key.first;
    e.speaker = key.second;
    for (const ManifestRow* r : rows) {
      auto it = texts.find(r->segment_id());
      if (it != texts.end()) e.text += it->second;
    }
    e.order_key = static_cast<std::int64_t>(out.size());
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace avdr
