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

#include "avdr/formats.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <sstream>
#include <tuple>

#include "text_util.hpp"

namespace avdr {

Millis parse_seconds(std::string_view field, std::size_t line) {
  auto bad = [&](const char* why) {
    return Error(ErrorKind::kParse,
                 "invalid time '" + std::string(field) + "': " + why, line);
  };
  bool negative = false;
  std::string_view s = field;
  if (!s.empty() && s.front() == '-') {
    negative = true;
    s.remove_prefix(1);
  }
  const auto dot = s.find('.');
  const std::string_view whole = s.substr(0, dot);
  const std::string_view frac =
      dot == std::string_view::npos ? std::string_view{} : s.substr(dot + 1);
  if (whole.empty()) throw bad("missing integer part");
  if (dot != std::string_view::npos && frac.empty()) throw bad("missing fractional digits");
  if (frac.size() > 3) throw bad("more than 3 fractional digits");
  constexpr Millis kMax = std::numeric_limits<Millis>::max() / 4;
  Millis ms = 0;
  for (char c : whole) {
    if (c < '0' || c > '9') throw bad("not a decimal number");
    if (ms > (kMax - 9) / 10) throw bad("out of range");
    ms = ms * 10 + (c - '0');
  }
  if (ms > kMax / 1000) throw bad("out of range");
  ms *= 1000;
  Millis scale = 100;
  for (char c : frac) {
    if (c < '0' || c > '9') throw bad("not a decimal number");
    ms += (c - '0') * scale;
    scale /= 10;
  }
  return negative ? -ms : ms;
}

std::string format_seconds(Millis ms) {
  // centiseconds, half-up on the dropped digit
  const Millis cs = (ms + 5) / 10;
  std::string out = std::to_string(cs / 100);
  out += '.';
  const Millis frac = cs % 100;
  if (frac < 10) out += '0';
  out += std::to_string(frac);
  return out;
}

std::vector<SpeakerTurn> parse_rttm(std::string_view text, std::vector<std::string>* warnings) {
  std::vector<SpeakerTurn> turns;
  std::size_t line_no = 0;
  for (std::string_view line : detail::split_lines(text)) {
    ++line_no;
    const auto fields = detail::split_fields(line);
    if (fields.empty() || fields.front().starts_with(";;")) continue;
    if (fields.size() < 9) {
      throw Error(ErrorKind::kParse,
                  "expected at least 9 fields, got " + std::to_string(fields.size()), line_no);
    }
    if (fields[0] != "SPEAKER") {
      if (warnings) {
        warnings->push_back("line " + std::to_string(line_no) + ": skipped record type '" +
                            std::string(fields[0]) + "'");
      }
      continue;
    }
    SpeakerTurn turn;
    turn.session = std::string(fields[1]);
    turn.channel = std::string(fields[2]);
    turn.interval.start = parse_seconds(fields[3], line_no);
    turn.interval.dur = parse_seconds(fields[4], line_no);
    turn.speaker = std::string(fields[7]);
    if (turn.interval.start < 0) {
      throw Error(ErrorKind::kValidation, "negative start time", line_no);
    }
    if (turn.interval.dur <= 0) {
      throw Error(ErrorKind::kValidation, "duration must be positive", line_no);
    }
    if (turn.interval.start > std::numeric_limits<Millis>::max() - turn.interval.dur) {
      throw Error(ErrorKind::kValidation, "start + duration overflows", line_no);
    }
    turns.push_back(std::move(turn));
  }
  return turns;
}

std::string emit_rttm(std::span<const SpeakerTurn> turns) {
  std::vector<const SpeakerTurn*> order;
  order.reserve(turns.size());
  for (const auto& t : turns) order.push_back(&t);
  std::sort(order.begin(), order.end(), [](const SpeakerTurn* a, const SpeakerTurn* b) {
    return std::tie(a->session, a->interval.start, a->speaker, a->interval.dur, a->channel) <
           std::tie(b->session, b->interval.start, b->speaker, b->interval.dur, b->channel);
  });
  std::string out;
  for (const SpeakerTurn* t : order) {
    out += "SPEAKER ";
    out += t->session;
    out += ' ';
    out += t->channel;
    out += ' ';
    out += format_seconds(t->interval.start);
    out += ' ';
    out += format_seconds(t->interval.dur);
    out += " <NA> <NA> ";
    out += t->speaker;
    out += " <NA> <NA>\n";
  }
  return out;
}

std::pair<std::string, std::string> split_utterance_id(std::string_view id, std::size_t line) {
  const auto pos = id.rfind('_');
  if (pos == std::string_view::npos) {
    throw Error(ErrorKind::kParse, "utterance id '" + std::string(id) + "' has no underscore",
                line);
  }
  if (pos == 0 || pos + 1 == id.size()) {
    throw Error(ErrorKind::kParse,
                "utterance id '" + std::string(id) + "' has an empty speaker or session", line);
  }
  return {std::string(id.substr(0, pos)), std::string(id.substr(pos + 1))};
}

std::vector<TranscriptEntry> parse_transcript(std::string_view text) {
  std::vector<TranscriptEntry> entries;
  std::size_t line_no = 0;
  for (std::string_view line : detail::split_lines(text)) {
    ++line_no;
    if (detail::is_blank(line)) continue;
    const auto id_end = line.find_first_of(" \t");
    if (id_end == std::string_view::npos) {
      throw Error(ErrorKind::kParse, "missing separator between utterance id and text", line_no);
    }
    if (id_end == 0) {
      throw Error(ErrorKind::kParse, "line starts with whitespace; expected utterance id",
                  line_no);
    }
    const auto text_start = line.find_first_not_of(" \t", id_end);
    auto [speaker, session] = split_utterance_id(line.substr(0, id_end), line_no);
    TranscriptEntry entry;
    entry.speaker = std::move(speaker);
    entry.session = std::move(session);
    if (text_start != std::string_view::npos) entry.text = std::string(line.substr(text_start));
    entry.order_key = static_cast<std::int64_t>(entries.size());
    entries.push_back(std::move(entry));
  }
  return entries;
}

std::string emit_transcript(std::span<const TranscriptEntry> entries) {
  std::string out;
  for (const auto& e : entries) {
    out += e.utterance_id();
    out += ' ';
    out += e.text;
    out += '\n';
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIo, "cannot open '" + path + "' for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw Error(ErrorKind::kIo, "read failed for '" + path + "'");
  return std::move(buf).str();
}

void write_file(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::kIo, "cannot open '" + path + "' for writing");
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw Error(ErrorKind::kIo, "write failed for '" + path + "'");
}

}  // namespace avdr
