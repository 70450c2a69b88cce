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

#include <sstream>

#include "avdr/formats.hpp"
#include "avdr/report.hpp"
#include "avdr/synth.hpp"
#include "doctest.h"

using namespace avdr;

namespace {

// Numeric cells of the table part (lines not starting with '#').
std::vector<std::vector<std::string>> cells(const std::string& text) {
  std::vector<std::vector<std::string>> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::vector<std::string> row;
    std::string cell;
    while (ls >> cell) row.push_back(cell);
    out.push_back(row);
  }
  return out;
}

}  // namespace

TEST_SUITE("report") {
  TEST_CASE("percent formatting rounds half-up from exact ratios") {
    CHECK(format_percent(0, 100) == "0.00");
    CHECK(format_percent(1, 3) == "33.33");
    CHECK(format_percent(2, 3) == "66.67");
    CHECK(format_percent(1, 8) == "12.50");
    CHECK(format_percent(1, 80000) == "0.00");   // 0.00125 %
    CHECK(format_percent(1, 20000) == "0.01");   // 0.005 % rounds up
    CHECK(format_percent(1, 20001) == "0.00");
    CHECK(format_percent(3, 2) == "150.00");
    CHECK(format_percent(5, 0) == "inf");
    CHECK(format_percent(0, 0) == "0.00");
  }

  TEST_CASE("DER report columns and identical numbers in both forms") {
    const auto ref = parse_rttm(
        "SPEAKER S1 1 0.00 10.00 <NA> <NA> A <NA> <NA>\n"
        "SPEAKER S2 1 0.00 4.00 <NA> <NA> B <NA> <NA>\n"
        "SPEAKER S3 1 0.00 4.00 <NA> <NA> B <NA> <NA>\n");
    const auto hyp = parse_rttm(
        "SPEAKER S1 1 0.00 9.00 <NA> <NA> X <NA> <NA>\n"
        "SPEAKER S2 1 0.00 4.00 <NA> <NA> Y <NA> <NA>\n"
        "SPEAKER S9 1 0.00 4.00 <NA> <NA> Y <NA> <NA>\n");
    const DerReport r = score_der_corpus(ref, hyp, MappingMode::kAssignment, 3);
    CHECK(r.ref_only == std::vector<std::string>{"S3"});
    CHECK(r.hyp_only == std::vector<std::string>{"S9"});
    REQUIRE(r.sessions.size() == 3);
    CHECK(r.sessions[0].breakdown == DerBreakdown{0, 1000, 0, 10000});
    CHECK(r.sessions[2].breakdown == DerBreakdown{0, 4000, 0, 4000});
    CHECK(r.total.breakdown == DerBreakdown{0, 5000, 0, 18000});

    const auto text = cells(r.text());
    const auto tsv = cells(r.tsv());
    CHECK(text == tsv);
    CHECK(text[0] == std::vector<std::string>{"session", "FA", "MISS", "SPKERR", "DER", "ref_ms",
                                              "fa_ms", "miss_ms", "spkerr_ms"});
    CHECK(text.back() == std::vector<std::string>{"ALL", "0.00", "27.78", "0.00", "27.78", "18000",
                                                  "0", "5000", "0"});
    CHECK(r.text().find("collar=none") != std::string::npos);

    CHECK(score_der_corpus(ref, hyp, MappingMode::kAssignment, 1).text() == r.text());
    CHECK_THROWS_AS(score_der_corpus(ref, std::vector<SpeakerTurn>{}), Error);
  }

  TEST_CASE("identical inputs give an all-zero row") {
    const SynthSession s = generate_session({});
    const DerReport d = score_der_corpus(s.turns, s.turns);
    CHECK(d.total.breakdown.errors() == 0);
    const CpcerReport c = score_cpcer_corpus(s.transcript, s.transcript);
    CHECK(c.total.counts.errors() == 0);
    CHECK(cells(c.text()).back()[4] == "0.00");
  }

  TEST_CASE("cpCER report") {
    const auto ref = parse_transcript("A_S1 abc\nB_S1 def\nA_S2 xy\n");
    const auto hyp = parse_transcript("1_S1 def\n2_S1 abx\n");
    const CpcerReport r = score_cpcer_corpus(ref, hyp);
    CHECK(r.ref_only == std::vector<std::string>{"S2"});
    CHECK(r.total.counts == EditCounts{1, 2, 0, 8});
    const auto text = cells(r.text());
    CHECK(text == cells(r.tsv()));
    CHECK(text[0] == std::vector<std::string>{"session", "S", "D", "I", "cpCER", "ref_chars", "sub",
                                              "del", "ins"});
    CHECK(text.back() == std::vector<std::string>{"ALL", "12.50", "25.00", "0.00", "37.50", "8",
                                                  "1", "2", "0"});
    CHECK(r.text().find("strip_punctuation=yes") != std::string::npos);
  }

  TEST_CASE("reference lines ordered by RTTM turns") {
    const auto entries = parse_transcript("A_S1 世界\nA_S1 你好\n");
    const auto turns = parse_rttm(
        "SPEAKER S1 1 5.00 1.00 <NA> <NA> A <NA> <NA>\n"
        "SPEAKER S1 1 1.00 1.00 <NA> <NA> A <NA> <NA>\n");
    const auto ordered = order_by_turns(entries, turns);
    CHECK(ordered[0].order_key == 5000);
    CHECK(ordered[1].order_key == 1000);
    const auto hyp = parse_transcript("X_S1 你好世界\n");
    CHECK(score_cpcer_corpus(ordered, hyp).total.counts.errors() == 0);
    CHECK_THROWS_AS(order_by_turns(entries, std::span(turns).first(1)), Error);
  }

  TEST_CASE("empty reference session is undefined") {
    const auto ref = parse_transcript("A_S1 。。\n");
    const auto hyp = parse_transcript("A_S1 x\n");
    try {
      score_cpcer_corpus(ref, hyp);
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::kUndefined);
    }
  }
}
