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

#include <random>

#include "avdr/cpcer.hpp"
#include "avdr/postproc.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace avdr;

namespace {

ProbabilityMatrix matrix(std::vector<std::string> speakers, std::vector<double> values) {
  ProbabilityMatrix m;
  m.session = "S";
  m.frame_ms = 10;
  m.speakers = std::move(speakers);
  m.values = std::move(values);
  return m;
}

}  // namespace

TEST_SUITE("postproc") {
  TEST_CASE("binarize") {
    const Diarization d = binarize_probs(matrix({"A"}, {0.9, 0.9, 0.1, 0.9}), 0.5);
    CHECK(d.speakers().at("A") == std::vector<TimeInterval>{{0, 20}, {30, 10}});
    const Diarization ones = binarize_probs(matrix({"A", "B"}, {1, 1, 1, 1, 1, 1}));
    CHECK(ones.speakers().at("A") == std::vector<TimeInterval>{{0, 30}});
    CHECK(ones.speakers().at("B") == std::vector<TimeInterval>{{0, 30}});
    CHECK(binarize_probs(matrix({"A"}, {0, 0, 0})).empty());
    CHECK_THROWS_AS(binarize_probs(matrix({"A"}, {0.5}), 0.0), Error);
    CHECK_THROWS_AS(binarize_probs(matrix({"A"}, {0.5}), 1.0), Error);
  }

  TEST_CASE("smoothing merges then drops") {
    Diarization d("S");
    d.add("A", {0, 20});
    d.add("A", {30, 10});
    const Diarization merged = smooth_segments(d, {300, 0});
    CHECK(merged.speakers().at("A") == std::vector<TimeInterval>{{0, 40}});
    CHECK(smooth_segments(d).empty());
    CHECK(smooth_segments(Diarization("S")).empty());
    Diarization smooth("S");
    smooth.add("A", {0, 1000});
    smooth.add("A", {2000, 1000});
    CHECK(smooth_segments(smooth) == smooth);
  }

  TEST_CASE("smoothing properties") {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 100; ++trial) {
      const Diarization d = oracle::random_diarization(rng, "S", 3, 5000, "s");
      const Diarization once = smooth_segments(d);
      CHECK(smooth_segments(once) == once);

      // binary matrix round-trip with max_gap 0 and min_dur one frame
      const int frames = 100;
      std::vector<double> v(frames * 2);
      for (auto& x : v) x = std::uniform_int_distribution<int>(0, 1)(rng);
      const Diarization b = binarize_probs(matrix({"A", "B"}, v));
      CHECK(smooth_segments(b, {0, 10}) == b);
    }
  }

  TEST_CASE("matrix text format") {
    const auto m = parse_probability_matrix("S 10 A B\n0.9 0.1\n1 0\n");
    CHECK(m.speakers == std::vector<std::string>{"A", "B"});
    CHECK(m.frames() == 2);
    CHECK(parse_probability_matrix(emit_probability_matrix(m)).values == m.values);
    try {
      parse_probability_matrix("S 10 A\n0.5\n1.5\n");
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(e.line() == 3);
    }
    CHECK_THROWS_AS(parse_probability_matrix("S 10 A B\n0.5\n"), Error);
    CHECK_THROWS_AS(parse_probability_matrix("S 10 A A\n"), Error);
    CHECK_THROWS_AS(parse_probability_matrix("S 0 A\n"), Error);
    CHECK_THROWS_AS(parse_probability_matrix(""), Error);
  }

  TEST_CASE("manifest") {
    Diarization d("S001");
    d.add("B", {5000, 10000});
    d.add("A", {0, 10000});
    const SegmentManifest m = build_manifest(d);
    REQUIRE(m.rows.size() == 2);
    CHECK(m.rows[0] == ManifestRow{"S001", "A", {0, 10000}});
    CHECK(m.rows[1] == ManifestRow{"S001", "B", {5000, 10000}});
    CHECK(m.rows[0].segment_id() == "A_S001-00000000-00010000");
    CHECK(build_manifest(Diarization("S")).rows.empty());
    CHECK(parse_manifest(emit_manifest(m)) == m);
    CHECK(build_manifest(manifest_to_diarizations(m).at("S001")) == m);
    CHECK_THROWS_AS(parse_manifest("segment_id\tsession\tspeaker\tstart_ms\tdur_ms\nX\tS\tA\t0\t10\n"),
                    Error);
  }

  TEST_CASE("assemble joins segment texts in time order") {
    Diarization d("S001");
    d.add("A", {5000, 1000});
    d.add("A", {1000, 1000});
    d.add("B", {2000, 1000});
    const SegmentManifest m = build_manifest(d);
    const std::map<std::string, std::string> texts = {
        {"A_S001-00005000-00006000", "世界"},
        {"A_S001-00001000-00002000", "你好"},
        {"B_S001-00002000-00003000", "再见"}};
    const auto entries = assemble_transcript(m, texts);
    REQUIRE(entries.size() == 2);
    CHECK(entries[0].utterance_id() == "A_S001");
    CHECK(entries[0].text == "你好世界");
    CHECK(entries[1].text == "再见");
    CHECK(assemble_transcript(SegmentManifest{}, {}).empty());
    CHECK_THROWS_AS(assemble_transcript(m, {{"nope", "x"}}), Error);

    // pipeline consistency with the per-speaker concatenation
    const SpeakerText joined = concat_by_speaker(entries);
    CHECK(joined.streams.at("A") == normalize_text("你好世界"));
  }

  TEST_CASE("segment texts") {
    const auto t = parse_segment_texts("a x y\nb\n\n");
    CHECK(t.at("a") == "x y");
    CHECK(t.at("b").empty());
    CHECK_THROWS_AS(parse_segment_texts("a x\na y\n"), Error);
  }
}
