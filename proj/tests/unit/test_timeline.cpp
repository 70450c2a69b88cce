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

#include "avdr/timeline.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace avdr;

namespace {

Diarization make(std::initializer_list<std::tuple<const char*, Millis, Millis>> spans) {
  Diarization d("S");
  for (const auto& [spk, a, b] : spans) d.add(spk, {a, b - a});
  return d;
}

}  // namespace

TEST_SUITE("timeline") {
  TEST_CASE("add merges touching and overlapping intervals") {
    Diarization d("S");
    d.add("A", {0, 100});
    d.add("A", {100, 50});
    d.add("A", {120, 100});
    d.add("A", {500, 0});
    REQUIRE(d.speakers().at("A").size() == 1);
    CHECK(d.speakers().at("A")[0] == TimeInterval{0, 220});
  }

  TEST_CASE("remove splits intervals") {
    Diarization d = make({{"A", 0, 100}});
    d.remove("A", {40, 20});
    CHECK(d.speakers().at("A") == std::vector<TimeInterval>{{0, 40}, {60, 40}});
    d.remove("A", {0, 200});
    CHECK(d.empty());
  }

  TEST_CASE("paired regions") {
    const Diarization a = make({{"A", 0, 10000}});
    const Diarization b = make({{"X", 5000, 15000}});
    const auto r = build_regions(a, b);
    REQUIRE(r.size() == 3);
    CHECK(r[0] == PairedRegion{{0, 5000}, {"A"}, {}});
    CHECK(r[1] == PairedRegion{{5000, 5000}, {"A"}, {"X"}});
    CHECK(r[2] == PairedRegion{{10000, 5000}, {}, {"X"}});
    const auto same = build_regions(a, a);
    REQUIRE(same.size() == 1);
    CHECK(same[0] == PairedRegion{{0, 10000}, {"A"}, {"A"}});
    CHECK(build_regions(Diarization("S"), Diarization("S")).empty());
  }

  TEST_CASE("silent regions are part of the tiling") {
    const Diarization a = make({{"A", 0, 10}, {"A", 20, 30}});
    const auto r = build_regions(a, Diarization("S"));
    REQUIRE(r.size() == 3);
    CHECK(r[1].a_active.empty());
  }

  TEST_CASE("pairwise overlap") {
    const Diarization a = make({{"A", 0, 10000}});
    const Diarization b = make({{"X", 5000, 15000}});
    const auto m = pairwise_overlap(a, b);
    CHECK(m.at(0, 0) == 5000);
    CHECK(pairwise_overlap(a, a).at(0, 0) == 10000);
    const auto disjoint = pairwise_overlap(make({{"A", 0, 10}}), make({{"X", 10, 20}}));
    CHECK(disjoint.at(0, 0) == 0);
  }

  TEST_CASE("session mismatch is rejected") {
    const Diarization a("S1"), b("S2");
    const Diarization* in[] = {&a, &b};
    CHECK_THROWS_AS(tile(in), Error);
  }

  TEST_CASE("tiling properties on random inputs") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 200; ++trial) {
      const Diarization a = oracle::random_diarization(rng, "S", 4, 5000, "r");
      const Diarization b = oracle::random_diarization(rng, "S", 4, 5000, "h");
      const auto regions = build_regions(a, b);
      Millis sum = 0;
      for (const auto& r : regions) sum += r.interval.dur;
      const TimeInterval ea = a.extent(), eb = b.extent();
      CHECK(sum == std::max(ea.end(), eb.end()) - std::min(ea.start, eb.start));

      const auto ab = pairwise_overlap(a, b);
      const auto ba = pairwise_overlap(b, a);
      const auto segs = oracle::segments(a, b);
      for (std::size_t r = 0; r < ab.rows(); ++r) {
        for (std::size_t h = 0; h < ab.cols(); ++h) {
          CHECK(ab.at(r, h) == ba.at(h, r));
          Millis both = 0;
          for (const auto& seg : segs) {
            if (seg.ref.count(ab.ref_ids()[r]) && seg.hyp.count(ab.hyp_ids()[h])) both += seg.dur;
          }
          CHECK(ab.at(r, h) == both);
        }
      }
    }
  }
}
