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

// Acceptance suite: one PASS/FAIL line per criterion. Exit status is nonzero
// when any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "avdr/cpcer.hpp"
#include "avdr/diarization_metrics.hpp"
#include "avdr/formats.hpp"
#include "avdr/fusion.hpp"
#include "avdr/report.hpp"
#include "avdr/synth.hpp"
#include "avdr/text_metrics.hpp"
#include "oracles.hpp"

using namespace avdr;

namespace {

constexpr double kRateTolerance = 0.05;  // percentage points, measured vs target
constexpr double kSumTolerance = 0.01;   // percentage points, total vs component sum
constexpr double kDerRowsSeconds = 5.0;
constexpr double kCpcerRowsSeconds = 5.0;
constexpr double kDerOracleSeconds = 30.0;
constexpr double kCpcerOracleSeconds = 60.0;
constexpr double kLedgerSeconds = 30.0;

struct Outcome {
  bool pass = true;
  std::string detail;

  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

int g_failures = 0;

void run(const char* name, double limit_s, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o.fail(std::string("exception: ") + e.what());
  }
  const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (limit_s > 0 && s > limit_s) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "took %.2f s, limit %.0f s", s, limit_s);
    o.fail(buf);
  }
  if (!o.pass) ++g_failures;
  std::printf("%s  %-28s %7.2f s  %s\n", o.pass ? "PASS" : "FAIL", name, s, o.detail.c_str());
  std::fflush(stdout);
}

// Cells of the aggregate row of a TSV report.
std::vector<std::string> total_row(const std::string& tsv) {
  std::istringstream in(tsv);
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind("ALL\t", 0) != 0) continue;
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, '\t')) cells.push_back(cell);
    return cells;
  }
  throw std::runtime_error("report has no aggregate row");
}

std::string fmt(const char* f, double a, double b = 0, double c = 0, double d = 0) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

Millis round_to_grid(double ms) { return 10 * std::llround(ms / 10.0); }

// Target DER rows: FA, MISS, SPKERR, DER (%).
struct DerRowTarget {
  const char* system;
  double fa, miss, spkerr, der;
};
constexpr DerRowTarget kDerRows[] = {
    {"ASD", 0.01, 19.88, 11.36, 31.25},
    {"VSD", 6.64, 8.17, 3.89, 18.69},
    {"AVSD", 4.01, 5.86, 3.22, 13.09},
};

// Target cpCER rows: S, D, I, cpCER (%).
struct CpcerRowTarget {
  const char* system;
  double s, d, i, cpcer;
};
constexpr CpcerRowTarget kCpcerRows[] = {
    {"ASR(OS)", 40.84, 27.33, 0.51, 68.68},   {"AVSR(OS)", 35.78, 27.82, 0.36, 63.96},
    {"ASD+ASR", 31.83, 44.34, 4.27, 80.44},   {"VSD+ASR", 39.25, 31.22, 0.66, 71.13},
    {"VSD+AVSR", 35.17, 31.01, 0.61, 66.79},  {"AVSD+AVSR", 35.94, 29.45, 0.68, 66.07},
};

Outcome der_identity_rows() {
  Outcome o;
  SessionParams p;
  p.speakers = 4;
  p.duration_ms = 600'000;
  p.seed = 2024;
  const SynthSession s = generate_session(p);
  const double total = static_cast<double>(s.reference.total_speech());
  std::string detail;
  for (const auto& row : kDerRows) {
    const DiarizationInjection inj{round_to_grid(row.fa / 100 * total),
                                  round_to_grid(row.miss / 100 * total),
                                  round_to_grid(row.spkerr / 100 * total)};
    const auto hyp = corrupt_diarization(s.reference, inj, 7);
    const auto hyp_turns = parse_rttm(emit_rttm(to_turns(hyp.hypothesis)));
    const auto ref_turns = parse_rttm(emit_rttm(s.turns));
    const DerReport rep = score_der_corpus(ref_turns, hyp_turns);
    const auto cells = total_row(rep.tsv());
    const double fa = std::stod(cells[1]), miss = std::stod(cells[2]), spk = std::stod(cells[3]),
                 der = std::stod(cells[4]);
    const auto& b = rep.total.breakdown;
    if (b.fa != inj.fa || b.miss != inj.miss || b.spkerr != inj.spkerr) {
      o.fail(std::string(row.system) + ": measured durations differ from the ledger");
    }
    if (std::abs(fa - row.fa) > kRateTolerance || std::abs(miss - row.miss) > kRateTolerance ||
        std::abs(spk - row.spkerr) > kRateTolerance) {
      o.fail(std::string(row.system) + fmt(": rates %.2f/%.2f/%.2f", fa, miss, spk));
    }
    if (std::abs(der - (fa + miss + spk)) > kSumTolerance + 1e-9) {
      o.fail(std::string(row.system) + fmt(": DER %.2f vs sum %.2f", der, fa + miss + spk));
    }
    if (std::abs(row.der - (row.fa + row.miss + row.spkerr)) > kSumTolerance + 1e-9) {
      o.fail(std::string(row.system) + ": target row breaks the sum identity");
    }
    detail += std::string(row.system) + fmt(" %.2f+%.2f+%.2f=%.2f; ", fa, miss, spk, der);
  }
  if (o.pass) o.detail = detail;
  return o;
}

Outcome cpcer_identity_rows() {
  Outcome o;
  std::string detail;
  SessionParams p;
  p.speakers = 6;
  p.duration_ms = 600'000;
  p.chars_per_second = 10.0;
  p.seed = 2025;
  const SynthSession s = generate_session(p);
  const auto ref_entries = order_by_turns(parse_transcript(emit_transcript(s.transcript)),
                                          parse_rttm(emit_rttm(s.turns)));
  const double n = static_cast<double>(concat_by_speaker(ref_entries).total_chars());
  for (const auto& row : kCpcerRows) {
    const TextInjection inj{std::llround(row.s / 100 * n), std::llround(row.d / 100 * n),
                            std::llround(row.i / 100 * n)};
    const auto hyp = corrupt_text(s.transcript, inj, 11);
    const auto hyp_entries = parse_transcript(emit_transcript(hyp.hypothesis));
    const CpcerReport rep = score_cpcer_corpus(ref_entries, hyp_entries);
    const auto cells = total_row(rep.tsv());
    const double sv = std::stod(cells[1]), dv = std::stod(cells[2]), iv = std::stod(cells[3]),
                 cp = std::stod(cells[4]);
    const auto& c = rep.total.counts;
    if (c.s != inj.s || c.d != inj.d || c.i != inj.i) {
      o.fail(std::string(row.system) + ": measured counts differ from the ledger");
    }
    if (std::abs(sv - row.s) > kRateTolerance || std::abs(dv - row.d) > kRateTolerance ||
        std::abs(iv - row.i) > kRateTolerance) {
      o.fail(std::string(row.system) + fmt(": rates %.2f/%.2f/%.2f", sv, dv, iv));
    }
    if (std::abs(cp - (sv + dv + iv)) > kSumTolerance + 1e-9) {
      o.fail(std::string(row.system) + fmt(": cpCER %.2f vs sum %.2f", cp, sv + dv + iv));
    }
    if (std::abs(row.cpcer - (row.s + row.d + row.i)) > kSumTolerance + 1e-9) {
      o.fail(std::string(row.system) + ": target row breaks the sum identity");
    }
    detail += std::string(row.system) + fmt(" %.2f; ", cp);
  }
  if (o.pass) o.detail = detail;
  return o;
}

Outcome der_oracle() {
  Outcome o;
  std::mt19937_64 rng(101);
  int checked = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const Diarization ref = oracle::random_diarization(rng, "S", 5, 30000, "r");
    const Diarization hyp = oracle::random_diarization(rng, "S", 5, 30000, "h");
    const DerBreakdown got = score_session(ref, hyp);
    const auto best = oracle::brute_force_der(ref, hyp);
    if (got.errors() != best.errors() || got.total != best.total) {
      o.fail("trial " + std::to_string(trial) + ": " + std::to_string(got.errors()) + " vs " +
             std::to_string(best.errors()));
    }
    ++checked;
  }
  if (o.pass) o.detail = std::to_string(checked) + " sessions exact";
  return o;
}

Outcome cpcer_oracle() {
  Outcome o;
  std::mt19937_64 rng(202);
  for (int trial = 0; trial < 200; ++trial) {
    SpeakerText ref, hyp;
    ref.session = hyp.session = "S";
    std::vector<CharSeq> rs, hs;
    const int nr = std::uniform_int_distribution<int>(1, 6)(rng);
    const int nh = std::uniform_int_distribution<int>(1, 6)(rng);
    for (int k = 0; k < nr; ++k) {
      auto s = oracle::random_chars(rng, 20, 4);
      s.push_back(U'a');
      ref.streams["r" + std::to_string(k)] = s;
      rs.push_back(s);
    }
    for (int k = 0; k < nh; ++k) {
      auto s = oracle::random_chars(rng, 20, 4);
      hyp.streams["h" + std::to_string(k)] = s;
      hs.push_back(s);
    }
    const CpcerResult a = compute_cpcer(ref, hyp, CpcerMode::kAssignment);
    const CpcerResult b = compute_cpcer(ref, hyp, CpcerMode::kBruteForce);
    if (!(a == b)) o.fail("trial " + std::to_string(trial) + ": modes differ");
    if (a.counts.errors() != oracle::brute_force_cp_errors(rs, hs)) {
      o.fail("trial " + std::to_string(trial) + ": independent permutation oracle differs");
    }
  }
  if (o.pass) o.detail = "200 sessions exact (mode equality and independent oracle)";
  return o;
}

Outcome ledger_recovery() {
  Outcome o;
  std::mt19937_64 rng(303);
  auto frac = [&](double hi) { return std::uniform_real_distribution<double>(0.0, hi)(rng); };
  for (int trial = 0; trial < 100; ++trial) {
    SessionParams p;
    p.session = "T" + std::to_string(trial);
    p.speakers = std::uniform_int_distribution<int>(2, 6)(rng);
    p.duration_ms = 10 * std::uniform_int_distribution<Millis>(6000, 30000)(rng);
    p.overlap_ratio = frac(0.15);
    p.silence_ratio = 0.05 + frac(0.25);
    p.seed = rng();
    const SynthSession s = generate_session(p);
    const double total = static_cast<double>(s.reference.total_speech());
    const double n = static_cast<double>(concat_by_speaker(s.transcript).total_chars());
    const DiarizationInjection di{round_to_grid(frac(0.05) * total),
                                  round_to_grid(frac(0.15) * total),
                                  round_to_grid(frac(0.15) * total)};
    const TextInjection ti{std::llround(frac(0.2) * n), std::llround(frac(0.2) * n),
                           std::llround(frac(0.1) * n)};
    const std::uint64_t seed = rng();
    const auto hd = corrupt_diarization(s.reference, di, seed);
    const auto ht = corrupt_text(s.transcript, ti, seed + 1);

    const auto ledger = parse_ledger(emit_ledger(di, ti));
    const DerReport der = score_der_corpus(parse_rttm(emit_rttm(s.turns)),
                                           parse_rttm(emit_rttm(to_turns(hd.hypothesis))));
    const auto ref_entries = order_by_turns(parse_transcript(emit_transcript(s.transcript)),
                                            parse_rttm(emit_rttm(s.turns)));
    const CpcerReport cp =
        score_cpcer_corpus(ref_entries, parse_transcript(emit_transcript(ht.hypothesis)));
    const auto& b = der.total.breakdown;
    const auto& c = cp.total.counts;
    if (b.fa != ledger.at("FA") || b.miss != ledger.at("MISS") || b.spkerr != ledger.at("SPKERR") ||
        c.s != ledger.at("S") || c.d != ledger.at("D") || c.i != ledger.at("I")) {
      o.fail("trial " + std::to_string(trial) + " did not recover its ledger");
    }
  }
  if (o.pass) o.detail = "100 loops exact (FA/MISS/SPKERR ms, S/D/I counts)";
  return o;
}

Outcome edit_oracle() {
  Outcome o;
  std::mt19937_64 rng(404);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto a = oracle::random_chars(rng, 30, 5);
    const auto b = oracle::random_chars(rng, 30, 5);
    if (edit_counts(a, b).errors() != oracle::levenshtein(a, b)) {
      o.fail("pair " + std::to_string(trial) + " differs");
    }
  }
  if (o.pass) o.detail = "1000 pairs exact";
  return o;
}

Outcome fusion() {
  Outcome o;
  std::mt19937_64 rng(505);
  for (int trial = 0; trial < 20; ++trial) {
    SessionParams p;
    p.duration_ms = 120'000;
    p.overlap_ratio = 0.1;
    p.seed = rng();
    const Diarization d = generate_session(p).reference;
    for (std::size_t k : {1u, 3u, 6u}) {
      const std::vector<Diarization> copies(k, d);
      const DerBreakdown b = score_session(d, fuse_channels(copies));
      if (b.errors() != 0) o.fail("k=" + std::to_string(k) + ": DER not zero");
    }
  }
  Diarization a("S");
  a.add("A", {0, 10'000});
  const Diarization inputs[] = {a, a, Diarization("S")};
  const Diarization fused = fuse_channels(inputs);
  if (!(fused == a)) o.fail("2-vs-1 majority: A not active on [0, 10 s)");
  if (o.pass) o.detail = "k in {1,3,6} DER 0 on 20 sessions; 2-vs-1 gives A on [0,10s)";
  return o;
}

std::vector<std::string> fields(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  std::string f;
  while (in >> f) out.push_back(f);
  return out;
}

Outcome format_roundtrip() {
  Outcome o;
  std::mt19937_64 rng(606);
  for (int trial = 0; trial < 100; ++trial) {
    SessionParams p;
    p.session = "S" + std::to_string(trial);
    p.speakers = std::uniform_int_distribution<int>(1, 6)(rng);
    p.overlap_ratio = p.speakers > 1 ? 0.05 : 0.0;
    p.duration_ms = 60'000;
    p.seed = rng();
    std::vector<SpeakerTurn> turns = generate_session(p).turns;
    for (auto& t : turns) t.channel = std::to_string(std::uniform_int_distribution<int>(1, 6)(rng));

    const std::string text = emit_rttm(turns);
    const auto parsed = parse_rttm(text);
    if (parsed != turns) o.fail("trial " + std::to_string(trial) + ": parse(emit(x)) != x");
    if (emit_rttm(parsed) != text) o.fail("trial " + std::to_string(trial) + ": emit not stable");

    std::istringstream in(text);
    std::string line;
    std::size_t k = 0;
    while (std::getline(in, line)) {
      const auto f = fields(line);
      const SpeakerTurn& t = turns[k++];
      if (f.size() != 10 || f[0] != "SPEAKER" || f[1] != t.session || f[2] != t.channel ||
          f[3] != format_seconds(t.interval.start) || f[4] != format_seconds(t.interval.dur) ||
          f[7] != t.speaker) {
        o.fail("trial " + std::to_string(trial) + ": column layout wrong: " + line);
        break;
      }
    }
    if (k != turns.size()) o.fail("trial " + std::to_string(trial) + ": line count differs");
  }
  if (o.pass) o.detail = "100 RTTMs; start=field 4, duration=field 5, speaker=field 8";
  return o;
}

}  // namespace

int main() {
  run("der-row-identity", kDerRowsSeconds, der_identity_rows);
  run("cpcer-row-identity", kCpcerRowsSeconds, cpcer_identity_rows);
  run("der-mapping-oracle", kDerOracleSeconds, der_oracle);
  run("cpcer-mode-oracle", kCpcerOracleSeconds, cpcer_oracle);
  run("ledger-recovery", kLedgerSeconds, ledger_recovery);
  run("edit-distance-oracle", 0, edit_oracle);
  run("fusion-idempotence-majority", 0, fusion);
  run("rttm-roundtrip-columns", 0, format_roundtrip);
  std::printf("N/A   %-28s            absolute challenge scores need the evaluation corpus and trained models; not claimed\n",
              "absolute-system-scores");
  std::printf("%d criteria failed\n", g_failures);
  return g_failures == 0 ? 0 : 1;
}
