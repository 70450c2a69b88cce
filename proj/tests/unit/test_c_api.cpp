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

#include <cstring>
#include <string>

#include "avdr/avdr.h"
#include "doctest.h"

namespace {

std::string take(char* s) {
  std::string out = s ? s : "";
  avdr_string_free(s);
  return out;
}

}  // namespace

TEST_SUITE("c-api") {
  TEST_CASE("score DER through handles") {
    const char* ref_text = "SPEAKER S1 1 0.00 10.00 <NA> <NA> A <NA> <NA>\n";
    const char* hyp_text = "SPEAKER S1 1 0.00 8.00 <NA> <NA> X <NA> <NA>\n";
    avdr_rttm *ref = nullptr, *hyp = nullptr;
    REQUIRE(avdr_rttm_parse(ref_text, std::strlen(ref_text), &ref) == AVDR_OK);
    REQUIRE(avdr_rttm_parse(hyp_text, std::strlen(hyp_text), &hyp) == AVDR_OK);
    CHECK(avdr_rttm_size(ref) == 1);

    avdr_der_options o;
    avdr_der_options_init(&o);
    avdr_report* rep = nullptr;
    REQUIRE(avdr_score_der(ref, hyp, &o, &rep) == AVDR_OK);
    CHECK(avdr_report_sessions(rep) == 1);
    const char* session = nullptr;
    avdr_der_row row;
    REQUIRE(avdr_report_der_row(rep, 1, &session, &row) == AVDR_OK);
    CHECK(std::string(session) == "ALL");
    CHECK(row.total_ms == 10000);
    CHECK(row.miss_ms == 2000);
    avdr_cpcer_row wrong;
    CHECK(avdr_report_cpcer_row(rep, 0, nullptr, &wrong) == AVDR_ERR_ARGUMENT);
    CHECK(avdr_report_der_row(rep, 2, nullptr, &row) == AVDR_ERR_ARGUMENT);

    char* text = nullptr;
    REQUIRE(avdr_report_text(rep, &text) == AVDR_OK);
    CHECK(take(text).find("20.00") != std::string::npos);

    avdr_report_free(rep);
    avdr_rttm_free(ref);
    avdr_rttm_free(hyp);
  }

  TEST_CASE("errors carry kind and line") {
    const char* bad = "SPEAKER S1 1 0.00 1.00 <NA> <NA> A <NA> <NA>\nSPEAKER S1 1 zz 1.00 <NA> <NA> A <NA> <NA>\n";
    avdr_rttm* r = nullptr;
    CHECK(avdr_rttm_parse(bad, std::strlen(bad), &r) == AVDR_ERR_PARSE);
    CHECK(avdr_last_error_line() == 2);
    CHECK(std::string(avdr_last_error()).find("line 2") != std::string::npos);
    CHECK(avdr_rttm_read("/nonexistent/file.rttm", &r) == AVDR_ERR_IO);
    CHECK(avdr_rttm_parse(bad, 0, nullptr) == AVDR_ERR_ARGUMENT);
  }

  TEST_CASE("synth then score recovers the ledger") {
    avdr_synth_params p;
    avdr_synth_params_init(&p);
    p.seed = 4;
    p.duration_ms = 120000;
    p.fa_ms = 500;
    p.miss_ms = 700;
    p.spkerr_ms = 900;
    p.sub = 6;
    p.del = 4;
    p.ins = 2;
    avdr_synth_result res;
    REQUIRE(avdr_synth(&p, &res) == AVDR_OK);

    avdr_report* der = nullptr;
    REQUIRE(avdr_score_der(res.ref_rttm, res.hyp_rttm, nullptr, &der) == AVDR_OK);
    avdr_der_row row;
    REQUIRE(avdr_report_der_row(der, 0, nullptr, &row) == AVDR_OK);
    CHECK(row.fa_ms == 500);
    CHECK(row.miss_ms == 700);
    CHECK(row.spkerr_ms == 900);
    avdr_report_free(der);

    avdr_report* cp = nullptr;
    REQUIRE(avdr_score_cpcer(res.ref_text, res.ref_rttm, res.hyp_text, nullptr, &cp) == AVDR_OK);
    avdr_cpcer_row c;
    REQUIRE(avdr_report_cpcer_row(cp, 0, nullptr, &c) == AVDR_OK);
    CHECK(c.s == 6);
    CHECK(c.d == 4);
    CHECK(c.i == 2);
    avdr_report_free(cp);

    CHECK(std::string(res.ledger) == "FA\t500\nMISS\t700\nSPKERR\t900\nS\t6\nD\t4\nI\t2\n");
    avdr_synth_result_free(&res);
    CHECK(res.ref_rttm == nullptr);
  }

  TEST_CASE("fuse, binarize, manifest, assemble") {
    const char* a = "SPEAKER S 1 0.00 10.00 <NA> <NA> A <NA> <NA>\n";
    avdr_rttm* ra = nullptr;
    REQUIRE(avdr_rttm_parse(a, std::strlen(a), &ra) == AVDR_OK);
    const avdr_rttm* inputs[] = {ra, ra, ra};
    avdr_rttm* fused = nullptr;
    REQUIRE(avdr_fuse(inputs, nullptr, 3, &fused) == AVDR_OK);
    char* text = nullptr;
    REQUIRE(avdr_rttm_emit(fused, &text) == AVDR_OK);
    CHECK(take(text) == a);
    avdr_rttm_free(fused);

    const char* probs = "S 10 A\n1\n1\n1\n";
    avdr_binarize_options bo;
    avdr_binarize_options_init(&bo);
    bo.min_dur_ms = 0;
    avdr_rttm* bin = nullptr;
    REQUIRE(avdr_binarize(probs, std::strlen(probs), &bo, &bin) == AVDR_OK);
    REQUIRE(avdr_rttm_emit(bin, &text) == AVDR_OK);
    CHECK(take(text) == "SPEAKER S 1 0.00 0.03 <NA> <NA> A <NA> <NA>\n");
    avdr_rttm_free(bin);

    avdr_manifest* m = nullptr;
    REQUIRE(avdr_manifest_build(ra, &m) == AVDR_OK);
    CHECK(avdr_manifest_size(m) == 1);
    const char* seg = "A_S-00000000-00010000 你好\n";
    avdr_transcript* t = nullptr;
    REQUIRE(avdr_assemble(m, seg, std::strlen(seg), &t) == AVDR_OK);
    REQUIRE(avdr_transcript_emit(t, &text) == AVDR_OK);
    CHECK(take(text) == "A_S 你好\n");
    avdr_transcript_free(t);
    avdr_manifest_free(m);
    avdr_rttm_free(ra);
  }
}
