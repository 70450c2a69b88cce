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

#include "avdr/avdr.h"

#include <cstdlib>
#include <cstring>
#include <map>
#include <memory>
#include <new>
#include <set>
#include <string>
#include <variant>

#include "avdr/formats.hpp"
#include "avdr/fusion.hpp"
#include "avdr/postproc.hpp"
#include "avdr/report.hpp"
#include "avdr/synth.hpp"

struct avdr_rttm {
  std::vector<avdr::SpeakerTurn> turns;
};

struct avdr_transcript {
  std::vector<avdr::TranscriptEntry> entries;
};

struct avdr_manifest {
  avdr::SegmentManifest manifest;
};

struct avdr_report {
  std::variant<avdr::DerReport, avdr::CpcerReport> report;
};

namespace {

thread_local std::string g_error;
thread_local std::size_t g_error_line = 0;

avdr_status fail(avdr_status status, std::string message, std::size_t line = 0) {
  g_error = std::move(message);
  g_error_line = line;
  return status;
}

avdr_status status_of(avdr::ErrorKind kind) {
  switch (kind) {
    case avdr::ErrorKind::kParse: return AVDR_ERR_PARSE;
    case avdr::ErrorKind::kValidation: return AVDR_ERR_VALIDATION;
    case avdr::ErrorKind::kIo: return AVDR_ERR_IO;
    case avdr::ErrorKind::kUndefined: return AVDR_ERR_UNDEFINED;
  }
  return AVDR_ERR_INTERNAL;
}

template <typename F>
avdr_status guarded(F&& body) {
  try {
    g_error.clear();
    g_error_line = 0;
    body();
    return AVDR_OK;
  } catch (const avdr::Error& e) {
    return fail(status_of(e.kind()), e.what(), e.line());
  } catch (const std::bad_alloc&) {
    return fail(AVDR_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(AVDR_ERR_INTERNAL, e.what());
  }
}

char* dup_string(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (!p) throw std::bad_alloc();
  std::memcpy(p, s.data(), s.size());
  p[s.size()] = '\0';
  return p;
}

std::string_view view(const char* text, std::size_t len) {
  return text ? std::string_view(text, len) : std::string_view();
}

#define AVDR_REQUIRE(cond, what) \
  if (!(cond)) return fail(AVDR_ERR_ARGUMENT, what)

std::vector<avdr::Diarization> sessions_of(const avdr_rttm& r) {
  std::vector<avdr::Diarization> out;
  for (auto& [_, d] : avdr::group_by_session(r.turns)) out.push_back(std::move(d));
  return out;
}

}  // namespace

extern "C" {

const char* avdr_last_error(void) { return g_error.c_str(); }
size_t avdr_last_error_line(void) { return g_error_line; }
void avdr_string_free(char* s) { std::free(s); }

avdr_status avdr_rttm_read(const char* path, avdr_rttm** out) {
  AVDR_REQUIRE(path && out, "null argument");
  return guarded([&] {
    auto r = std::make_unique<avdr_rttm>();
    r->turns = avdr::parse_rttm(avdr::read_file(path));
    *out = r.release();
  });
}

avdr_status avdr_rttm_parse(const char* text, size_t len, avdr_rttm** out) {
  AVDR_REQUIRE(out, "null argument");
  return guarded([&] {
    auto r = std::make_unique<avdr_rttm>();
    r->turns = avdr::parse_rttm(view(text, len));
    *out = r.release();
  });
}

avdr_status avdr_rttm_emit(const avdr_rttm* rttm, char** out) {
  AVDR_REQUIRE(rttm && out, "null argument");
  return guarded([&] { *out = dup_string(avdr::emit_rttm(rttm->turns)); });
}

avdr_status avdr_rttm_write(const avdr_rttm* rttm, const char* path) {
  AVDR_REQUIRE(rttm && path, "null argument");
  return guarded([&] { avdr::write_file(path, avdr::emit_rttm(rttm->turns)); });
}

size_t avdr_rttm_size(const avdr_rttm* rttm) { return rttm ? rttm->turns.size() : 0; }

avdr_status avdr_rttm_append(avdr_rttm* dst, const avdr_rttm* src) {
  AVDR_REQUIRE(dst && src, "null argument");
  return guarded([&] { dst->turns.insert(dst->turns.end(), src->turns.begin(), src->turns.end()); });
}

void avdr_rttm_free(avdr_rttm* rttm) { delete rttm; }

avdr_status avdr_transcript_read(const char* path, avdr_transcript** out) {
  AVDR_REQUIRE(path && out, "null argument");
  return guarded([&] {
    auto t = std::make_unique<avdr_transcript>();
    t->entries = avdr::parse_transcript(avdr::read_file(path));
    *out = t.release();
  });
}

avdr_status avdr_transcript_parse(const char* text, size_t len, avdr_transcript** out) {
  AVDR_REQUIRE(out, "null argument");
  return guarded([&] {
    auto t = std::make_unique<avdr_transcript>();
    t->entries = avdr::parse_transcript(view(text, len));
    *out = t.release();
  });
}

avdr_status avdr_transcript_emit(const avdr_transcript* t, char** out) {
  AVDR_REQUIRE(t && out, "null argument");
  return guarded([&] { *out = dup_string(avdr::emit_transcript(t->entries)); });
}

avdr_status avdr_transcript_write(const avdr_transcript* t, const char* path) {
  AVDR_REQUIRE(t && path, "null argument");
  return guarded([&] { avdr::write_file(path, avdr::emit_transcript(t->entries)); });
}

size_t avdr_transcript_size(const avdr_transcript* t) { return t ? t->entries.size() : 0; }
void avdr_transcript_free(avdr_transcript* t) { delete t; }

void avdr_der_options_init(avdr_der_options* o) {
  if (o) *o = {1, 0};
}

void avdr_cpcer_options_init(avdr_cpcer_options* o) {
  if (o) *o = {1, 0, 1, 0};
}

avdr_status avdr_score_der(const avdr_rttm* ref, const avdr_rttm* hyp,
                           const avdr_der_options* options, avdr_report** out) {
  AVDR_REQUIRE(ref && hyp && out, "null argument");
  avdr_der_options o;
  avdr_der_options_init(&o);
  if (options) o = *options;
  return guarded([&] {
    auto r = std::make_unique<avdr_report>();
    r->report = avdr::score_der_corpus(
        ref->turns, hyp->turns,
        o.brute_force ? avdr::MappingMode::kBruteForce : avdr::MappingMode::kAssignment, o.jobs);
    *out = r.release();
  });
}

avdr_status avdr_score_cpcer(const avdr_transcript* ref, const avdr_rttm* ref_rttm,
                             const avdr_transcript* hyp, const avdr_cpcer_options* options,
                             avdr_report** out) {
  AVDR_REQUIRE(ref && hyp && out, "null argument");
  avdr_cpcer_options o;
  avdr_cpcer_options_init(&o);
  if (options) o = *options;
  return guarded([&] {
    avdr::CpcerCorpusOptions opts;
    opts.normalize.strip_punctuation = o.strip_punctuation != 0;
    opts.normalize.lowercase_latin = o.lowercase_latin != 0;
    opts.mode = o.brute_force ? avdr::CpcerMode::kBruteForce : avdr::CpcerMode::kAssignment;
    opts.jobs = o.jobs;
    auto r = std::make_unique<avdr_report>();
    if (ref_rttm) {
      const auto ordered = avdr::order_by_turns(ref->entries, ref_rttm->turns);
      r->report = avdr::score_cpcer_corpus(ordered, hyp->entries, opts);
    } else {
      r->report = avdr::score_cpcer_corpus(ref->entries, hyp->entries, opts);
    }
    *out = r.release();
  });
}

avdr_status avdr_report_text(const avdr_report* r, char** out) {
  AVDR_REQUIRE(r && out, "null argument");
  return guarded([&] {
    *out = dup_string(std::visit([](const auto& rep) { return rep.text(); }, r->report));
  });
}

avdr_status avdr_report_tsv(const avdr_report* r, char** out) {
  AVDR_REQUIRE(r && out, "null argument");
  return guarded([&] {
    *out = dup_string(std::visit([](const auto& rep) { return rep.tsv(); }, r->report));
  });
}

size_t avdr_report_sessions(const avdr_report* r) {
  if (!r) return 0;
  return std::visit([](const auto& rep) { return rep.sessions.size(); }, r->report);
}

avdr_status avdr_report_der_row(const avdr_report* r, size_t index, const char** session,
                                avdr_der_row* row) {
  AVDR_REQUIRE(r && row, "null argument");
  const auto* rep = std::get_if<avdr::DerReport>(&r->report);
  AVDR_REQUIRE(rep, "not a DER report");
  AVDR_REQUIRE(index <= rep->sessions.size(), "row index out of range");
  const avdr::DerRow& src = index < rep->sessions.size() ? rep->sessions[index] : rep->total;
  if (session) *session = src.session.c_str();
  *row = {src.breakdown.total, src.breakdown.fa, src.breakdown.miss, src.breakdown.spkerr};
  return AVDR_OK;
}

avdr_status avdr_report_cpcer_row(const avdr_report* r, size_t index, const char** session,
                                  avdr_cpcer_row* row) {
  AVDR_REQUIRE(r && row, "null argument");
  const auto* rep = std::get_if<avdr::CpcerReport>(&r->report);
  AVDR_REQUIRE(rep, "not a cpCER report");
  AVDR_REQUIRE(index <= rep->sessions.size(), "row index out of range");
  const avdr::CpcerRow& src = index < rep->sessions.size() ? rep->sessions[index] : rep->total;
  if (session) *session = src.session.c_str();
  *row = {src.counts.n, src.counts.s, src.counts.d, src.counts.i};
  return AVDR_OK;
}

void avdr_report_free(avdr_report* r) { delete r; }

avdr_status avdr_fuse(const avdr_rttm* const* inputs, const double* weights, size_t count,
                      avdr_rttm** out) {
  AVDR_REQUIRE(inputs && out && count > 0, "null argument or no inputs");
  for (size_t k = 0; k < count; ++k) AVDR_REQUIRE(inputs[k], "null input");
  return guarded([&] {
    std::vector<std::map<std::string, avdr::Diarization>> grouped;
    std::set<std::string> sessions;
    for (size_t k = 0; k < count; ++k) {
      grouped.push_back(avdr::group_by_session(inputs[k]->turns));
      for (const auto& [id, _] : grouped.back()) sessions.insert(id);
    }
    std::vector<double> w;
    if (weights) w.assign(weights, weights + count);
    auto r = std::make_unique<avdr_rttm>();
    for (const auto& id : sessions) {
      std::vector<avdr::Diarization> per_input;
      for (auto& g : grouped) {
        auto it = g.find(id);
        per_input.push_back(it != g.end() ? it->second : avdr::Diarization(id));
      }
      const auto fused = avdr::fuse_channels(per_input, w);
      for (auto& t : avdr::to_turns(fused)) r->turns.push_back(std::move(t));
    }
    *out = r.release();
  });
}

void avdr_binarize_options_init(avdr_binarize_options* o) {
  if (o) *o = {0.5, 300, 200};
}

avdr_status avdr_binarize(const char* matrix_text, size_t len, const avdr_binarize_options* options,
                          avdr_rttm** out) {
  AVDR_REQUIRE(out, "null argument");
  avdr_binarize_options o;
  avdr_binarize_options_init(&o);
  if (options) o = *options;
  return guarded([&] {
    if (o.max_gap_ms < 0 || o.min_dur_ms < 0) {
      throw avdr::Error(avdr::ErrorKind::kValidation, "max-gap and min-dur must be >= 0");
    }
    const auto probs = avdr::parse_probability_matrix(view(matrix_text, len));
    const auto smoothed =
        avdr::smooth_segments(avdr::binarize_probs(probs, o.threshold), {o.max_gap_ms, o.min_dur_ms});
    auto r = std::make_unique<avdr_rttm>();
    r->turns = avdr::to_turns(smoothed);
    *out = r.release();
  });
}

avdr_status avdr_manifest_build(const avdr_rttm* rttm, avdr_manifest** out) {
  AVDR_REQUIRE(rttm && out, "null argument");
  return guarded([&] {
    auto m = std::make_unique<avdr_manifest>();
    m->manifest = avdr::build_manifest(sessions_of(*rttm));
    *out = m.release();
  });
}

avdr_status avdr_manifest_parse(const char* text, size_t len, avdr_manifest** out) {
  AVDR_REQUIRE(out, "null argument");
  return guarded([&] {
    auto m = std::make_unique<avdr_manifest>();
    m->manifest = avdr::parse_manifest(view(text, len));
    *out = m.release();
  });
}

avdr_status avdr_manifest_emit(const avdr_manifest* m, char** out) {
  AVDR_REQUIRE(m && out, "null argument");
  return guarded([&] { *out = dup_string(avdr::emit_manifest(m->manifest)); });
}

size_t avdr_manifest_size(const avdr_manifest* m) { return m ? m->manifest.rows.size() : 0; }
void avdr_manifest_free(avdr_manifest* m) { delete m; }

avdr_status avdr_assemble(const avdr_manifest* m, const char* segment_texts, size_t len,
                          avdr_transcript** out) {
  AVDR_REQUIRE(m && out, "null argument");
  return guarded([&] {
    auto t = std::make_unique<avdr_transcript>();
    t->entries =
        avdr::assemble_transcript(m->manifest, avdr::parse_segment_texts(view(segment_texts, len)));
    *out = t.release();
  });
}

void avdr_synth_params_init(avdr_synth_params* p) {
  if (!p) return;
  const avdr::SessionParams d;
  *p = {};
  p->session = nullptr;
  p->speakers = d.speakers;
  p->duration_ms = d.duration_ms;
  p->overlap_ratio = d.overlap_ratio;
  p->silence_ratio = d.silence_ratio;
  p->chars_per_second = d.chars_per_second;
  p->seed = d.seed;
}

avdr_status avdr_synth(const avdr_synth_params* p, avdr_synth_result* out) {
  AVDR_REQUIRE(p && out, "null argument");
  *out = {};
  return guarded([&] {
    avdr::SessionParams params;
    if (p->session) params.session = p->session;
    params.speakers = p->speakers;
    params.duration_ms = p->duration_ms;
    params.overlap_ratio = p->overlap_ratio;
    params.silence_ratio = p->silence_ratio;
    params.chars_per_second = p->chars_per_second;
    params.seed = p->seed;
    const avdr::SynthSession session = avdr::generate_session(params);

    const avdr::DiarizationInjection dinj{p->fa_ms, p->miss_ms, p->spkerr_ms};
    const avdr::TextInjection tinj{p->sub, p->del, p->ins};
    // independent streams for the two corruptions
    const auto diar = avdr::corrupt_diarization(session.reference, dinj, p->seed ^ 0x9E3779B97F4A7C15ULL);
    const auto text = avdr::corrupt_text(session.transcript, tinj, p->seed ^ 0xC2B2AE3D27D4EB4FULL);

    auto ref_rttm = std::make_unique<avdr_rttm>();
    ref_rttm->turns = session.turns;
    auto hyp_rttm = std::make_unique<avdr_rttm>();
    hyp_rttm->turns = avdr::to_turns(diar.hypothesis);
    auto ref_text = std::make_unique<avdr_transcript>();
    ref_text->entries = session.transcript;
    auto hyp_text = std::make_unique<avdr_transcript>();
    hyp_text->entries = text.hypothesis;
    char* ledger = dup_string(avdr::emit_ledger(dinj, tinj));

    out->ref_rttm = ref_rttm.release();
    out->hyp_rttm = hyp_rttm.release();
    out->ref_text = ref_text.release();
    out->hyp_text = hyp_text.release();
    out->ledger = ledger;
    out->realized_overlap = session.realized_overlap;
    out->realized_silence = session.realized_silence;
  });
}

void avdr_synth_result_free(avdr_synth_result* r) {
  if (!r) return;
  avdr_rttm_free(r->ref_rttm);
  avdr_rttm_free(r->hyp_rttm);
  avdr_transcript_free(r->ref_text);
  avdr_transcript_free(r->hyp_text);
  avdr_string_free(r->ledger);
  *r = {};
}

avdr_status avdr_write_file(const char* path, const char* data, size_t len) {
  AVDR_REQUIRE(path, "null argument");
  return guarded([&] { avdr::write_file(path, view(data, len)); });
}

avdr_status avdr_read_file(const char* path, char** out, size_t* len) {
  AVDR_REQUIRE(path && out, "null argument");
  return guarded([&] {
    const std::string data = avdr::read_file(path);
    *out = dup_string(data);
    if (len) *len = data.size();
  });
}

}  // extern "C"
