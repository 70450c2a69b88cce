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

/* C interface to the avdr scoring library. Every function returns an
 * avdr_status; on failure avdr_last_error() describes the problem for the
 * calling thread. Strings returned through char** are owned by the caller
 * and released with avdr_string_free. */
#ifndef AVDR_AVDR_H_
#define AVDR_AVDR_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define AVDR_API __declspec(dllexport)
#else
#define AVDR_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum avdr_status {
  AVDR_OK = 0,
  AVDR_ERR_PARSE = 1,
  AVDR_ERR_VALIDATION = 2,
  AVDR_ERR_IO = 3,
  AVDR_ERR_UNDEFINED = 4,
  AVDR_ERR_ARGUMENT = 5,
  AVDR_ERR_INTERNAL = 6
} avdr_status;

typedef struct avdr_rttm avdr_rttm;             /* speaker turns */
typedef struct avdr_transcript avdr_transcript; /* utterance lines */
typedef struct avdr_manifest avdr_manifest;     /* segment manifest */
typedef struct avdr_report avdr_report;         /* scoring report */

/* Message of the last failed call on this thread; "" if none. */
AVDR_API const char* avdr_last_error(void);
/* 1-based input line of the last failure, 0 if not tied to a line. */
AVDR_API size_t avdr_last_error_line(void);
AVDR_API void avdr_string_free(char* s);

/* RTTM */
AVDR_API avdr_status avdr_rttm_read(const char* path, avdr_rttm** out);
AVDR_API avdr_status avdr_rttm_parse(const char* text, size_t len, avdr_rttm** out);
AVDR_API avdr_status avdr_rttm_emit(const avdr_rttm* rttm, char** out);
AVDR_API avdr_status avdr_rttm_write(const avdr_rttm* rttm, const char* path);
AVDR_API size_t avdr_rttm_size(const avdr_rttm* rttm);
/* Appends every turn of `src` to `dst`. */
AVDR_API avdr_status avdr_rttm_append(avdr_rttm* dst, const avdr_rttm* src);
AVDR_API void avdr_rttm_free(avdr_rttm* rttm);

/* Transcripts */
AVDR_API avdr_status avdr_transcript_read(const char* path, avdr_transcript** out);
AVDR_API avdr_status avdr_transcript_parse(const char* text, size_t len, avdr_transcript** out);
AVDR_API avdr_status avdr_transcript_emit(const avdr_transcript* t, char** out);
AVDR_API avdr_status avdr_transcript_write(const avdr_transcript* t, const char* path);
AVDR_API size_t avdr_transcript_size(const avdr_transcript* t);
AVDR_API void avdr_transcript_free(avdr_transcript* t);

/* Scoring */
typedef struct avdr_der_options {
  int jobs;        /* sessions scored concurrently; <= 0 means 1 */
  int brute_force; /* nonzero: enumerate every speaker map */
} avdr_der_options;

typedef struct avdr_cpcer_options {
  int jobs;
  int brute_force;       /* nonzero: enumerate every stream permutation */
  int strip_punctuation; /* nonzero: remove punctuation before scoring */
  int lowercase_latin;   /* nonzero: fold A-Z to a-z before scoring */
} avdr_cpcer_options;

AVDR_API void avdr_der_options_init(avdr_der_options* o);
AVDR_API void avdr_cpcer_options_init(avdr_cpcer_options* o);

AVDR_API avdr_status avdr_score_der(const avdr_rttm* ref, const avdr_rttm* hyp,
                                    const avdr_der_options* options, avdr_report** out);
/* `ref_rttm` may be NULL; when given it fixes the chronological order of the
 * reference lines of each speaker. */
AVDR_API avdr_status avdr_score_cpcer(const avdr_transcript* ref, const avdr_rttm* ref_rttm,
                                      const avdr_transcript* hyp,
                                      const avdr_cpcer_options* options, avdr_report** out);

typedef struct avdr_der_row {
  int64_t total_ms;
  int64_t fa_ms;
  int64_t miss_ms;
  int64_t spkerr_ms;
} avdr_der_row;

typedef struct avdr_cpcer_row {
  int64_t n;
  int64_t s;
  int64_t d;
  int64_t i;
} avdr_cpcer_row;

AVDR_API avdr_status avdr_report_text(const avdr_report* r, char** out);
AVDR_API avdr_status avdr_report_tsv(const avdr_report* r, char** out);
/* Session rows in report order; index == avdr_report_sessions() is the
 * aggregate row. The session id is borrowed from the report. */
AVDR_API size_t avdr_report_sessions(const avdr_report* r);
AVDR_API avdr_status avdr_report_der_row(const avdr_report* r, size_t index, const char** session,
                                         avdr_der_row* row);
AVDR_API avdr_status avdr_report_cpcer_row(const avdr_report* r, size_t index,
                                           const char** session, avdr_cpcer_row* row);
AVDR_API void avdr_report_free(avdr_report* r);

/* Channel fusion: per session, majority vote over `count` inputs. `weights`
 * may be NULL for equal weights. */
AVDR_API avdr_status avdr_fuse(const avdr_rttm* const* inputs, const double* weights,
                               size_t count, avdr_rttm** out);

/* Frame probabilities to smoothed turns. */
typedef struct avdr_binarize_options {
  double threshold;   /* default 0.5 */
  int64_t max_gap_ms; /* default 300 */
  int64_t min_dur_ms; /* default 200 */
} avdr_binarize_options;

AVDR_API void avdr_binarize_options_init(avdr_binarize_options* o);
AVDR_API avdr_status avdr_binarize(const char* matrix_text, size_t len,
                                   const avdr_binarize_options* options, avdr_rttm** out);

/* Manifest */
AVDR_API avdr_status avdr_manifest_build(const avdr_rttm* rttm, avdr_manifest** out);
AVDR_API avdr_status avdr_manifest_parse(const char* text, size_t len, avdr_manifest** out);
AVDR_API avdr_status avdr_manifest_emit(const avdr_manifest* m, char** out);
AVDR_API size_t avdr_manifest_size(const avdr_manifest* m);
AVDR_API void avdr_manifest_free(avdr_manifest* m);
/* `segment_texts` holds "<segment_id> <text>" lines. */
AVDR_API avdr_status avdr_assemble(const avdr_manifest* m, const char* segment_texts, size_t len,
                                   avdr_transcript** out);

/* Synthetic sessions */
typedef struct avdr_synth_params {
  const char* session; /* default "S001" */
  int speakers;        /* default 4 */
  int64_t duration_ms; /* default 600000 */
  double overlap_ratio;
  double silence_ratio;
  double chars_per_second;
  uint64_t seed;
  int64_t fa_ms; /* injected diarization errors, multiples of 10 ms */
  int64_t miss_ms;
  int64_t spkerr_ms;
  int64_t sub; /* injected character edits */
  int64_t del;
  int64_t ins;
} avdr_synth_params;

typedef struct avdr_synth_result {
  avdr_rttm* ref_rttm;
  avdr_rttm* hyp_rttm;
  avdr_transcript* ref_text;
  avdr_transcript* hyp_text;
  char* ledger; /* "<KIND>\t<amount>" lines */
  double realized_overlap;
  double realized_silence;
} avdr_synth_result;

AVDR_API void avdr_synth_params_init(avdr_synth_params* p);
AVDR_API avdr_status avdr_synth(const avdr_synth_params* p, avdr_synth_result* out);
/* Frees every member and zeroes the struct. */
AVDR_API void avdr_synth_result_free(avdr_synth_result* r);

/* Whole-file write used by tools; `len` bytes of `data`. */
AVDR_API avdr_status avdr_write_file(const char* path, const char* data, size_t len);
AVDR_API avdr_status avdr_read_file(const char* path, char** out, size_t* len);

#ifdef __cplusplus
}
#endif

#endif /* AVDR_AVDR_H_ */
