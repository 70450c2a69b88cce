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

// avdr-score: diarization and recognition scoring from the command line.
// Exit codes: 0 success, 1 invalid input or arguments, 2 I/O failure.

#include <cstdio>
#include <cstring>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "avdr/avdr.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitIo = 2;

struct Failure {
  int code;
  std::string message;
};

void check(avdr_status st, const std::string& context = {}) {
  if (st == AVDR_OK) return;
  std::string msg = context.empty() ? "" : context + ": ";
  msg += avdr_last_error();
  throw Failure{st == AVDR_ERR_IO ? kExitIo : kExitInvalid, msg};
}

struct Deleter {
  void operator()(avdr_rttm* p) const { avdr_rttm_free(p); }
  void operator()(avdr_transcript* p) const { avdr_transcript_free(p); }
  void operator()(avdr_manifest* p) const { avdr_manifest_free(p); }
  void operator()(avdr_report* p) const { avdr_report_free(p); }
  void operator()(char* p) const { avdr_string_free(p); }
};
template <typename T>
using Owned = std::unique_ptr<T, Deleter>;

Owned<char> take(char* p) { return Owned<char>(p); }

std::string read_all(const std::string& path) {
  char* data = nullptr;
  size_t len = 0;
  check(avdr_read_file(path.c_str(), &data, &len));
  auto owned = take(data);
  return std::string(data, len);
}

void write_out(const std::string& path, const char* data) {
  if (path.empty() || path == "-") {
    std::fputs(data, stdout);
    return;
  }
  check(avdr_write_file(path.c_str(), data, std::strlen(data)));
}

Owned<avdr_rttm> load_rttms(const std::vector<std::string>& paths) {
  avdr_rttm* acc = nullptr;
  check(avdr_rttm_parse("", 0, &acc));
  Owned<avdr_rttm> out(acc);
  for (const auto& p : paths) {
    const std::string text = read_all(p);
    avdr_rttm* one = nullptr;
    check(avdr_rttm_parse(text.data(), text.size(), &one), p);
    Owned<avdr_rttm> owned(one);
    check(avdr_rttm_append(out.get(), one));
  }
  return out;
}

Owned<avdr_transcript> load_transcript(const std::string& path) {
  const std::string text = read_all(path);
  avdr_transcript* t = nullptr;
  check(avdr_transcript_parse(text.data(), text.size(), &t), path);
  return Owned<avdr_transcript>(t);
}

void emit_report(const avdr_report* r, const std::string& tsv_path) {
  char* text = nullptr;
  check(avdr_report_text(r, &text));
  auto t = take(text);
  std::fputs(text, stdout);
  if (!tsv_path.empty()) {
    char* tsv = nullptr;
    check(avdr_report_tsv(r, &tsv));
    auto owned = take(tsv);
    write_out(tsv_path, tsv);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Speaker diarization (DER) and multi-speaker recognition (cpCER) scoring"};
  app.require_subcommand(1);

  // score-der
  std::vector<std::string> der_ref, der_hyp;
  std::string tsv_path;
  int jobs = 1;
  bool brute_force = false;
  auto* der = app.add_subcommand("score-der", "DER of hypothesis RTTMs against reference RTTMs");
  der->add_option("--ref", der_ref, "reference RTTM file(s)")->required();
  der->add_option("--hyp", der_hyp, "hypothesis RTTM file(s)")->required();
  der->add_option("--jobs", jobs, "sessions scored concurrently")->check(CLI::PositiveNumber);
  der->add_option("--tsv", tsv_path, "also write the report as TSV");
  der->add_flag("--brute-force", brute_force, "enumerate every speaker map");

  // score-cpcer
  std::string ref_text, ref_rttm, hyp_text;
  bool keep_punct = false, lowercase = false;
  auto* cp = app.add_subcommand("score-cpcer", "cpCER of a hypothesis transcript");
  cp->add_option("--ref-text", ref_text, "reference transcript")->required();
  cp->add_option("--ref-rttm", ref_rttm, "reference RTTM giving chronological line order");
  cp->add_option("--hyp-text", hyp_text, "hypothesis transcript")->required();
  cp->add_option("--jobs", jobs, "sessions scored concurrently")->check(CLI::PositiveNumber);
  cp->add_option("--tsv", tsv_path, "also write the report as TSV");
  cp->add_flag("--brute-force", brute_force, "enumerate every stream permutation");
  cp->add_flag("--keep-punctuation", keep_punct, "score punctuation characters");
  cp->add_flag("--lowercase-latin", lowercase, "fold Latin capitals before scoring");

  // fuse
  std::vector<std::string> fuse_inputs;
  std::vector<double> weights;
  std::string out_path;
  auto* fuse = app.add_subcommand("fuse", "majority-vote fusion of several RTTMs");
  fuse->add_option("inputs", fuse_inputs, "input RTTMs")->required();
  fuse->add_option("--weights", weights, "one positive weight per input")->delimiter(',');
  fuse->add_option("-o,--output", out_path, "output RTTM (default stdout)");

  // binarize
  std::string matrix_path;
  avdr_binarize_options bin_opts;
  avdr_binarize_options_init(&bin_opts);
  auto* bin = app.add_subcommand("binarize", "frame probabilities to RTTM");
  bin->add_option("input", matrix_path, "probability matrix file")->required();
  bin->add_option("--threshold", bin_opts.threshold, "activation threshold")->capture_default_str();
  bin->add_option("--max-gap", bin_opts.max_gap_ms, "bridge gaps shorter than this (ms)")->capture_default_str();
  bin->add_option("--min-dur", bin_opts.min_dur_ms, "drop segments shorter than this (ms)")->capture_default_str();
  bin->add_option("-o,--output", out_path, "output RTTM (default stdout)");

  // manifest
  std::string manifest_rttm;
  auto* man = app.add_subcommand("manifest", "segment manifest from an RTTM");
  man->add_option("input", manifest_rttm, "RTTM file")->required();
  man->add_option("-o,--output", out_path, "output TSV (default stdout)");

  // assemble
  std::string manifest_path, texts_path;
  auto* asmb = app.add_subcommand("assemble", "transcript from a manifest and per-segment texts");
  asmb->add_option("--manifest", manifest_path, "manifest TSV")->required();
  asmb->add_option("--texts", texts_path, "'<segment_id> <text>' lines")->required();
  asmb->add_option("-o,--output", out_path, "output transcript (default stdout)");

  // synth
  avdr_synth_params sp;
  avdr_synth_params_init(&sp);
  std::string session = "S001", out_dir = ".";
  auto* syn = app.add_subcommand("synth", "synthetic reference/hypothesis pair with a known ledger");
  syn->add_option("--seed", sp.seed, "random seed")->capture_default_str();
  syn->add_option("--session", session, "session id")->capture_default_str();
  syn->add_option("--speakers", sp.speakers, "speaker count")->capture_default_str();
  syn->add_option("--duration-ms", sp.duration_ms, "session length")->capture_default_str();
  syn->add_option("--overlap", sp.overlap_ratio, "target overlapped share")->capture_default_str();
  syn->add_option("--silence", sp.silence_ratio, "target silent share")->capture_default_str();
  syn->add_option("--chars-per-second", sp.chars_per_second, "text density")->capture_default_str();
  syn->add_option("--fa-ms", sp.fa_ms, "injected false alarm")->capture_default_str();
  syn->add_option("--miss-ms", sp.miss_ms, "injected missed speech")->capture_default_str();
  syn->add_option("--spkerr-ms", sp.spkerr_ms, "injected speaker confusion")->capture_default_str();
  syn->add_option("--sub", sp.sub, "injected substitutions")->capture_default_str();
  syn->add_option("--del", sp.del, "injected deletions")->capture_default_str();
  syn->add_option("--ins", sp.ins, "injected insertions")->capture_default_str();
  syn->add_option("--out-dir", out_dir, "directory for ref/hyp/ledger files")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInvalid;
  }

  try {
    if (*der) {
      const auto ref = load_rttms(der_ref);
      const auto hyp = load_rttms(der_hyp);
      const avdr_der_options o{jobs, brute_force ? 1 : 0};
      avdr_report* r = nullptr;
      check(avdr_score_der(ref.get(), hyp.get(), &o, &r));
      Owned<avdr_report> rep(r);
      emit_report(r, tsv_path);
    } else if (*cp) {
      const auto ref = load_transcript(ref_text);
      const auto hyp = load_transcript(hyp_text);
      Owned<avdr_rttm> turns;
      if (!ref_rttm.empty()) turns = load_rttms({ref_rttm});
      const avdr_cpcer_options o{jobs, brute_force ? 1 : 0, keep_punct ? 0 : 1, lowercase ? 1 : 0};
      avdr_report* r = nullptr;
      check(avdr_score_cpcer(ref.get(), turns.get(), hyp.get(), &o, &r));
      Owned<avdr_report> rep(r);
      emit_report(r, tsv_path);
    } else if (*fuse) {
      std::vector<Owned<avdr_rttm>> inputs;
      std::vector<const avdr_rttm*> ptrs;
      for (const auto& p : fuse_inputs) {
        inputs.push_back(load_rttms({p}));
        ptrs.push_back(inputs.back().get());
      }
      avdr_rttm* fused = nullptr;
      check(avdr_fuse(ptrs.data(), weights.empty() ? nullptr : weights.data(), ptrs.size(), &fused));
      Owned<avdr_rttm> owned(fused);
      char* text = nullptr;
      check(avdr_rttm_emit(fused, &text));
      write_out(out_path, take(text).get());
    } else if (*bin) {
      const std::string matrix = read_all(matrix_path);
      avdr_rttm* turns = nullptr;
      check(avdr_binarize(matrix.data(), matrix.size(), &bin_opts, &turns), matrix_path);
      Owned<avdr_rttm> owned(turns);
      char* text = nullptr;
      check(avdr_rttm_emit(turns, &text));
      write_out(out_path, take(text).get());
    } else if (*man) {
      const auto turns = load_rttms({manifest_rttm});
      avdr_manifest* m = nullptr;
      check(avdr_manifest_build(turns.get(), &m));
      Owned<avdr_manifest> owned(m);
      char* text = nullptr;
      check(avdr_manifest_emit(m, &text));
      write_out(out_path, take(text).get());
    } else if (*asmb) {
      const std::string man_text = read_all(manifest_path);
      avdr_manifest* m = nullptr;
      check(avdr_manifest_parse(man_text.data(), man_text.size(), &m), manifest_path);
      Owned<avdr_manifest> owned(m);
      const std::string seg_text = read_all(texts_path);
      avdr_transcript* t = nullptr;
      check(avdr_assemble(m, seg_text.data(), seg_text.size(), &t), texts_path);
      Owned<avdr_transcript> tr(t);
      char* text = nullptr;
      check(avdr_transcript_emit(t, &text));
      write_out(out_path, take(text).get());
    } else if (*syn) {
      sp.session = session.c_str();
      avdr_synth_result res;
      check(avdr_synth(&sp, &res));
      struct Guard {
        avdr_synth_result* r;
        ~Guard() { avdr_synth_result_free(r); }
      } guard{&res};
      const std::string dir = out_dir.empty() ? "." : out_dir;
      check(avdr_rttm_write(res.ref_rttm, (dir + "/ref.rttm").c_str()));
      check(avdr_rttm_write(res.hyp_rttm, (dir + "/hyp.rttm").c_str()));
      check(avdr_transcript_write(res.ref_text, (dir + "/ref.txt").c_str()));
      check(avdr_transcript_write(res.hyp_text, (dir + "/hyp.txt").c_str()));
      write_out(dir + "/ledger.tsv", res.ledger);
      std::printf("realized_overlap\t%.4f\nrealized_silence\t%.4f\n", res.realized_overlap,
                  res.realized_silence);
    }
  } catch (const Failure& f) {
    std::fprintf(stderr, "avdr-score: %s\n", f.message.c_str());
    return f.code;
  }
  return kExitOk;
}
