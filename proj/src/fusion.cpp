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

#include "avdr/fusion.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "avdr/diarization_metrics.hpp"

namespace avdr {
namespace {

// Votes and counts are compared after rounding to this resolution, which
// absorbs floating-point noise from summing normalized weights.
constexpr double kResolution = 1e9;

std::int64_t quantize(double x) { return std::llround(x * kResolution); }

}  // namespace

Diarization relabel_to_reference(const Diarization& base, const Diarization& other) {
  if (base.session() != other.session()) {
    throw Error(ErrorKind::kValidation,
                "session mismatch: '" + base.session() + "' vs '" + other.session() + "'");
  }
  const SpeakerMap map = optimal_speaker_map(base, other);
  std::set<std::string> taken;
  for (const auto& [id, _] : base.speakers()) taken.insert(id);

  std::map<std::string, std::string> rename;
  for (const auto& [ref, hyp] : map.pairs) rename[hyp] = ref;
  for (const auto& id : map.unmatched_hyp) {
    std::string fresh = id;
    for (int k = 1; taken.count(fresh); ++k) fresh = id + "-" + std::to_string(k);
    taken.insert(fresh);
    rename[id] = fresh;
  }

  Diarization out(other.session());
  for (const auto& [id, list] : other.speakers()) {
    for (const auto& iv : list) out.add(rename.at(id), iv);
  }
  return out;
}

Diarization fuse_channels(std::span<const Diarization> inputs, std::span<const double> weights) {
  if (inputs.empty()) throw Error(ErrorKind::kValidation, "fuse_channels: no inputs");
  if (!weights.empty() && weights.size() != inputs.size()) {
    throw Error(ErrorKind::kValidation, "fuse_channels: " + std::to_string(weights.size()) +
                                            " weights for " + std::to_string(inputs.size()) +
                                            " inputs");
  }
  std::vector<double> w(inputs.size(), 1.0);
  if (!weights.empty()) {
    for (std::size_t k = 0; k < weights.size(); ++k) {
      if (!(weights[k] > 0.0) || !std::isfinite(weights[k])) {
        throw Error(ErrorKind::kValidation, "fuse_channels: weights must be positive and finite");
      }
      w[k] = weights[k];
    }
  }
  double sum = 0.0;
  for (double x : w) sum += x;
  for (double& x : w) x /= sum;

  // canonical processing order: heavier first, equal weights by content
  std::vector<std::size_t> order_in(inputs.size());
  for (std::size_t k = 0; k < order_in.size(); ++k) order_in[k] = k;
  std::stable_sort(order_in.begin(), order_in.end(), [&](std::size_t a, std::size_t b) {
    const auto qa = quantize(w[a]), qb = quantize(w[b]);
    if (qa != qb) return qa > qb;
    return inputs[a].speakers() < inputs[b].speakers();
  });
  std::vector<double> ordered_w;
  for (std::size_t k : order_in) ordered_w.push_back(w[k]);
  w = std::move(ordered_w);

  std::vector<Diarization> relabeled;
  relabeled.reserve(inputs.size());
  relabeled.push_back(inputs[order_in[0]]);
  Diarization accumulated = inputs[order_in[0]];
  for (std::size_t k = 1; k < inputs.size(); ++k) {
    relabeled.push_back(relabel_to_reference(accumulated, inputs[order_in[k]]));
    for (const auto& [id, list] : relabeled.back().speakers()) {
      for (const auto& iv : list) accumulated.add(id, iv);
    }
  }

  std::vector<const Diarization*> ptrs;
  for (const auto& d : relabeled) ptrs.push_back(&d);
  const Tiling tiling = tile(ptrs);

  // global label index per (input, local speaker index)
  const std::vector<std::string> labels = accumulated.speaker_ids();
  std::vector<std::vector<std::size_t>> global(inputs.size());
  for (std::size_t k = 0; k < inputs.size(); ++k) {
    for (const auto& id : tiling.speakers[k]) {
      global[k].push_back(static_cast<std::size_t>(
          std::lower_bound(labels.begin(), labels.end(), id) - labels.begin()));
    }
  }

  Diarization out(inputs[0].session());
  std::vector<double> votes(labels.size());
  std::vector<std::int64_t> quantized(labels.size());
  std::vector<std::size_t> order;
  for (const auto& region : tiling.regions) {
    std::fill(votes.begin(), votes.end(), 0.0);
    double expected = 0.0;
    for (std::size_t k = 0; k < inputs.size(); ++k) {
      expected += w[k] * static_cast<double>(region.active[k].size());
      for (auto s : region.active[k]) votes[global[k][s]] += w[k];
    }
    // round half-up
    const auto count = static_cast<std::size_t>(
        (2 * quantize(expected) + static_cast<std::int64_t>(kResolution)) /
        (2 * static_cast<std::int64_t>(kResolution)));
    if (count == 0) continue;
    order.clear();
    for (std::size_t l = 0; l < labels.size(); ++l) {
      quantized[l] = quantize(votes[l]);
      if (quantized[l] > 0) order.push_back(l);
    }
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return quantized[a] > quantized[b]; });
    const std::size_t take = std::min(count, order.size());
    for (std::size_t t = 0; t < take; ++t) {
      out.add(labels[order[t]], {region.start, region.dur()});
    }
  }
  return out;
}

}  // namespace avdr
