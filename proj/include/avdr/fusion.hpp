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

#pragma once

#include <span>
#include <vector>

#include "avdr/timeline.hpp"

namespace avdr {

/// Renames the speakers of `other` to the labels of `base` through the
/// maximum-overlap speaker map. Speakers of `other` left unmatched keep their
/// id when it is unused in `base`, otherwise receive "<id>-<k>" with the
/// smallest free k.
Diarization relabel_to_reference(const Diarization& base, const Diarization& other);

/// Overlap-aware label voting across several diarizations of one session
/// (e.g. one per microphone channel).
///
/// Inputs are processed in a canonical order: heavier weights first, equal
/// weights by content, so permuting equally weighted inputs gives the same
/// output. Labels are harmonized sequentially: the first input seeds the
/// label space and every later input is relabeled against the union of the
/// inputs relabeled so far. On the joint region tiling each label's vote is the sum
/// of the weights of the inputs where it is active; the speaker count is the
/// weighted mean of the per-input active counts, rounded half-up; the output
/// activates that many labels with the highest positive votes, ties going to
/// the smaller label.
///
/// `weights` may be empty (equal weights) or give one positive weight per
/// input; they are normalized to sum to 1.
Diarization fuse_channels(std::span<const Diarization> inputs,
                          std::span<const double> weights = {});

}  // namespace avdr
