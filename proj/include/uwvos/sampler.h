/* Copyright 2026 The UW-VOS Toolkit Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#ifndef UWVOS_SAMPLER_H_
#define UWVOS_SAMPLER_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "uwvos/dataset.h"
#include "uwvos/stats.h"

namespace uwvos {

struct SubsetSpec {
  double fraction = 1.0;
  std::uint64_t seed = 0;
  bool stratify_by_superclass = false;
};

struct SubsetResult {
  SubsetSpec spec;
  std::size_t source_videos = 0;
  // Selected ids in canonical (sorted) order.
  std::vector<std::string> video_ids;
};

// max(1, round(fraction * n)). Throws Error{kInvalidArgument} unless
// 0 < fraction <= 1.
std::size_t SubsetSize(double fraction, std::size_t n);

// Uniform integer in [0, bound) by rejection; same stream on every platform.
std::uint64_t BoundedRandom(std::mt19937_64& rng, std::uint64_t bound);
// Fisher-Yates shuffle of 0..n-1.
std::vector<std::size_t> SeededPermutation(std::size_t n, std::uint64_t seed);

// Unstratified subsets are prefixes of one seeded permutation, so a smaller
// fraction selects a subset of a larger one under the same seed.
// Stratified mode allots largest-remainder quotas per superclass (of each
// video's lowest-id object) and needs `taxonomy`.
// Throws Error{kWrongSplit, kEmptyTrainSet, kInvalidArgument, kUnmappedCategory}.
SubsetResult SampleSubset(const DatasetIndex& index, const SubsetSpec& spec,
                          const Taxonomy* taxonomy = nullptr);

// One-line JSON header then one video id per line.
std::string ManifestText(const SubsetResult& result);

}  // namespace uwvos

#endif  // UWVOS_SAMPLER_H_
