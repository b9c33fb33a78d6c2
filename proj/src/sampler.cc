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

#include "uwvos/sampler.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "json.hpp"
#include "uwvos/error.h"

namespace uwvos {

std::size_t SubsetSize(double fraction, std::size_t n) {
  if (!(fraction > 0.0 && fraction <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "fraction must lie in (0, 1]");
  }
  const auto count = static_cast<std::size_t>(std::llround(fraction * static_cast<double>(n)));
  return std::clamp<std::size_t>(count, 1, std::max<std::size_t>(n, 1));
}

std::uint64_t BoundedRandom(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t threshold = (0 - bound) % bound;
  while (true) {
    const std::uint64_t x = rng();
    if (x >= threshold) return x % bound;
  }
}

namespace {

void Shuffle(std::vector<std::size_t>& v, std::mt19937_64& rng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    std::swap(v[i - 1], v[BoundedRandom(rng, i)]);
  }
}

}  // namespace

std::vector<std::size_t> SeededPermutation(std::size_t n, std::uint64_t seed) {
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::mt19937_64 rng(seed);
  Shuffle(perm, rng);
  return perm;
}

SubsetResult SampleSubset(const DatasetIndex& index, const SubsetSpec& spec,
                          const Taxonomy* taxonomy) {
  if (index.split != Split::kTrain && index.split != Split::kCustom) {
    throw Error(ErrorCode::kWrongSplit, "subsets are drawn from the train split, not '" +
                                            std::string(SplitName(index.split)) + "'");
  }
  if (index.videos.empty()) throw Error(ErrorCode::kEmptyTrainSet, "the split has no videos");
  if (spec.stratify_by_superclass && taxonomy == nullptr) {
    throw Error(ErrorCode::kInvalidArgument, "stratified sampling needs a taxonomy");
  }

  std::vector<std::string> ids;
  for (const auto& [id, v] : index.videos) ids.push_back(id);
  const std::size_t n = ids.size();
  const std::size_t count = SubsetSize(spec.fraction, n);

  std::vector<std::size_t> chosen;
  if (!spec.stratify_by_superclass) {
    auto perm = SeededPermutation(n, spec.seed);
    chosen.assign(perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>(count));
  } else {
    std::map<std::string, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < n; ++i) {
      const auto& video = index.videos.at(ids[i]);
      groups[SuperclassOf(*taxonomy, video.objects.begin()->second.category)].push_back(i);
    }
    struct Quota {
      std::vector<std::size_t>* members;
      std::size_t take;
      std::size_t remainder;
      std::size_t order;
    };
    std::vector<Quota> quotas;
    std::size_t assigned = 0;
    for (auto& [name, members] : groups) {
      const std::size_t scaled = count * members.size();
      quotas.push_back({&members, scaled / n, scaled % n, quotas.size()});
      assigned += scaled / n;
    }
    std::vector<Quota*> by_remainder;
    for (auto& q : quotas) by_remainder.push_back(&q);
    std::stable_sort(by_remainder.begin(), by_remainder.end(),
                     [](const Quota* a, const Quota* b) { return a->remainder > b->remainder; });
    for (std::size_t k = 0; assigned < count; ++k, ++assigned) ++by_remainder[k]->take;

    std::mt19937_64 rng(spec.seed);
    for (auto& q : quotas) {
      std::vector<std::size_t> perm(q.members->size());
      std::iota(perm.begin(), perm.end(), 0);
      Shuffle(perm, rng);
      for (std::size_t k = 0; k < q.take; ++k) chosen.push_back((*q.members)[perm[k]]);
    }
  }

  std::sort(chosen.begin(), chosen.end());
  SubsetResult result;
  result.spec = spec;
  result.source_videos = n;
  for (std::size_t i : chosen) result.video_ids.push_back(ids[i]);
  return result;
}

std::string ManifestText(const SubsetResult& result) {
  nlohmann::ordered_json header;
  header["fraction"] = result.spec.fraction;
  header["seed"] = result.spec.seed;
  header["stratify"] = result.spec.stratify_by_superclass;
  header["count"] = result.video_ids.size();
  header["source_videos"] = result.source_videos;
  header["toolkit_version"] = UWVOS_VERSION;
  std::string text = header.dump() + "\n";
  for (const auto& id : result.video_ids) text += id + "\n";
  return text;
}

}  // namespace uwvos
