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

#ifndef UWVOS_STATS_H_
#define UWVOS_STATS_H_

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "uwvos/dataset.h"

namespace uwvos {

// Fixed-width bins [edges[i], edges[i+1]). Values past the last edge land in
// the last bin, values below the first in the first.
struct Histogram {
  std::vector<double> edges;
  std::vector<double> counts;
  bool normalized = false;

  std::size_t bins() const { return counts.size(); }
  double total() const;
  // Lowest-index bin with the largest count.
  std::size_t mode_bin() const;
  double bin_center(std::size_t i) const { return 0.5 * (edges[i] + edges[i + 1]); }
};

// With `bins` unset the histogram grows to cover the largest value.
Histogram FixedWidthHistogram(std::span<const double> values, double origin, double width,
                              std::optional<std::size_t> bins = std::nullopt);
// Same edges, counts divided by their sum. An empty histogram stays zero.
Histogram Normalize(const Histogram& h);

// Per-video geometry gathered in one pass over the annotations.
struct VideoScan {
  std::string video_id;
  std::size_t frames = 0;
  std::map<int, TrackSummary> tracks;
};

std::vector<VideoScan> ScanDataset(const DatasetIndex& index, unsigned threads = 1);

struct LengthStats {
  Histogram histogram;
  double mean = 0.0;
  std::size_t max = 0;
};

inline constexpr double kLengthBinWidth = 100.0;
inline constexpr double kMaskRatioBinWidth = 0.005;
inline constexpr double kIntensityBinWidth = 10.0;
inline constexpr double kSmallMaskRatio = 0.01;

LengthStats VideoLengthHistogram(const DatasetIndex& index,
                                 double bin_width = kLengthBinWidth);
LengthStats VideoLengthHistogram(std::span<const VideoScan> scan,
                                 double bin_width = kLengthBinWidth);

struct MaskSizeStats {
  Histogram histogram;
  // Per-instance mean over present frames of area / (width * height).
  std::vector<double> ratios;
  double small_fraction = 0.0;
  // Instances never present; they carry no ratio.
  std::size_t absent_instances = 0;
};

MaskSizeStats MaskSizeDistribution(std::span<const VideoScan> scan,
                                   double bin_width = kMaskRatioBinWidth,
                                   double small_threshold = kSmallMaskRatio);
MaskSizeStats MaskSizeDistribution(const DatasetIndex& index, unsigned threads = 1);

struct ChannelIntensityStats {
  std::vector<std::string> video_ids;
  std::vector<std::array<double, 3>> means;  // R, G, B of each video's first frame
  std::array<Histogram, 3> histograms;
  std::array<double, 3> modes{};  // center of each channel's mode bin
};

// Frames are read from `<root>/JPEGImages/<video>/<frame>.{jpg,jpeg,png}`.
// Throws Error{kMissingFrames}.
std::filesystem::path FindImageFrame(const DatasetIndex& index, const VideoEntry& video,
                                     std::size_t frame);
std::array<double, 3> MeanChannelIntensity(const DatasetIndex& index, const VideoEntry& video);
// Pools the first frames of every video of every index.
ChannelIntensityStats ChannelIntensityDistribution(std::span<const DatasetIndex> indexes,
                                                   unsigned threads = 1,
                                                   double bin_width = kIntensityBinWidth);
inline ChannelIntensityStats ChannelIntensityDistribution(const DatasetIndex& index,
                                                          unsigned threads = 1,
                                                          double bin_width = kIntensityBinWidth) {
  return ChannelIntensityDistribution(std::span<const DatasetIndex>(&index, 1), threads,
                                      bin_width);
}

inline constexpr std::array<std::string_view, 13> kSuperclasses = {
    "fish",     "reptiles",    "mammals",       "persons",   "molluscs",
    "crustaceans", "coelenterates", "chordates", "amphibians", "birds",
    "arthropods", "artifacts",   "natural objects"};

// class -> superclass.
using Taxonomy = std::map<std::string, std::string>;

// Accepts {"class": "superclass", ...} or {"superclass": ["class", ...], ...}.
// Throws Error{kSchemaViolation}.
Taxonomy ParseTaxonomy(std::string_view json_text);
Taxonomy LoadTaxonomy(const std::filesystem::path& path);

struct CategoryDistribution {
  // superclass -> class -> instance count
  std::map<std::string, std::map<std::string, std::int64_t>> counts;

  std::int64_t total() const;
  std::size_t class_count() const;
  // Classes of one superclass by descending count, ties by name.
  std::vector<std::pair<std::string, std::int64_t>> top(const std::string& superclass,
                                                         std::size_t k) const;
};

// Throws Error{kUnmappedCategory}.
CategoryDistribution CategoryDistributionOf(std::span<const DatasetIndex> indexes,
                                            const Taxonomy& taxonomy);
inline CategoryDistribution CategoryDistributionOf(const DatasetIndex& index,
                                                   const Taxonomy& taxonomy) {
  return CategoryDistributionOf(std::span<const DatasetIndex>(&index, 1), taxonomy);
}
const std::string& SuperclassOf(const Taxonomy& taxonomy, const std::string& category);

struct DatasetSummary {
  std::size_t videos = 0;
  std::size_t frames = 0;
  std::size_t instances = 0;
  // Present (object, frame) pairs.
  std::size_t annotations = 0;
};

DatasetSummary SummarizeDataset(std::span<const VideoScan> scan);

}  // namespace uwvos

#endif  // UWVOS_STATS_H_
