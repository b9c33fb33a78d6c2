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

#include "uwvos/stats.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "json.hpp"
#include "uwvos/error.h"
#include "uwvos/image_io.h"
#include "uwvos/parallel.h"

namespace uwvos {

double Histogram::total() const { return std::accumulate(counts.begin(), counts.end(), 0.0); }

std::size_t Histogram::mode_bin() const {
  return static_cast<std::size_t>(std::max_element(counts.begin(), counts.end()) -
                                  counts.begin());
}

Histogram FixedWidthHistogram(std::span<const double> values, double origin, double width,
                              std::optional<std::size_t> bins) {
  if (!(width > 0.0) || !std::isfinite(width) || !std::isfinite(origin)) {
    throw Error(ErrorCode::kInvalidArgument, "histogram bin width must be positive and finite");
  }
  std::size_t n = bins.value_or(1);
  if (n == 0) throw Error(ErrorCode::kInvalidArgument, "histogram needs at least one bin");
  auto index_of = [&](double v) -> std::int64_t {
    return static_cast<std::int64_t>(std::floor((v - origin) / width));
  };
  if (!bins) {
    for (double v : values) {
      n = std::max<std::size_t>(n, static_cast<std::size_t>(std::max<std::int64_t>(index_of(v), 0)) + 1);
    }
  }
  Histogram h;
  h.edges.resize(n + 1);
  for (std::size_t i = 0; i <= n; ++i) h.edges[i] = origin + width * static_cast<double>(i);
  h.counts.assign(n, 0.0);
  for (double v : values) {
    const auto i = std::clamp<std::int64_t>(index_of(v), 0, static_cast<std::int64_t>(n) - 1);
    h.counts[static_cast<std::size_t>(i)] += 1.0;
  }
  return h;
}

Histogram Normalize(const Histogram& h) {
  Histogram out = h;
  out.normalized = true;
  const double sum = h.total();
  if (sum > 0.0) {
    for (double& c : out.counts) c /= sum;
  }
  return out;
}

std::vector<VideoScan> ScanDataset(const DatasetIndex& index, unsigned threads) {
  std::vector<const VideoEntry*> videos;
  for (const auto& [id, v] : index.videos) videos.push_back(&v);
  std::vector<VideoScan> scan(videos.size());
  ParallelFor(videos.size(), threads, [&](std::size_t i) {
    scan[i].video_id = videos[i]->video_id;
    scan[i].frames = videos[i]->frame_count();
    scan[i].tracks = SummarizeVideo(index, *videos[i]);
  });
  return scan;
}

namespace {

LengthStats LengthStatsOf(const std::vector<std::size_t>& frame_counts, double bin_width) {
  LengthStats stats;
  std::vector<double> lengths;
  for (std::size_t n : frame_counts) {
    lengths.push_back(static_cast<double>(n));
    stats.max = std::max(stats.max, n);
  }
  if (!lengths.empty()) {
    stats.mean = std::accumulate(lengths.begin(), lengths.end(), 0.0) /
                 static_cast<double>(lengths.size());
  }
  stats.histogram = FixedWidthHistogram(lengths, 0.0, bin_width);
  return stats;
}

}  // namespace

LengthStats VideoLengthHistogram(const DatasetIndex& index, double bin_width) {
  std::vector<std::size_t> counts;
  for (const auto& [id, v] : index.videos) counts.push_back(v.frame_count());
  return LengthStatsOf(counts, bin_width);
}

LengthStats VideoLengthHistogram(std::span<const VideoScan> scan, double bin_width) {
  std::vector<std::size_t> counts;
  for (const auto& v : scan) counts.push_back(v.frames);
  return LengthStatsOf(counts, bin_width);
}

MaskSizeStats MaskSizeDistribution(std::span<const VideoScan> scan, double bin_width,
                                   double small_threshold) {
  MaskSizeStats stats;
  std::size_t small = 0;
  for (const auto& video : scan) {
    for (const auto& [id, track] : video.tracks) {
      const double image_area = static_cast<double>(track.width) * track.height;
      double sum = 0.0;
      std::size_t n = 0;
      for (const auto& s : track.frames) {
        if (!s.present()) continue;
        sum += static_cast<double>(s.area) / image_area;
        ++n;
      }
      if (n == 0) {
        ++stats.absent_instances;
        continue;
      }
      const double ratio = sum / static_cast<double>(n);
      stats.ratios.push_back(ratio);
      if (ratio < small_threshold) ++small;
    }
  }
  const auto bins = static_cast<std::size_t>(std::llround(1.0 / bin_width));
  stats.histogram = FixedWidthHistogram(stats.ratios, 0.0, bin_width, std::max<std::size_t>(bins, 1));
  if (!stats.ratios.empty()) {
    stats.small_fraction = static_cast<double>(small) / static_cast<double>(stats.ratios.size());
  }
  return stats;
}

MaskSizeStats MaskSizeDistribution(const DatasetIndex& index, unsigned threads) {
  const auto scan = ScanDataset(index, threads);
  return MaskSizeDistribution(scan);
}

std::filesystem::path FindImageFrame(const DatasetIndex& index, const VideoEntry& video,
                                     std::size_t frame) {
  const auto dir = index.root_path / "JPEGImages" / video.video_id;
  for (const char* ext : {".jpg", ".jpeg", ".png"}) {
    auto path = dir / (video.frame_names.at(frame) + ext);
    if (std::filesystem::is_regular_file(path)) return path;
  }
  throw Error(ErrorCode::kMissingFrames, "no image for frame '" + video.frame_names.at(frame) +
                                             "' of video '" + video.video_id + "' under " +
                                             dir.string());
}

std::array<double, 3> MeanChannelIntensity(const DatasetIndex& index, const VideoEntry& video) {
  const auto image = DecodeRgbImage(ReadFileBytes(FindImageFrame(index, video, 0)));
  std::array<std::uint64_t, 3> sums{};
  for (std::size_t i = 0; i < image.pixels.size(); i += 3) {
    sums[0] += image.pixels[i];
    sums[1] += image.pixels[i + 1];
    sums[2] += image.pixels[i + 2];
  }
  const double n = static_cast<double>(image.pixels.size() / 3);
  return {static_cast<double>(sums[0]) / n, static_cast<double>(sums[1]) / n,
          static_cast<double>(sums[2]) / n};
}

ChannelIntensityStats ChannelIntensityDistribution(std::span<const DatasetIndex> indexes,
                                                   unsigned threads, double bin_width) {
  ChannelIntensityStats stats;
  std::vector<std::pair<const DatasetIndex*, const VideoEntry*>> videos;
  for (const auto& index : indexes) {
    for (const auto& [id, v] : index.videos) {
      videos.emplace_back(&index, &v);
      stats.video_ids.push_back(id);
    }
  }
  stats.means.resize(videos.size());
  ParallelFor(videos.size(), threads, [&](std::size_t i) {
    stats.means[i] = MeanChannelIntensity(*videos[i].first, *videos[i].second);
  });
  const auto bins = static_cast<std::size_t>(std::ceil(256.0 / bin_width));
  for (int c = 0; c < 3; ++c) {
    std::vector<double> channel;
    for (const auto& m : stats.means) channel.push_back(m[c]);
    stats.histograms[c] = FixedWidthHistogram(channel, 0.0, bin_width, bins);
    stats.modes[c] = stats.histograms[c].bin_center(stats.histograms[c].mode_bin());
  }
  return stats;
}

namespace {

[[noreturn]] void BadTaxonomy(const std::string& what) {
  throw Error(ErrorCode::kSchemaViolation, "taxonomy: " + what);
}

void AddMapping(Taxonomy& taxonomy, const std::string& cls, const std::string& superclass) {
  if (std::find(kSuperclasses.begin(), kSuperclasses.end(), superclass) == kSuperclasses.end()) {
    BadTaxonomy("'" + superclass + "' is not a known superclass");
  }
  const auto [it, inserted] = taxonomy.emplace(cls, superclass);
  if (!inserted && it->second != superclass) {
    BadTaxonomy("class '" + cls + "' mapped to both '" + it->second + "' and '" + superclass + "'");
  }
}

}  // namespace

Taxonomy ParseTaxonomy(std::string_view json_text) {
  nlohmann::json root;
  try {
    root = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    BadTaxonomy(e.what());
  }
  if (!root.is_object()) BadTaxonomy("top level must be an object");
  Taxonomy taxonomy;
  for (const auto& [key, value] : root.items()) {
    if (value.is_string()) {
      AddMapping(taxonomy, key, value.get<std::string>());
    } else if (value.is_array()) {
      for (const auto& cls : value) {
        if (!cls.is_string()) BadTaxonomy("class names under '" + key + "' must be strings");
        AddMapping(taxonomy, cls.get<std::string>(), key);
      }
    } else {
      BadTaxonomy("entry '" + key + "' must be a string or an array of strings");
    }
  }
  return taxonomy;
}

Taxonomy LoadTaxonomy(const std::filesystem::path& path) {
  return ParseTaxonomy(ReadFileText(path));
}

const std::string& SuperclassOf(const Taxonomy& taxonomy, const std::string& category) {
  const auto it = taxonomy.find(category);
  if (it == taxonomy.end()) {
    throw Error(ErrorCode::kUnmappedCategory,
                "category '" + category + "' has no superclass in the taxonomy");
  }
  return it->second;
}

std::int64_t CategoryDistribution::total() const {
  std::int64_t sum = 0;
  for (const auto& [super, classes] : counts) {
    for (const auto& [cls, n] : classes) sum += n;
  }
  return sum;
}

std::size_t CategoryDistribution::class_count() const {
  std::size_t n = 0;
  for (const auto& [super, classes] : counts) n += classes.size();
  return n;
}

std::vector<std::pair<std::string, std::int64_t>> CategoryDistribution::top(
    const std::string& superclass, std::size_t k) const {
  std::vector<std::pair<std::string, std::int64_t>> out;
  const auto it = counts.find(superclass);
  if (it == counts.end()) return out;
  out.assign(it->second.begin(), it->second.end());
  std::stable_sort(out.begin(), out.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  if (out.size() > k) out.resize(k);
  return out;
}

CategoryDistribution CategoryDistributionOf(std::span<const DatasetIndex> indexes,
                                            const Taxonomy& taxonomy) {
  CategoryDistribution dist;
  for (const auto& index : indexes) {
    for (const auto& [vid, video] : index.videos) {
      for (const auto& [oid, meta] : video.objects) {
        ++dist.counts[SuperclassOf(taxonomy, meta.category)][meta.category];
      }
    }
  }
  return dist;
}

DatasetSummary SummarizeDataset(std::span<const VideoScan> scan) {
  DatasetSummary summary;
  summary.videos = scan.size();
  for (const auto& video : scan) {
    summary.frames += video.frames;
    summary.instances += video.tracks.size();
    for (const auto& [id, track] : video.tracks) summary.annotations += track.present_count();
  }
  return summary;
}

}  // namespace uwvos
