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

#ifndef UWVOS_DATASET_H_
#define UWVOS_DATASET_H_

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "uwvos/mask.h"

namespace uwvos {

enum class Split { kTrain, kVal, kTest, kCustom };

std::string_view SplitName(Split split);
// Accepts "train", "val" (or "valid"), "test", "custom".
Split ParseSplit(std::string_view name);

// Orders frame identifiers by the numeric value of their stem; ties and
// non-numeric stems fall back to lexicographic order.
bool FrameNameLess(std::string_view a, std::string_view b);

struct ObjectMeta {
  int object_id = 0;
  std::string category;
  std::string first_frame;
  // Frames the meta file lists for this object, in frame order.
  std::vector<std::string> frames;
};

struct VideoEntry {
  std::string video_id;
  std::vector<std::string> frame_names;
  int width = 0;
  int height = 0;
  std::map<int, ObjectMeta> objects;

  std::size_t frame_count() const { return frame_names.size(); }
  std::optional<std::size_t> frame_index(std::string_view name) const;
};

// Immutable after LoadDatasetIndex returns; safe to share across threads.
struct DatasetIndex {
  std::filesystem::path root_path;
  std::map<std::string, VideoEntry> videos;
  Split split = Split::kCustom;

  const VideoEntry& video(const std::string& video_id) const;
};

// Expects `root/meta.json` and `root/Annotations/<video>/<frame>.png`.
// Throws Error{kMissingMeta, kMalformedMeta, kEmptyVideo}.
DatasetIndex LoadDatasetIndex(const std::filesystem::path& root, Split split);

std::filesystem::path AnnotationPath(const DatasetIndex& index,
                                     const VideoEntry& video,
                                     std::size_t frame);

MaskFrame LoadAnnotationFrame(const DatasetIndex& index, const VideoEntry& video,
                              std::size_t frame);

// Calls `visit(frame_index, raster)` for every annotation frame in order,
// decoding one raster at a time.
void ForEachAnnotationFrame(
    const DatasetIndex& index, const VideoEntry& video,
    const std::function<void(std::size_t, const MaskFrame&)>& visit);

// One object's binary mask sequence. A missing mask means ABSENT, which is
// the same thing as zero foreground pixels.
struct ObjectTrack {
  struct Entry {
    std::string frame_name;
    std::optional<BinaryMask> mask;
  };

  std::string video_id;
  int object_id = 0;
  int width = 0;
  int height = 0;
  std::vector<Entry> entries;

  std::size_t size() const { return entries.size(); }
  bool present(std::size_t i) const { return entries[i].mask.has_value(); }
  // Mask of frame i; an all-zero raster when absent.
  BinaryMask mask_or_empty(std::size_t i) const;
};

// Builds a track from in-memory rasters.
ObjectTrack TrackFromFrames(std::string video_id, int object_id,
                            std::span<const MaskFrame> frames,
                            std::span<const std::string> frame_names);

// Throws Error{kUnknownVideo, kUnknownObject}.
ObjectTrack ExtractTrack(const DatasetIndex& index, const std::string& video_id,
                         int object_id);

// Per-frame geometry of one object; what attributes and statistics consume.
struct TrackSummary {
  std::string video_id;
  int object_id = 0;
  int width = 0;
  int height = 0;
  std::vector<MaskSummary> frames;

  std::size_t present_count() const;
};

TrackSummary SummarizeTrack(const ObjectTrack& track);

// Summaries for every declared object of a video, streamed frame by frame.
std::map<int, TrackSummary> SummarizeVideo(const DatasetIndex& index,
                                           const VideoEntry& video);

enum class ViolationKind {
  kUndeclaredLabel,
  kFrameCountMismatch,
  kResolutionDrift,
  kEmptyFirstFrame,
  kUnreadableFrame,
};

std::string_view ViolationKindName(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  std::string frame_name;  // empty when not frame-specific
  int object_id = 0;       // 0 when not object-specific
  std::string detail;
};

struct ValidationReport {
  std::string video_id;
  std::vector<Violation> violations;

  bool clean() const { return violations.empty(); }
};

// Never throws for data problems; every problem becomes a violation.
ValidationReport ValidateSequence(const DatasetIndex& index,
                                  const std::string& video_id);

}  // namespace uwvos

#endif  // UWVOS_DATASET_H_
