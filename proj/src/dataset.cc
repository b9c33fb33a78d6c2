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

#include "uwvos/dataset.h"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <set>

#include "json.hpp"
#include "uwvos/error.h"
#include "uwvos/image_io.h"
#include "uwvos/png_codec.h"

namespace uwvos {

namespace fs = std::filesystem;
using nlohmann::json;

std::string_view SplitName(Split split) {
  switch (split) {
    case Split::kTrain: return "train";
    case Split::kVal: return "val";
    case Split::kTest: return "test";
    case Split::kCustom: return "custom";
  }
  return "custom";
}

Split ParseSplit(std::string_view name) {
  if (name == "train") return Split::kTrain;
  if (name == "val" || name == "valid") return Split::kVal;
  if (name == "test") return Split::kTest;
  if (name == "custom") return Split::kCustom;
  throw Error(ErrorCode::kInvalidArgument, "unknown split '" + std::string(name) + "'");
}

namespace {

bool AllDigits(std::string_view s) {
  return !s.empty() &&
         std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

std::string_view StripLeadingZeros(std::string_view s) {
  const auto pos = s.find_first_not_of('0');
  return pos == std::string_view::npos ? std::string_view("0") : s.substr(pos);
}

}  // namespace

bool FrameNameLess(std::string_view a, std::string_view b) {
  const bool a_num = AllDigits(a);
  const bool b_num = AllDigits(b);
  if (a_num != b_num) return a_num;  // numeric names first
  if (a_num) {
    const auto va = StripLeadingZeros(a);
    const auto vb = StripLeadingZeros(b);
    if (va.size() != vb.size()) return va.size() < vb.size();
    if (va != vb) return va < vb;
  }
  return a < b;
}

std::optional<std::size_t> VideoEntry::frame_index(std::string_view name) const {
  const auto it = std::lower_bound(
      frame_names.begin(), frame_names.end(), name,
      [](const std::string& lhs, std::string_view rhs) { return FrameNameLess(lhs, rhs); });
  if (it == frame_names.end() || *it != name) return std::nullopt;
  return static_cast<std::size_t>(it - frame_names.begin());
}

const VideoEntry& DatasetIndex::video(const std::string& video_id) const {
  const auto it = videos.find(video_id);
  if (it == videos.end()) {
    throw Error(ErrorCode::kUnknownVideo, "unknown video '" + video_id + "'");
  }
  return it->second;
}

namespace {

[[noreturn]] void Malformed(const std::string& what) {
  throw Error(ErrorCode::kMalformedMeta, "meta.json: " + what);
}

int ParseObjectId(const std::string& key, const std::string& video_id) {
  int id = 0;
  const auto* end = key.data() + key.size();
  const auto [ptr, ec] = std::from_chars(key.data(), end, id);
  if (ec != std::errc() || ptr != end || id < kMinObjectId || id > kMaxObjectId) {
    Malformed("video '" + video_id + "' has invalid object id '" + key + "'");
  }
  return id;
}

std::vector<std::string> ListAnnotationFrames(const fs::path& dir) {
  std::vector<std::string> names;
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) return names;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    const auto& p = entry.path();
    if (p.extension() == ".png") names.push_back(p.stem().string());
  }
  std::sort(names.begin(), names.end(), [](const std::string& a, const std::string& b) {
    return FrameNameLess(a, b);
  });
  return names;
}

}  // namespace

DatasetIndex LoadDatasetIndex(const fs::path& root, Split split) {
  const fs::path meta_path = root / "meta.json";
  if (!fs::is_regular_file(meta_path)) {
    throw Error(ErrorCode::kMissingMeta, "no meta.json under " + root.string());
  }
  json meta;
  try {
    meta = json::parse(ReadFileText(meta_path));
  } catch (const json::parse_error& e) {
    Malformed(e.what());
  }
  if (!meta.is_object() || !meta.contains("videos") || !meta["videos"].is_object()) {
    Malformed("top level must be an object with a \"videos\" object");
  }

  DatasetIndex index;
  index.root_path = root;
  index.split = split;
  for (const auto& [video_id, video_json] : meta["videos"].items()) {
    if (video_id.empty()) Malformed("empty video id");
    if (!video_json.is_object() || !video_json.contains("objects") ||
        !video_json["objects"].is_object()) {
      Malformed("video '" + video_id + "' needs an \"objects\" object");
    }
    VideoEntry video;
    video.video_id = video_id;
    video.frame_names = ListAnnotationFrames(root / "Annotations" / video_id);
    if (video.frame_names.empty()) {
      throw Error(ErrorCode::kEmptyVideo,
                  "video '" + video_id + "' has no annotation frames");
    }
    const PngHeader header = ReadPngHeader(ReadFileBytes(AnnotationPath(index, video, 0)));
    video.width = header.width;
    video.height = header.height;

    for (const auto& [key, object_json] : video_json["objects"].items()) {
      const int id = ParseObjectId(key, video_id);
      if (!object_json.is_object() || !object_json.contains("category") ||
          !object_json["category"].is_string() ||
          object_json["category"].get<std::string>().empty()) {
        Malformed("object " + key + " of video '" + video_id +
                  "' needs a non-empty \"category\" string");
      }
      if (!object_json.contains("frames") || !object_json["frames"].is_array() ||
          object_json["frames"].empty()) {
        Malformed("object " + key + " of video '" + video_id +
                  "' needs a non-empty \"frames\" list");
      }
      ObjectMeta object;
      object.object_id = id;
      object.category = object_json["category"].get<std::string>();
      for (const auto& f : object_json["frames"]) {
        if (!f.is_string()) Malformed("frame names must be strings");
        object.frames.push_back(f.get<std::string>());
      }
      std::sort(object.frames.begin(), object.frames.end(),
                [](const std::string& a, const std::string& b) { return FrameNameLess(a, b); });
      object.first_frame = object.frames.front();
      if (!video.frame_index(object.first_frame)) {
        Malformed("object " + key + " of video '" + video_id + "' starts at frame '" +
                  object.first_frame + "' which has no annotation raster");
      }
      video.objects.emplace(id, std::move(object));
    }
    if (video.objects.empty()) Malformed("video '" + video_id + "' declares no objects");
    index.videos.emplace(video_id, std::move(video));
  }
  return index;
}

fs::path AnnotationPath(const DatasetIndex& index, const VideoEntry& video,
                        std::size_t frame) {
  return index.root_path / "Annotations" / video.video_id /
         (video.frame_names.at(frame) + ".png");
}

MaskFrame LoadAnnotationFrame(const DatasetIndex& index, const VideoEntry& video,
                              std::size_t frame) {
  return DecodeMaskFrame(ReadFileBytes(AnnotationPath(index, video, frame)));
}

void ForEachAnnotationFrame(
    const DatasetIndex& index, const VideoEntry& video,
    const std::function<void(std::size_t, const MaskFrame&)>& visit) {
  for (std::size_t i = 0; i < video.frame_count(); ++i) {
    visit(i, LoadAnnotationFrame(index, video, i));
  }
}

BinaryMask ObjectTrack::mask_or_empty(std::size_t i) const {
  const auto& m = entries.at(i).mask;
  return m ? *m : BinaryMask(width, height);
}

ObjectTrack TrackFromFrames(std::string video_id, int object_id,
                            std::span<const MaskFrame> frames,
                            std::span<const std::string> frame_names) {
  if (frames.size() != frame_names.size()) {
    throw Error(ErrorCode::kTrackLengthMismatch, "frame and name counts differ");
  }
  ObjectTrack track;
  track.video_id = std::move(video_id);
  track.object_id = object_id;
  if (!frames.empty()) {
    track.width = frames.front().width;
    track.height = frames.front().height;
  }
  track.entries.reserve(frames.size());
  for (std::size_t i = 0; i < frames.size(); ++i) {
    BinaryMask mask = LabelMask(frames[i], static_cast<std::uint8_t>(object_id));
    ObjectTrack::Entry entry{frame_names[i], std::nullopt};
    if (!mask.empty()) entry.mask = std::move(mask);
    track.entries.push_back(std::move(entry));
  }
  return track;
}

ObjectTrack ExtractTrack(const DatasetIndex& index, const std::string& video_id,
                         int object_id) {
  const VideoEntry& video = index.video(video_id);
  if (!video.objects.contains(object_id)) {
    throw Error(ErrorCode::kUnknownObject, "video '" + video_id + "' has no object " +
                                               std::to_string(object_id));
  }
  ObjectTrack track;
  track.video_id = video_id;
  track.object_id = object_id;
  track.width = video.width;
  track.height = video.height;
  track.entries.reserve(video.frame_count());
  ForEachAnnotationFrame(index, video, [&](std::size_t i, const MaskFrame& frame) {
    BinaryMask mask = LabelMask(frame, static_cast<std::uint8_t>(object_id));
    ObjectTrack::Entry entry{video.frame_names[i], std::nullopt};
    if (!mask.empty()) entry.mask = std::move(mask);
    track.entries.push_back(std::move(entry));
  });
  return track;
}

std::size_t TrackSummary::present_count() const {
  return static_cast<std::size_t>(std::count_if(
      frames.begin(), frames.end(), [](const MaskSummary& s) { return s.present(); }));
}

TrackSummary SummarizeTrack(const ObjectTrack& track) {
  TrackSummary summary;
  summary.video_id = track.video_id;
  summary.object_id = track.object_id;
  summary.width = track.width;
  summary.height = track.height;
  summary.frames.reserve(track.size());
  for (const auto& entry : track.entries) {
    summary.frames.push_back(entry.mask ? Summarize(*entry.mask) : MaskSummary{});
  }
  return summary;
}

std::map<int, TrackSummary> SummarizeVideo(const DatasetIndex& index,
                                           const VideoEntry& video) {
  std::map<int, TrackSummary> out;
  for (const auto& [id, meta] : video.objects) {
    TrackSummary& s = out[id];
    s.video_id = video.video_id;
    s.object_id = id;
    s.width = video.width;
    s.height = video.height;
    s.frames.reserve(video.frame_count());
  }
  ForEachAnnotationFrame(index, video, [&](std::size_t, const MaskFrame& frame) {
    const auto per_label = SummarizeLabels(frame);
    for (auto& [id, s] : out) s.frames.push_back(per_label[id]);
  });
  return out;
}

std::string_view ViolationKindName(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::kUndeclaredLabel: return "UndeclaredLabel";
    case ViolationKind::kFrameCountMismatch: return "FrameCountMismatch";
    case ViolationKind::kResolutionDrift: return "ResolutionDrift";
    case ViolationKind::kEmptyFirstFrame: return "EmptyFirstFrame";
    case ViolationKind::kUnreadableFrame: return "UnreadableFrame";
  }
  return "Unknown";
}

ValidationReport ValidateSequence(const DatasetIndex& index, const std::string& video_id) {
  const VideoEntry& video = index.video(video_id);
  ValidationReport report;
  report.video_id = video_id;

  // label -> (first frame seen, number of frames)
  std::map<int, std::pair<std::string, int>> undeclared;
  std::map<int, int> present_frames;
  std::map<int, bool> first_frame_has_mask;

  for (std::size_t i = 0; i < video.frame_count(); ++i) {
    const std::string& name = video.frame_names[i];
    MaskFrame frame;
    try {
      frame = LoadAnnotationFrame(index, video, i);
    } catch (const Error& e) {
      report.violations.push_back({ViolationKind::kUnreadableFrame, name, 0, e.what()});
      continue;
    }
    if (frame.width != video.width || frame.height != video.height) {
      report.violations.push_back(
          {ViolationKind::kResolutionDrift, name, 0,
           std::to_string(frame.width) + "x" + std::to_string(frame.height) +
               " differs from " + std::to_string(video.width) + "x" +
               std::to_string(video.height)});
    }
    std::array<bool, 256> seen{};
    for (std::uint8_t v : frame.labels) seen[v] = true;
    for (int label = 1; label < 255; ++label) {
      if (!seen[label]) continue;
      if (video.objects.contains(label)) {
        ++present_frames[label];
        continue;
      }
      auto [it, inserted] = undeclared.try_emplace(label, name, 0);
      ++it->second.second;
    }
    for (const auto& [id, meta] : video.objects) {
      if (meta.first_frame == name) first_frame_has_mask[id] = seen[id];
    }
  }

  for (const auto& [label, where] : undeclared) {
    report.violations.push_back(
        {ViolationKind::kUndeclaredLabel, where.first, label,
         "label " + std::to_string(label) + " is not declared in meta.json (" +
             std::to_string(where.second) + " frame(s))"});
  }
  for (const auto& [id, meta] : video.objects) {
    const int present = present_frames.contains(id) ? present_frames.at(id) : 0;
    if (present != static_cast<int>(meta.frames.size())) {
      report.violations.push_back(
          {ViolationKind::kFrameCountMismatch, "", id,
           "meta lists " + std::to_string(meta.frames.size()) +
               " frame(s), annotations show the object in " + std::to_string(present)});
    }
    const auto it = first_frame_has_mask.find(id);
    if (it != first_frame_has_mask.end() && !it->second) {
      report.violations.push_back({ViolationKind::kEmptyFirstFrame, meta.first_frame, id,
                                   "first-appearance mask is empty"});
    }
  }
  return report;
}

}  // namespace uwvos
