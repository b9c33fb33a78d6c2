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

#include "uwvos/attributes.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>

#include "json.hpp"
#include "uwvos/error.h"
#include "uwvos/image_io.h"
#include "uwvos/parallel.h"

namespace uwvos {

using nlohmann::json;

namespace {

constexpr std::array<std::string_view, kFieldCount> kFieldNames = {
    "ST", "FM", "SV", "VC", "OCC", "AC", "SD", "IC", "MB", "MT", "ER", "CAM", "ARV",
    "UV", "US", "WC"};

constexpr double kSmallTargetRatio = 0.001;
constexpr double kFastMotionPx = 20.0;
constexpr double kRatioLow = 0.5;
constexpr double kRatioHigh = 2.0;

}  // namespace

std::string_view AttributeName(Attribute a) { return kFieldNames[static_cast<int>(a)]; }

std::string_view FieldName(int field) { return kFieldNames.at(field); }

std::optional<int> ParseFieldName(std::string_view name) {
  for (int i = 0; i < kFieldCount; ++i) {
    if (kFieldNames[i] == name) return i;
  }
  return std::nullopt;
}

Attribute AttributeAt(int i) { return static_cast<Attribute>(i); }

bool IsAutoAttribute(Attribute a) {
  switch (a) {
    case Attribute::kST:
    case Attribute::kFM:
    case Attribute::kSV:
    case Attribute::kARV:
    case Attribute::kER:
    case Attribute::kMT:
      return true;
    default:
      return false;
  }
}

std::string_view ProvenanceName(Provenance p) {
  switch (p) {
    case Provenance::kUnset: return "unset";
    case Provenance::kAuto: return "auto";
    case Provenance::kSidecar: return "sidecar";
  }
  return "unset";
}

bool AttributeProfile::field_set(int field) const {
  if (field < kBinaryAttributeCount) return flags[field].has_value();
  if (field == kFieldUV) return visibility.has_value();
  if (field == kFieldUS) return scene.has_value();
  return water_color.has_value();
}

namespace {

std::string Where(const TrackSummary& t) {
  return "object " + std::to_string(t.object_id) + " of '" + t.video_id + "'";
}

void RequireAnyPresent(const TrackSummary& t) {
  if (t.present_count() == 0) {
    throw Error(ErrorCode::kAllAbsentTrack, Where(t) + " is absent from every frame");
  }
}

}  // namespace

bool AttrSmallTarget(const TrackSummary& track) {
  RequireAnyPresent(track);
  const double image_area = static_cast<double>(track.width) * track.height;
  double sum = 0.0;
  std::size_t n = 0;
  for (const auto& s : track.frames) {
    if (!s.present()) continue;
    sum += static_cast<double>(s.area) / image_area;
    ++n;
  }
  return sum / static_cast<double>(n) < kSmallTargetRatio;
}

bool AttrFastMotion(const TrackSummary& track) {
  double sum = 0.0;
  std::size_t pairs = 0;
  for (std::size_t i = 1; i < track.frames.size(); ++i) {
    const auto& a = track.frames[i - 1];
    const auto& b = track.frames[i];
    if (!a.present() || !b.present()) continue;
    sum += std::hypot(b.centroid_x - a.centroid_x, b.centroid_y - a.centroid_y);
    ++pairs;
  }
  if (pairs == 0) {
    throw Error(ErrorCode::kInsufficientPresence,
                Where(track) + " has no pair of consecutive present frames");
  }
  return sum / static_cast<double>(pairs) > kFastMotionPx;
}

bool AttrScaleVariation(const TrackSummary& track) {
  if (track.present_count() < 2) {
    throw Error(ErrorCode::kInsufficientPresence,
                Where(track) + " is present in fewer than 2 frames");
  }
  std::int64_t lo = std::numeric_limits<std::int64_t>::max();
  std::int64_t hi = 0;
  for (const auto& s : track.frames) {
    if (!s.present()) continue;
    lo = std::min(lo, s.area);
    hi = std::max(hi, s.area);
  }
  return static_cast<double>(hi) / static_cast<double>(lo) > kRatioHigh;
}

bool AttrAspectRatioVariation(const TrackSummary& track) {
  RequireAnyPresent(track);
  for (const auto& s : track.frames) {
    if (!s.box) continue;
    const double ratio = static_cast<double>(s.box->width()) / s.box->height();
    if (ratio < kRatioLow || ratio > kRatioHigh) return true;
  }
  return false;
}

bool AttrExitReentry(const TrackSummary& track) {
  bool seen = false;
  bool gap = false;
  for (const auto& s : track.frames) {
    if (s.present()) {
      if (gap) return true;
      seen = true;
    } else if (seen) {
      gap = true;
    }
  }
  return false;
}

bool AttrMultipleTargets(const VideoEntry& video) { return video.objects.size() >= 2; }

namespace {

[[noreturn]] void Schema(const std::string& what) {
  throw Error(ErrorCode::kSchemaViolation, "attribute sidecar: " + what);
}

template <std::size_t N>
int ParseEnum(const json& value, const std::array<std::string_view, N>& allowed,
              std::string_view field) {
  if (!value.is_string()) Schema(std::string(field) + " must be a string");
  const auto s = value.get<std::string>();
  for (std::size_t i = 0; i < N; ++i) {
    if (allowed[i] == s) return static_cast<int>(i);
  }
  throw Error(ErrorCode::kUnknownEnumValue,
              "attribute sidecar: '" + s + "' is not a valid " + std::string(field) + " value");
}

AttributeProfile ParseEntry(const json& entry, const std::string& where) {
  if (!entry.is_object()) Schema(where + " must be an object");
  AttributeProfile profile;
  for (const auto& [key, value] : entry.items()) {
    const auto field = ParseFieldName(key);
    if (!field) Schema("unknown attribute '" + key + "' in " + where);
    if (*field < kBinaryAttributeCount) {
      if (!value.is_boolean()) Schema(key + " in " + where + " must be a boolean");
      profile.set(AttributeAt(*field), value.get<bool>(), Provenance::kSidecar);
    } else if (*field == kFieldUV) {
      profile.visibility = ParseEnum(value, kVisibilityValues, key);
    } else if (*field == kFieldUS) {
      profile.scene = ParseEnum(value, kSceneValues, key);
    } else {
      profile.water_color = ParseEnum(value, kWaterColorValues, key);
    }
    profile.provenance[*field] = Provenance::kSidecar;
  }
  return profile;
}

}  // namespace

AttributeSidecar ParseAttributeSidecar(std::string_view json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    Schema(e.what());
  }
  if (!root.is_object()) Schema("top level must be an object keyed by video id");
  AttributeSidecar out;
  for (const auto& [video_id, objects] : root.items()) {
    if (!objects.is_object()) Schema("video '" + video_id + "' must map object ids to entries");
    for (const auto& [key, entry] : objects.items()) {
      int object_id = kAllObjects;
      if (key != "*") {
        const auto* end = key.data() + key.size();
        const auto [ptr, ec] = std::from_chars(key.data(), end, object_id);
        if (ec != std::errc() || ptr != end || object_id < kMinObjectId ||
            object_id > kMaxObjectId) {
          Schema("invalid object key '" + key + "' in video '" + video_id + "'");
        }
      }
      out[InstanceKey{video_id, object_id}] =
          ParseEntry(entry, "video '" + video_id + "' object '" + key + "'");
    }
  }
  return out;
}

AttributeSidecar LoadAttributeSidecar(const std::filesystem::path& path) {
  return ParseAttributeSidecar(ReadFileText(path));
}

const InstanceProfile* ProfileSet::find(const std::string& video_id, int object_id) const {
  const auto it = std::lower_bound(profiles.begin(), profiles.end(), nullptr,
                                   [&](const InstanceProfile& p, std::nullptr_t) {
                                     if (p.video_id != video_id) return p.video_id < video_id;
                                     return p.object_id < object_id;
                                   });
  if (it == profiles.end() || it->video_id != video_id || it->object_id != object_id) {
    return nullptr;
  }
  return &*it;
}

namespace {

void Overlay(AttributeProfile& target, const AttributeProfile& source, const std::string& who,
             std::vector<std::string>& warnings) {
  for (int i = 0; i < kBinaryAttributeCount; ++i) {
    if (!source.flags[i]) continue;
    if (target.provenance[i] == Provenance::kAuto) {
      warnings.push_back(who + ": sidecar overrides auto attribute " +
                         std::string(FieldName(i)));
    }
    target.flags[i] = source.flags[i];
    target.provenance[i] = Provenance::kSidecar;
  }
  if (source.visibility) {
    target.visibility = source.visibility;
    target.provenance[kFieldUV] = Provenance::kSidecar;
  }
  if (source.scene) {
    target.scene = source.scene;
    target.provenance[kFieldUS] = Provenance::kSidecar;
  }
  if (source.water_color) {
    target.water_color = source.water_color;
    target.provenance[kFieldWC] = Provenance::kSidecar;
  }
}

}  // namespace

std::vector<InstanceProfile> ComputeVideoProfiles(const VideoEntry& video,
                                                  const std::map<int, TrackSummary>& tracks,
                                                  const AttributeSidecar& sidecar,
                                                  std::vector<std::string>& warnings) {
  std::vector<InstanceProfile> out;
  const bool multiple = AttrMultipleTargets(video);
  for (const auto& [id, meta] : video.objects) {
    const TrackSummary& track = tracks.at(id);
    const std::string who = "object " + std::to_string(id) + " of '" + video.video_id + "'";
    InstanceProfile inst;
    inst.video_id = video.video_id;
    inst.object_id = id;
    inst.category = meta.category;
    AttributeProfile& p = inst.profile;

    p.set(Attribute::kST, AttrSmallTarget(track), Provenance::kAuto);
    p.set(Attribute::kARV, AttrAspectRatioVariation(track), Provenance::kAuto);
    p.set(Attribute::kER, AttrExitReentry(track), Provenance::kAuto);
    p.set(Attribute::kMT, multiple, Provenance::kAuto);
    try {
      p.set(Attribute::kFM, AttrFastMotion(track), Provenance::kAuto);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kInsufficientPresence) throw;
      p.set(Attribute::kFM, false, Provenance::kAuto);
      warnings.push_back(who + ": FM set false (" + e.what() + ")");
    }
    try {
      p.set(Attribute::kSV, AttrScaleVariation(track), Provenance::kAuto);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kInsufficientPresence) throw;
      p.set(Attribute::kSV, false, Provenance::kAuto);
      warnings.push_back(who + ": SV set false (" + e.what() + ")");
    }

    if (auto it = sidecar.find({video.video_id, kAllObjects}); it != sidecar.end()) {
      Overlay(p, it->second, who, warnings);
    }
    if (auto it = sidecar.find({video.video_id, id}); it != sidecar.end()) {
      Overlay(p, it->second, who, warnings);
    }
    out.push_back(std::move(inst));
  }
  return out;
}

ProfileSet ComputeProfiles(const DatasetIndex& index, const AttributeSidecar& sidecar,
                           unsigned threads) {
  std::vector<const VideoEntry*> videos;
  for (const auto& [id, v] : index.videos) videos.push_back(&v);
  std::vector<std::vector<InstanceProfile>> per_video(videos.size());
  std::vector<std::vector<std::string>> per_video_warnings(videos.size());
  ParallelFor(videos.size(), threads, [&](std::size_t i) {
    const auto tracks = SummarizeVideo(index, *videos[i]);
    per_video[i] = ComputeVideoProfiles(*videos[i], tracks, sidecar, per_video_warnings[i]);
  });

  ProfileSet set;
  for (std::size_t i = 0; i < videos.size(); ++i) {
    for (auto& p : per_video[i]) set.profiles.push_back(std::move(p));
    for (auto& w : per_video_warnings[i]) set.warnings.push_back(std::move(w));
  }
  for (const auto& [key, entry] : sidecar) {
    const auto v = index.videos.find(key.video_id);
    const bool known = v != index.videos.end() &&
                       (key.object_id == kAllObjects || v->second.objects.contains(key.object_id));
    if (!known) {
      set.warnings.push_back("sidecar entry for video '" + key.video_id + "' object " +
                             (key.object_id == kAllObjects ? std::string("*")
                                                           : std::to_string(key.object_id)) +
                             " matches no instance");
    }
  }
  return set;
}

CooccurrenceMatrix Cooccurrence(std::span<const InstanceProfile> profiles) {
  CooccurrenceMatrix m;
  for (const auto& inst : profiles) {
    for (int a = 0; a < kBinaryAttributeCount; ++a) {
      if (!inst.profile.has(AttributeAt(a))) continue;
      for (int b = 0; b < kBinaryAttributeCount; ++b) {
        if (inst.profile.has(AttributeAt(b))) ++m.counts[a][b];
      }
    }
  }
  return m;
}

CategoricalCounts CountCategoricals(std::span<const InstanceProfile> profiles) {
  CategoricalCounts c;
  for (const auto& inst : profiles) {
    if (inst.profile.visibility) ++c.visibility[*inst.profile.visibility];
    if (inst.profile.scene) ++c.scene[*inst.profile.scene];
    if (inst.profile.water_color) ++c.water_color[*inst.profile.water_color];
  }
  return c;
}

AttributeBreakdownTable AttributeBreakdown(const BenchmarkReport& report,
                                           const ProfileSet& profiles) {
  AttributeBreakdownTable table;
  table.overall = report.j_and_f_dot;
  std::array<std::vector<std::optional<double>>, kBinaryAttributeCount> scores;
  for (const auto& object : report.objects) {
    const InstanceProfile* inst = profiles.find(object.video_id, object.object_id);
    if (inst == nullptr) {
      throw Error(ErrorCode::kMissingProfile,
                  "object " + std::to_string(object.object_id) + " of '" + object.video_id +
                      "' was scored but has no attribute profile");
    }
    const auto score = object.j_and_f_dot();
    if (!score) continue;
    for (int a = 0; a < kBinaryAttributeCount; ++a) {
      if (inst->profile.has(AttributeAt(a))) scores[a].push_back(score);
    }
  }
  for (int a = 0; a < kBinaryAttributeCount; ++a) {
    table.rows.push_back({AttributeAt(a), scores[a].size(), MeanOfDefined(scores[a])});
  }
  return table;
}

}  // namespace uwvos
