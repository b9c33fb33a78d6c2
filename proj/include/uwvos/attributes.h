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

#ifndef UWVOS_ATTRIBUTES_H_
#define UWVOS_ATTRIBUTES_H_

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "uwvos/dataset.h"
#include "uwvos/evaluation.h"

namespace uwvos {

// The 13 binary challenge attributes, in the order of the attribute table.
enum class Attribute { kST, kFM, kSV, kVC, kOCC, kAC, kSD, kIC, kMB, kMT, kER, kCAM, kARV };
inline constexpr int kBinaryAttributeCount = 13;

// Categorical attributes follow the binary ones in field numbering.
inline constexpr int kFieldUV = 13;
inline constexpr int kFieldUS = 14;
inline constexpr int kFieldWC = 15;
inline constexpr int kFieldCount = 16;

std::string_view AttributeName(Attribute a);
std::string_view FieldName(int field);
// Field index for "ST" ... "ARV", "UV", "US", "WC".
std::optional<int> ParseFieldName(std::string_view name);
Attribute AttributeAt(int i);

// Attributes a mask track determines on its own.
bool IsAutoAttribute(Attribute a);

inline constexpr std::array<std::string_view, 3> kVisibilityValues = {"low", "medium", "high"};
inline constexpr std::array<std::string_view, 12> kSceneValues = {
    "sea",  "river", "pool", "water tank", "fish tank", "basin",
    "bowl", "cup",   "aquarium", "pond", "puddle",    "lake"};
inline constexpr std::array<std::string_view, 16> kWaterColorValues = {
    "colorless",   "ash",         "gray",       "green",     "light green", "dark",
    "blue-black",  "deep blue",   "blue",       "light blue", "partly blue", "gray-blue",
    "light yellow", "light brown", "cyan",      "light purple"};

enum class Provenance { kUnset, kAuto, kSidecar };
std::string_view ProvenanceName(Provenance p);

struct AttributeProfile {
  std::array<std::optional<bool>, kBinaryAttributeCount> flags{};
  // Indices into kVisibilityValues / kSceneValues / kWaterColorValues.
  std::optional<int> visibility;
  std::optional<int> scene;
  std::optional<int> water_color;
  std::array<Provenance, kFieldCount> provenance{};

  bool has(Attribute a) const { return flags[static_cast<int>(a)].value_or(false); }
  void set(Attribute a, bool value, Provenance p) {
    flags[static_cast<int>(a)] = value;
    provenance[static_cast<int>(a)] = p;
  }
  bool field_set(int field) const;
};

// Auto attributes. Each is a function of the ground-truth track alone.
// Mean present-frame area ratio below 0.1% of the image.
bool AttrSmallTarget(const TrackSummary& track);
// Mean centroid displacement over consecutive co-present frames above 20 px.
bool AttrFastMotion(const TrackSummary& track);
// Largest over smallest present-frame area above 2.
bool AttrScaleVariation(const TrackSummary& track);
// Some present frame has a box width/height ratio outside [0.5, 2].
bool AttrAspectRatioVariation(const TrackSummary& track);
// Presence pattern present, absent..., present.
bool AttrExitReentry(const TrackSummary& track);
bool AttrMultipleTargets(const VideoEntry& video);

inline bool AttrSmallTarget(const ObjectTrack& t) { return AttrSmallTarget(SummarizeTrack(t)); }
inline bool AttrFastMotion(const ObjectTrack& t) { return AttrFastMotion(SummarizeTrack(t)); }
inline bool AttrScaleVariation(const ObjectTrack& t) {
  return AttrScaleVariation(SummarizeTrack(t));
}
inline bool AttrAspectRatioVariation(const ObjectTrack& t) {
  return AttrAspectRatioVariation(SummarizeTrack(t));
}
inline bool AttrExitReentry(const ObjectTrack& t) { return AttrExitReentry(SummarizeTrack(t)); }

// Sidecar key. object_id == kAllObjects is the per-video "*" entry.
inline constexpr int kAllObjects = 0;
struct InstanceKey {
  std::string video_id;
  int object_id = 0;
  auto operator<=>(const InstanceKey&) const = default;
};

using AttributeSidecar = std::map<InstanceKey, AttributeProfile>;

// Throws Error{kSchemaViolation, kUnknownEnumValue}.
AttributeSidecar ParseAttributeSidecar(std::string_view json_text);
AttributeSidecar LoadAttributeSidecar(const std::filesystem::path& path);

struct InstanceProfile {
  std::string video_id;
  int object_id = 0;
  std::string category;
  AttributeProfile profile;
};

struct ProfileSet {
  std::vector<InstanceProfile> profiles;  // ordered by (video_id, object_id)
  std::vector<std::string> warnings;

  const InstanceProfile* find(const std::string& video_id, int object_id) const;
};

// Auto attributes from the ground truth, then the sidecar's "*" entry, then
// its per-object entry. A sidecar value for an auto attribute wins and is
// reported as a warning.
ProfileSet ComputeProfiles(const DatasetIndex& index, const AttributeSidecar& sidecar,
                           unsigned threads = 1);

// Profiles for one video from precomputed track summaries.
std::vector<InstanceProfile> ComputeVideoProfiles(const VideoEntry& video,
                                                  const std::map<int, TrackSummary>& tracks,
                                                  const AttributeSidecar& sidecar,
                                                  std::vector<std::string>& warnings);

struct CooccurrenceMatrix {
  std::array<std::array<std::int64_t, kBinaryAttributeCount>, kBinaryAttributeCount> counts{};

  std::int64_t at(Attribute a, Attribute b) const {
    return counts[static_cast<int>(a)][static_cast<int>(b)];
  }
};

CooccurrenceMatrix Cooccurrence(std::span<const InstanceProfile> profiles);

// Value counts of the categorical attributes; unset values are skipped.
struct CategoricalCounts {
  std::array<std::int64_t, kVisibilityValues.size()> visibility{};
  std::array<std::int64_t, kSceneValues.size()> scene{};
  std::array<std::int64_t, kWaterColorValues.size()> water_color{};
};
CategoricalCounts CountCategoricals(std::span<const InstanceProfile> profiles);

struct BreakdownRow {
  Attribute attribute;
  std::size_t instances = 0;
  std::optional<double> j_and_f_dot;  // nullopt (N/A) for zero instances
};

struct AttributeBreakdownTable {
  std::optional<double> overall;
  std::vector<BreakdownRow> rows;
};

// Mean per-object J&F-dot over the instances carrying each attribute.
// Throws Error{kMissingProfile} for a scored object without a profile.
AttributeBreakdownTable AttributeBreakdown(const BenchmarkReport& report,
                                           const ProfileSet& profiles);

}  // namespace uwvos

#endif  // UWVOS_ATTRIBUTES_H_
