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
#include <random>

#include <gtest/gtest.h>
#include "tests/testing/fixtures.h"
#include "uwvos/error.h"

namespace uwvos {
namespace {

using testing::BlankFrame;
using testing::FixtureVideo;
using testing::PaintRect;
using testing::TempDir;

struct Rect {
  int x0, y0, x1, y1;
};

// One object on a 100x100 canvas; nullopt frames are absent.
TrackSummary TrackOf(const std::vector<std::optional<Rect>>& rects, int w = 100, int h = 100) {
  std::vector<MaskFrame> frames;
  for (const auto& r : rects) {
    MaskFrame f = BlankFrame(w, h);
    if (r) PaintRect(f, r->x0, r->y0, r->x1, r->y1, 1);
    frames.push_back(f);
  }
  const auto names = testing::DefaultFrameNames(frames.size());
  return SummarizeTrack(TrackFromFrames("v", 1, frames, names));
}

template <typename Fn>
ErrorCode CodeOf(Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::kInvalidArgument;
}

TEST(SmallTargetTest, Thresholds) {
  // 10 px of 10000 is exactly 0.1%.
  EXPECT_FALSE(AttrSmallTarget(TrackOf({Rect{0, 0, 9, 0}, Rect{5, 5, 14, 5}})));
  EXPECT_TRUE(AttrSmallTarget(TrackOf({Rect{0, 0, 4, 0}, Rect{0, 0, 4, 0}})));
  // 0.05% and 0.25% average to 0.15%.
  EXPECT_FALSE(AttrSmallTarget(TrackOf({Rect{0, 0, 4, 0}, Rect{0, 0, 4, 4}})));
  EXPECT_TRUE(AttrSmallTarget(TrackOf({std::nullopt, Rect{0, 0, 4, 0}, std::nullopt})));
}

TEST(SmallTargetTest, AllAbsent) {
  EXPECT_EQ(CodeOf([] { AttrSmallTarget(TrackOf({std::nullopt, std::nullopt})); }),
            ErrorCode::kAllAbsentTrack);
}

TEST(FastMotionTest, Thresholds) {
  EXPECT_FALSE(AttrFastMotion(TrackOf({Rect{0, 0, 3, 3}, Rect{0, 0, 3, 3}})));
  EXPECT_FALSE(AttrFastMotion(TrackOf({Rect{0, 0, 3, 3}, Rect{20, 0, 23, 3}, Rect{40, 0, 43, 3}})));
  EXPECT_TRUE(AttrFastMotion(TrackOf({Rect{0, 0, 3, 3}, Rect{21, 0, 24, 3}, Rect{42, 0, 45, 3}})));
  // Displacements 10 and 40 average to 25.
  EXPECT_TRUE(AttrFastMotion(TrackOf({Rect{0, 0, 3, 3}, Rect{10, 0, 13, 3}, Rect{50, 0, 53, 3}})));
  // 12 down, 16 across: a 20 px diagonal step.
  EXPECT_FALSE(AttrFastMotion(TrackOf({Rect{0, 0, 3, 3}, Rect{16, 12, 19, 15}})));
}

TEST(FastMotionTest, OnlyCoPresentPairsCount) {
  // The 90 px jump spans a gap and is not a consecutive pair.
  EXPECT_FALSE(AttrFastMotion(
      TrackOf({Rect{0, 0, 3, 3}, Rect{1, 0, 4, 3}, std::nullopt, Rect{90, 0, 93, 3}})));
  EXPECT_EQ(CodeOf([] {
              AttrFastMotion(TrackOf({Rect{0, 0, 3, 3}, std::nullopt, Rect{0, 0, 3, 3}}));
            }),
            ErrorCode::kInsufficientPresence);
}

TEST(ScaleVariationTest, Thresholds) {
  EXPECT_FALSE(AttrScaleVariation(TrackOf({Rect{0, 0, 9, 9}, Rect{5, 5, 14, 14}})));
  EXPECT_TRUE(AttrScaleVariation(TrackOf({Rect{0, 0, 9, 9}, Rect{0, 0, 20, 9}})));
  EXPECT_FALSE(AttrScaleVariation(TrackOf({Rect{0, 0, 9, 9}, Rect{0, 0, 19, 9}})));
  EXPECT_FALSE(AttrScaleVariation(
      TrackOf({Rect{0, 0, 9, 9}, Rect{0, 0, 14, 9}, Rect{0, 0, 18, 9}})));
  EXPECT_EQ(CodeOf([] { AttrScaleVariation(TrackOf({Rect{0, 0, 9, 9}, std::nullopt})); }),
            ErrorCode::kInsufficientPresence);
}

TEST(ScaleVariationTest, InvariantUnderReordering) {
  std::mt19937_64 rng(12);
  std::uniform_int_distribution<int> side(0, 30);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<std::optional<Rect>> rects;
    for (int i = 0; i < 6; ++i) {
      rects.push_back(i == 2 ? std::nullopt : std::optional<Rect>(Rect{0, 0, side(rng), side(rng)}));
    }
    const bool base = AttrScaleVariation(TrackOf(rects));
    for (int k = 0; k < 4; ++k) {
      std::shuffle(rects.begin(), rects.end(), rng);
      EXPECT_EQ(AttrScaleVariation(TrackOf(rects)), base);
    }
  }
}

TEST(AspectRatioVariationTest, Thresholds) {
  EXPECT_FALSE(AttrAspectRatioVariation(TrackOf({Rect{0, 0, 9, 9}, Rect{0, 0, 4, 4}})));
  EXPECT_TRUE(AttrAspectRatioVariation(TrackOf({Rect{0, 0, 9, 9}, Rect{0, 0, 29, 9}})));
  EXPECT_FALSE(AttrAspectRatioVariation(TrackOf({Rect{0, 0, 19, 9}, Rect{0, 0, 9, 19}})));
  EXPECT_TRUE(AttrAspectRatioVariation(TrackOf({Rect{0, 0, 9, 20}})));
  EXPECT_EQ(CodeOf([] { AttrAspectRatioVariation(TrackOf({std::nullopt})); }),
            ErrorCode::kAllAbsentTrack);
}

TEST(ExitReentryTest, Patterns) {
  const std::optional<Rect> on = Rect{0, 0, 1, 1};
  const std::optional<Rect> off;
  EXPECT_FALSE(AttrExitReentry(TrackOf({on, on, on})));
  EXPECT_TRUE(AttrExitReentry(TrackOf({on, off, on})));
  EXPECT_TRUE(AttrExitReentry(TrackOf({off, on, off, off, on, off})));
  EXPECT_FALSE(AttrExitReentry(TrackOf({off, off, on, on})));
  EXPECT_FALSE(AttrExitReentry(TrackOf({on, on, off, off})));
  EXPECT_FALSE(AttrExitReentry(TrackOf({off, off})));
}

TEST(ExitReentryTest, MatchesPatternScanOnAllSequences) {
  const std::optional<Rect> on = Rect{0, 0, 1, 1};
  for (int code = 0; code < (1 << 7); ++code) {
    std::vector<std::optional<Rect>> rects;
    std::string pattern;
    for (int i = 0; i < 7; ++i) {
      const bool present = (code >> i) & 1;
      rects.push_back(present ? on : std::nullopt);
      pattern += present ? 'P' : 'A';
    }
    const auto first = pattern.find('P');
    const bool want = first != std::string::npos &&
                      pattern.find("AP", first) != std::string::npos;
    EXPECT_EQ(AttrExitReentry(TrackOf(rects, 4, 4)), want) << pattern;
  }
}

TEST(MultipleTargetsTest, Counts) {
  VideoEntry v;
  v.objects[1] = ObjectMeta{1};
  EXPECT_FALSE(AttrMultipleTargets(v));
  v.objects[2] = ObjectMeta{2};
  EXPECT_TRUE(AttrMultipleTargets(v));
}

TEST(FieldNamesTest, RoundTrip) {
  for (int i = 0; i < kFieldCount; ++i) EXPECT_EQ(ParseFieldName(FieldName(i)), i);
  EXPECT_FALSE(ParseFieldName("XYZ").has_value());
  EXPECT_EQ(AttributeName(Attribute::kARV), "ARV");
  EXPECT_EQ(kWaterColorValues.size(), 16u);
  EXPECT_EQ(kSceneValues.size(), 12u);
}

TEST(SidecarTest, DirectMapping) {
  const auto sidecar = ParseAttributeSidecar(R"({"v": {"3": {"CAM": true, "UV": "low"}}})");
  ASSERT_EQ(sidecar.size(), 1u);
  const AttributeProfile& p = sidecar.at({"v", 3});
  EXPECT_TRUE(p.has(Attribute::kCAM));
  EXPECT_EQ(p.visibility, 0);
  int set_fields = 0;
  for (int i = 0; i < kFieldCount; ++i) set_fields += p.field_set(i);
  EXPECT_EQ(set_fields, 2);
  EXPECT_EQ(p.provenance[static_cast<int>(Attribute::kCAM)], Provenance::kSidecar);
}

TEST(SidecarTest, EmptyMap) { EXPECT_TRUE(ParseAttributeSidecar("{}").empty()); }

TEST(SidecarTest, BroadcastKeyAndEnums) {
  const auto sidecar = ParseAttributeSidecar(
      R"({"v": {"*": {"US": "water tank", "WC": "light purple"}, "2": {"MB": false}}})");
  EXPECT_EQ(sidecar.at({"v", kAllObjects}).scene, 3);
  EXPECT_EQ(sidecar.at({"v", kAllObjects}).water_color, 15);
  EXPECT_EQ(sidecar.at({"v", 2}).flags[static_cast<int>(Attribute::kMB)], false);
}

TEST(SidecarTest, Errors) {
  EXPECT_EQ(CodeOf([] { ParseAttributeSidecar(R"({"v": {"1": {"WC": "magenta"}}})"); }),
            ErrorCode::kUnknownEnumValue);
  EXPECT_EQ(CodeOf([] { ParseAttributeSidecar(R"({"v": {"1": {"UV": "none"}}})"); }),
            ErrorCode::kUnknownEnumValue);
  for (const char* text :
       {"[", "[]", R"({"v": 3})", R"({"v": {"1": {"XYZ": true}}})",
        R"({"v": {"1": {"CAM": "yes"}}})", R"({"v": {"0": {}}})", R"({"v": {"255": {}}})",
        R"({"v": {"a": {}}})", R"({"v": {"1": {"UV": 1}}})", R"({"v": {"1": []}})"}) {
    EXPECT_EQ(CodeOf([&] { ParseAttributeSidecar(text); }), ErrorCode::kSchemaViolation)
        << text;
  }
}

// Video "sea": object 1 drifts 25 px per frame, object 2 is a 4-pixel speck
// at a fixed spot. 200x100 canvas.
FixtureVideo SeaVideo() {
  FixtureVideo v;
  v.id = "sea";
  for (int i = 0; i < 4; ++i) {
    MaskFrame f = BlankFrame(200, 100);
    PaintRect(f, 10 + 25 * i, 10, 39 + 25 * i, 39, 1);
    PaintRect(f, 180, 80, 181, 81, 2);
    v.frames.push_back(f);
  }
  v.categories = {{1, "shark"}, {2, "shrimp"}};
  return v;
}

FixtureVideo PondVideo() {
  FixtureVideo v;
  v.id = "pond";
  for (int i = 0; i < 4; ++i) {
    MaskFrame f = BlankFrame(200, 100);
    if (i != 2) PaintRect(f, 50, 20, 69, 79, 1);
    v.frames.push_back(f);
  }
  v.categories = {{1, "eel"}};
  return v;
}

TEST(ComputeProfilesTest, AutoAttributesFromGroundTruth) {
  TempDir dir;
  testing::WriteSplit(dir.path(), {SeaVideo(), PondVideo()});
  const DatasetIndex index = LoadDatasetIndex(dir.path(), Split::kVal);
  const ProfileSet set = ComputeProfiles(index, {});
  ASSERT_EQ(set.profiles.size(), 3u);
  EXPECT_TRUE(set.warnings.empty());

  const InstanceProfile* fish = set.find("sea", 1);
  ASSERT_NE(fish, nullptr);
  EXPECT_TRUE(fish->profile.has(Attribute::kFM));
  EXPECT_EQ(fish->profile.provenance[static_cast<int>(Attribute::kFM)], Provenance::kAuto);
  EXPECT_TRUE(fish->profile.has(Attribute::kMT));
  EXPECT_FALSE(fish->profile.has(Attribute::kST));
  EXPECT_EQ(fish->category, "shark");

  const InstanceProfile* speck = set.find("sea", 2);
  EXPECT_TRUE(speck->profile.has(Attribute::kST));
  EXPECT_FALSE(speck->profile.has(Attribute::kFM));

  const InstanceProfile* eel = set.find("pond", 1);
  EXPECT_TRUE(eel->profile.has(Attribute::kER));
  EXPECT_TRUE(eel->profile.has(Attribute::kARV));
  EXPECT_FALSE(eel->profile.has(Attribute::kMT));
  // Manual attributes stay unset.
  EXPECT_FALSE(eel->profile.flags[static_cast<int>(Attribute::kCAM)].has_value());
  EXPECT_FALSE(eel->profile.visibility.has_value());
  EXPECT_EQ(set.find("pond", 2), nullptr);
}

TEST(ComputeProfilesTest, SidecarPrecedence) {
  TempDir dir;
  testing::WriteSplit(dir.path(), {SeaVideo(), PondVideo()});
  const DatasetIndex index = LoadDatasetIndex(dir.path(), Split::kVal);
  const auto sidecar = ParseAttributeSidecar(R"({
    "sea": {"*": {"UV": "high", "CAM": true}, "2": {"ST": false, "UV": "low"}},
    "pond": {"1": {"OCC": true}},
    "lake": {"1": {"OCC": true}}
  })");
  const ProfileSet set = ComputeProfiles(index, sidecar, 2);
  const InstanceProfile* speck = set.find("sea", 2);
  EXPECT_FALSE(speck->profile.has(Attribute::kST));
  EXPECT_EQ(speck->profile.provenance[static_cast<int>(Attribute::kST)], Provenance::kSidecar);
  EXPECT_EQ(speck->profile.visibility, 0);
  EXPECT_TRUE(speck->profile.has(Attribute::kCAM));
  EXPECT_EQ(set.find("sea", 1)->profile.visibility, 2);
  EXPECT_TRUE(set.find("pond", 1)->profile.has(Attribute::kOCC));

  ASSERT_EQ(set.warnings.size(), 2u);
  EXPECT_NE(set.warnings[0].find("ST"), std::string::npos);
  EXPECT_NE(set.warnings[1].find("lake"), std::string::npos);
}

TEST(ComputeProfilesTest, SixteenFieldsPerInstanceWithFullSidecar) {
  TempDir dir;
  testing::WriteSplit(dir.path(), {SeaVideo(), PondVideo()});
  const DatasetIndex index = LoadDatasetIndex(dir.path(), Split::kVal);
  const char* manual = R"({"VC": false, "OCC": false, "AC": true, "SD": false, "IC": false,
                           "MB": false, "CAM": false, "UV": "medium", "US": "sea",
                           "WC": "blue"})";
  const std::string text = std::string(R"({"sea": {"*": )") + manual + R"(}, "pond": {"*": )" +
                           manual + "}}";
  const ProfileSet set = ComputeProfiles(index, ParseAttributeSidecar(text));
  ASSERT_EQ(set.profiles.size(), 3u);
  for (const auto& inst : set.profiles) {
    for (int i = 0; i < kFieldCount; ++i) EXPECT_TRUE(inst.profile.field_set(i)) << i;
  }
  const CategoricalCounts c = CountCategoricals(set.profiles);
  EXPECT_EQ(c.visibility[1], 3);
  EXPECT_EQ(c.scene[0], 3);
  EXPECT_EQ(c.water_color[8], 3);
}

InstanceProfile WithFlags(std::string vid, int id, std::vector<Attribute> flags) {
  InstanceProfile p;
  p.video_id = std::move(vid);
  p.object_id = id;
  for (Attribute a : flags) p.profile.set(a, true, Provenance::kSidecar);
  return p;
}

TEST(CooccurrenceTest, Examples) {
  const CooccurrenceMatrix zero = Cooccurrence({});
  for (const auto& row : zero.counts) {
    for (auto v : row) EXPECT_EQ(v, 0);
  }
  const std::vector<InstanceProfile> one = {
      WithFlags("v", 1, {Attribute::kSV, Attribute::kAC})};
  const CooccurrenceMatrix m = Cooccurrence(one);
  EXPECT_EQ(m.at(Attribute::kSV, Attribute::kAC), 1);
  EXPECT_EQ(m.at(Attribute::kAC, Attribute::kSV), 1);
  EXPECT_EQ(m.at(Attribute::kSV, Attribute::kSV), 1);
  EXPECT_EQ(m.at(Attribute::kAC, Attribute::kAC), 1);
  EXPECT_EQ(m.at(Attribute::kST, Attribute::kSV), 0);
}

TEST(CooccurrenceTest, RandomProfilesMatchPairEnumeration) {
  std::mt19937_64 rng(99);
  std::bernoulli_distribution coin(0.35);
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<InstanceProfile> profiles;
    const int n = trial % 9;
    for (int i = 0; i < n; ++i) {
      InstanceProfile p;
      p.video_id = "v";
      p.object_id = i + 1;
      for (int a = 0; a < kBinaryAttributeCount; ++a) {
        if (coin(rng)) p.profile.set(AttributeAt(a), coin(rng), Provenance::kSidecar);
      }
      profiles.push_back(p);
    }
    const CooccurrenceMatrix m = Cooccurrence(profiles);
    for (int a = 0; a < kBinaryAttributeCount; ++a) {
      for (int b = 0; b < kBinaryAttributeCount; ++b) {
        std::int64_t want = 0;
        for (const auto& p : profiles) {
          want += p.profile.flags[a].value_or(false) && p.profile.flags[b].value_or(false);
        }
        EXPECT_EQ(m.counts[a][b], want);
        EXPECT_EQ(m.counts[a][b], m.counts[b][a]);
        EXPECT_LE(m.counts[a][b], std::min(m.counts[a][a], m.counts[b][b]));
      }
    }
  }
}

ObjectRecord Scored(std::string vid, int id, double score) {
  ObjectRecord o;
  o.video_id = std::move(vid);
  o.object_id = id;
  o.j = score;
  o.f = score;
  o.f_dot = score;
  return o;
}

TEST(AttributeBreakdownTest, HandMeans) {
  BenchmarkReport report;
  report.objects = {Scored("a", 1, 0.2), Scored("a", 2, 0.4), Scored("b", 1, 0.9)};
  report.videos = {{"a"}, {"b"}};
  AggregateReport(report);
  ProfileSet profiles;
  profiles.profiles = {WithFlags("a", 1, {Attribute::kST, Attribute::kMT}),
                       WithFlags("a", 2, {Attribute::kST, Attribute::kMT}),
                       WithFlags("b", 1, {Attribute::kFM})};
  const AttributeBreakdownTable t = AttributeBreakdown(report, profiles);
  ASSERT_EQ(t.rows.size(), 13u);
  EXPECT_NEAR(*t.rows[static_cast<int>(Attribute::kST)].j_and_f_dot, 0.3, 1e-15);
  EXPECT_EQ(t.rows[static_cast<int>(Attribute::kST)].instances, 2u);
  EXPECT_DOUBLE_EQ(*t.rows[static_cast<int>(Attribute::kFM)].j_and_f_dot, 0.9);
  EXPECT_FALSE(t.rows[static_cast<int>(Attribute::kCAM)].j_and_f_dot.has_value());
  EXPECT_EQ(t.rows[static_cast<int>(Attribute::kCAM)].instances, 0u);
  EXPECT_NEAR(*t.overall, 0.5, 1e-15);
}

TEST(AttributeBreakdownTest, ConstantScores) {
  BenchmarkReport report;
  report.objects = {Scored("a", 1, 1.0), Scored("a", 2, 1.0)};
  ProfileSet profiles;
  profiles.profiles = {WithFlags("a", 1, {Attribute::kST, Attribute::kOCC}),
                       WithFlags("a", 2, {Attribute::kOCC, Attribute::kIC})};
  for (const auto& row : AttributeBreakdown(report, profiles).rows) {
    if (row.instances > 0) EXPECT_EQ(row.j_and_f_dot, 1.0);
  }
}

TEST(AttributeBreakdownTest, MissingProfile) {
  BenchmarkReport report;
  report.objects = {Scored("a", 1, 1.0), Scored("a", 2, 1.0)};
  ProfileSet profiles;
  profiles.profiles = {WithFlags("a", 1, {})};
  EXPECT_EQ(CodeOf([&] { AttributeBreakdown(report, profiles); }), ErrorCode::kMissingProfile);
}

TEST(AttributeBreakdownTest, ColumnsStayWithinScoreRange) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> score(0.0, 1.0);
  std::bernoulli_distribution coin(0.4);
  for (int trial = 0; trial < 30; ++trial) {
    BenchmarkReport report;
    ProfileSet profiles;
    double lo = 1.0, hi = 0.0;
    for (int i = 1; i <= 12; ++i) {
      const double s = score(rng);
      lo = std::min(lo, s);
      hi = std::max(hi, s);
      report.objects.push_back(Scored("v", i, s));
      std::vector<Attribute> flags;
      for (int a = 0; a < kBinaryAttributeCount; ++a) {
        if (coin(rng)) flags.push_back(AttributeAt(a));
      }
      profiles.profiles.push_back(WithFlags("v", i, flags));
    }
    for (const auto& row : AttributeBreakdown(report, profiles).rows) {
      if (!row.j_and_f_dot) continue;
      EXPECT_GE(*row.j_and_f_dot, lo - 1e-15);
      EXPECT_LE(*row.j_and_f_dot, hi + 1e-15);
    }
  }
}

}  // namespace
}  // namespace uwvos
