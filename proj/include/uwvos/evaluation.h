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

#ifndef UWVOS_EVALUATION_H_
#define UWVOS_EVALUATION_H_

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "uwvos/dataset.h"
#include "uwvos/mask.h"
#include "uwvos/tracking.h"

namespace uwvos {

// Which frames of an object's sequence are scored. The evaluation window
// starts at the object's first appearance (or frame 0); the first frame of
// the window is the given reference mask and the last frame of the video is
// dropped as in the DAVIS protocol. Both exclusions can be turned off.
struct EvalPolicy {
  bool exclude_first = true;
  bool exclude_last = true;
  bool from_first_appearance = true;
  // Fixed tolerance in pixels; default is DefaultBoundaryTolerance().
  std::optional<double> boundary_tolerance_px;

  std::string tag() const;
};

std::vector<std::size_t> SelectFrames(std::size_t frame_count, std::size_t start,
                                      const EvalPolicy& policy);

struct FrameMetric {
  std::string frame_name;
  std::optional<double> j;
  std::optional<double> f;
  double f_dot = 0.0;
};

// Scores one frame. `ignore` pixels are removed from the prediction first.
FrameMetric EvaluateFrame(std::string frame_name, const BinaryMask& pred,
                          const BinaryMask& gt, const BinaryMask& ignore,
                          double tolerance_px);

std::optional<double> MeanOfDefined(const std::vector<std::optional<double>>& values);
std::optional<double> MeanPair(std::optional<double> a, std::optional<double> b);

struct ObjectRecord {
  std::string video_id;
  int object_id = 0;
  std::vector<FrameMetric> frames;
  std::optional<double> j;
  std::optional<double> f;
  std::optional<double> f_dot;
  TrackingMetrics tracking;

  std::optional<double> j_and_f() const { return MeanPair(j, f); }
  std::optional<double> j_and_f_dot() const { return MeanPair(j, f_dot); }
};

// Throws Error{kTrackLengthMismatch} when the tracks differ in length and
// Error{kDimensionMismatch} when they differ in resolution.
ObjectRecord EvaluateObject(const ObjectTrack& pred, const ObjectTrack& gt,
                            const EvalPolicy& policy);

struct VideoRecord {
  std::string video_id;
  std::optional<double> j;
  std::optional<double> f;
  std::optional<double> f_dot;
  bool missing_prediction = false;
  std::size_t missing_prediction_frames = 0;
};

struct BenchmarkReport {
  EvalPolicy policy;
  std::vector<ObjectRecord> objects;  // ordered by (video_id, object_id)
  std::vector<VideoRecord> videos;    // ordered by video_id
  std::optional<double> j;
  std::optional<double> f;
  std::optional<double> f_dot;
  std::optional<double> j_and_f;
  std::optional<double> j_and_f_dot;
  // Mean of per-object box metrics over objects with at least one GT box.
  std::optional<double> tracking_precision;
  std::optional<double> tracking_norm_precision;
  std::optional<double> tracking_auc;
  std::vector<std::string> missing_prediction_videos;

  const ObjectRecord* find(const std::string& video_id, int object_id) const;
};

// Recomputes the video and dataset aggregates from `report.objects`.
void AggregateReport(BenchmarkReport& report);

// Scores predicted rasters laid out as `pred_root/<video>/<frame>.png`.
// Missing frames and missing videos are scored as empty predictions; missing
// videos are listed in the report.
BenchmarkReport EvaluateDataset(const std::filesystem::path& pred_root,
                                const DatasetIndex& index, const EvalPolicy& policy,
                                unsigned threads = 1);

}  // namespace uwvos

#endif  // UWVOS_EVALUATION_H_
