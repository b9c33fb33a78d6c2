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

#include "uwvos/evaluation.h"

#include <algorithm>
#include <map>
#include <sstream>

#include "uwvos/error.h"
#include "uwvos/image_io.h"
#include "uwvos/metrics.h"
#include "uwvos/parallel.h"
#include "uwvos/png_codec.h"

namespace uwvos {

namespace fs = std::filesystem;

std::string EvalPolicy::tag() const {
  std::ostringstream out;
  out << "exclude_first=" << (exclude_first ? 1 : 0)
      << ";exclude_last=" << (exclude_last ? 1 : 0)
      << ";start=" << (from_first_appearance ? "first_appearance" : "frame0")
      << ";boundary_tol=";
  if (boundary_tolerance_px) {
    out << *boundary_tolerance_px;
  } else {
    out << "auto";
  }
  return out.str();
}

std::vector<std::size_t> SelectFrames(std::size_t frame_count, std::size_t start,
                                      const EvalPolicy& policy) {
  std::vector<std::size_t> frames;
  if (start >= frame_count) return frames;
  const std::size_t first = start + (policy.exclude_first ? 1 : 0);
  const std::size_t end = policy.exclude_last ? frame_count - 1 : frame_count;
  for (std::size_t i = first; i < end; ++i) frames.push_back(i);
  return frames;
}

FrameMetric EvaluateFrame(std::string frame_name, const BinaryMask& pred,
                          const BinaryMask& gt, const BinaryMask& ignore,
                          double tolerance_px) {
  const BinaryMask kept = Subtract(pred, ignore);
  FrameMetric m;
  m.frame_name = std::move(frame_name);
  m.j = RegionSimilarity(kept, gt, ignore);
  m.f = ContourAccuracy(kept, gt, tolerance_px);
  m.f_dot = AdjustedContourAccuracy(kept, gt, tolerance_px);
  return m;
}

std::optional<double> MeanOfDefined(const std::vector<std::optional<double>>& values) {
  double sum = 0.0;
  std::size_t n = 0;
  for (const auto& v : values) {
    if (!v) continue;
    sum += *v;
    ++n;
  }
  if (n == 0) return std::nullopt;
  return sum / static_cast<double>(n);
}

std::optional<double> MeanPair(std::optional<double> a, std::optional<double> b) {
  if (!a || !b) return std::nullopt;
  return (*a + *b) / 2.0;
}

namespace {

void FinishObject(ObjectRecord& record) {
  std::vector<std::optional<double>> js, fs, fdots;
  for (const auto& m : record.frames) {
    js.push_back(m.j);
    fs.push_back(m.f);
    fdots.push_back(m.f_dot);
  }
  record.j = MeanOfDefined(js);
  record.f = MeanOfDefined(fs);
  record.f_dot = MeanOfDefined(fdots);
}

}  // namespace

ObjectRecord EvaluateObject(const ObjectTrack& pred, const ObjectTrack& gt,
                            const EvalPolicy& policy) {
  if (pred.size() != gt.size()) {
    throw Error(ErrorCode::kTrackLengthMismatch,
                "prediction has " + std::to_string(pred.size()) + " frames, ground truth " +
                    std::to_string(gt.size()));
  }
  if (pred.width != gt.width || pred.height != gt.height) {
    throw Error(ErrorCode::kDimensionMismatch, "prediction and ground truth resolutions differ");
  }
  std::size_t start = 0;
  if (policy.from_first_appearance) {
    while (start < gt.size() && !gt.present(start)) ++start;
    if (start == gt.size()) start = 0;
  }
  const double tol = policy.boundary_tolerance_px.value_or(
      DefaultBoundaryTolerance(gt.width, gt.height));
  const BinaryMask no_ignore(gt.width, gt.height);

  ObjectRecord record;
  record.video_id = gt.video_id;
  record.object_id = gt.object_id;
  for (std::size_t i : SelectFrames(gt.size(), start, policy)) {
    record.frames.push_back(EvaluateFrame(gt.entries[i].frame_name, pred.mask_or_empty(i),
                                          gt.mask_or_empty(i), no_ignore, tol));
  }
  FinishObject(record);

  std::vector<std::optional<BBox>> pred_boxes, gt_boxes;
  for (std::size_t i = 0; i < gt.size(); ++i) {
    pred_boxes.push_back(pred.present(i) ? MaskToBBox(*pred.entries[i].mask) : std::nullopt);
    gt_boxes.push_back(gt.present(i) ? MaskToBBox(*gt.entries[i].mask) : std::nullopt);
  }
  record.tracking = ComputeTrackingMetrics(pred_boxes, gt_boxes, gt.width, gt.height);
  return record;
}

const ObjectRecord* BenchmarkReport::find(const std::string& video_id, int object_id) const {
  for (const auto& o : objects) {
    if (o.video_id == video_id && o.object_id == object_id) return &o;
  }
  return nullptr;
}

void AggregateReport(BenchmarkReport& report) {
  std::map<std::string, std::vector<const ObjectRecord*>> by_video;
  for (const auto& o : report.objects) by_video[o.video_id].push_back(&o);
  for (auto& v : report.videos) {
    std::vector<std::optional<double>> js, fs, fdots;
    for (const auto* o : by_video[v.video_id]) {
      js.push_back(o->j);
      fs.push_back(o->f);
      fdots.push_back(o->f_dot);
    }
    v.j = MeanOfDefined(js);
    v.f = MeanOfDefined(fs);
    v.f_dot = MeanOfDefined(fdots);
  }

  std::vector<std::optional<double>> js, fs, fdots, ps, pns, aucs;
  for (const auto& o : report.objects) {
    js.push_back(o.j);
    fs.push_back(o.f);
    fdots.push_back(o.f_dot);
    if (o.tracking.frames_evaluated > 0) {
      ps.push_back(o.tracking.precision);
      pns.push_back(o.tracking.norm_precision);
      aucs.push_back(o.tracking.auc);
    }
  }
  report.j = MeanOfDefined(js);
  report.f = MeanOfDefined(fs);
  report.f_dot = MeanOfDefined(fdots);
  report.j_and_f = MeanPair(report.j, report.f);
  report.j_and_f_dot = MeanPair(report.j, report.f_dot);
  report.tracking_precision = MeanOfDefined(ps);
  report.tracking_norm_precision = MeanOfDefined(pns);
  report.tracking_auc = MeanOfDefined(aucs);
}

namespace {

struct VideoResult {
  VideoRecord video;
  std::vector<ObjectRecord> objects;
};

VideoResult EvaluateVideo(const fs::path& pred_root, const DatasetIndex& index,
                          const VideoEntry& video, const EvalPolicy& policy) {
  VideoResult result;
  result.video.video_id = video.video_id;
  const fs::path pred_dir = pred_root / video.video_id;
  std::error_code ec;
  result.video.missing_prediction = !fs::is_directory(pred_dir, ec);

  const double tol = policy.boundary_tolerance_px.value_or(
      DefaultBoundaryTolerance(video.width, video.height));

  struct ObjectState {
    ObjectRecord record;
    std::vector<char> selected;
    std::vector<std::optional<BBox>> pred_boxes;
    std::vector<std::optional<BBox>> gt_boxes;
  };
  std::vector<ObjectState> states;
  for (const auto& [id, meta] : video.objects) {
    ObjectState s;
    s.record.video_id = video.video_id;
    s.record.object_id = id;
    const std::size_t start =
        policy.from_first_appearance ? video.frame_index(meta.first_frame).value_or(0) : 0;
    s.selected.assign(video.frame_count(), 0);
    for (std::size_t i : SelectFrames(video.frame_count(), start, policy)) s.selected[i] = 1;
    states.push_back(std::move(s));
  }

  const MaskFrame empty_pred{video.width, video.height,
                             std::vector<std::uint8_t>(
                                 static_cast<std::size_t>(video.width) * video.height, 0)};
  ForEachAnnotationFrame(index, video, [&](std::size_t i, const MaskFrame& gt_frame) {
    if (gt_frame.width != video.width || gt_frame.height != video.height) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "annotation frame " + video.frame_names[i] + " of '" + video.video_id +
                      "' changes resolution");
    }
    MaskFrame pred_frame;
    const fs::path pred_path = pred_dir / (video.frame_names[i] + ".png");
    bool have_pred = false;
    if (!result.video.missing_prediction && fs::is_regular_file(pred_path, ec)) {
      pred_frame = DecodeMaskFrame(ReadFileBytes(pred_path));
      have_pred = true;
      if (pred_frame.width != video.width || pred_frame.height != video.height) {
        throw Error(ErrorCode::kDimensionMismatch,
                    "prediction " + pred_path.string() + " is " +
                        std::to_string(pred_frame.width) + "x" +
                        std::to_string(pred_frame.height) + ", expected " +
                        std::to_string(video.width) + "x" + std::to_string(video.height));
      }
    } else if (!result.video.missing_prediction) {
      ++result.video.missing_prediction_frames;
    }
    const MaskFrame& pred_raster = have_pred ? pred_frame : empty_pred;
    const BinaryMask ignore = IgnoreMask(gt_frame);
    const auto pred_summaries = SummarizeLabels(pred_raster);
    const auto gt_summaries = SummarizeLabels(gt_frame);
    for (auto& s : states) {
      const auto label = static_cast<std::uint8_t>(s.record.object_id);
      s.pred_boxes.push_back(pred_summaries[label].box);
      s.gt_boxes.push_back(gt_summaries[label].box);
      if (!s.selected[i]) continue;
      s.record.frames.push_back(EvaluateFrame(video.frame_names[i],
                                              LabelMask(pred_raster, label),
                                              LabelMask(gt_frame, label), ignore, tol));
    }
  });

  for (auto& s : states) {
    FinishObject(s.record);
    s.record.tracking =
        ComputeTrackingMetrics(s.pred_boxes, s.gt_boxes, video.width, video.height);
    result.objects.push_back(std::move(s.record));
  }
  return result;
}

}  // namespace

BenchmarkReport EvaluateDataset(const fs::path& pred_root, const DatasetIndex& index,
                                const EvalPolicy& policy, unsigned threads) {
  std::vector<const VideoEntry*> videos;
  for (const auto& [id, v] : index.videos) videos.push_back(&v);
  std::vector<VideoResult> results(videos.size());
  ParallelFor(videos.size(), threads, [&](std::size_t i) {
    results[i] = EvaluateVideo(pred_root, index, *videos[i], policy);
  });

  BenchmarkReport report;
  report.policy = policy;
  for (auto& r : results) {
    if (r.video.missing_prediction) report.missing_prediction_videos.push_back(r.video.video_id);
    report.videos.push_back(std::move(r.video));
    for (auto& o : r.objects) report.objects.push_back(std::move(o));
  }
  AggregateReport(report);
  return report;
}

}  // namespace uwvos
