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

#include "uwvos/tracking.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "uwvos/error.h"

namespace uwvos {

std::optional<BBox> MaskToBBox(const BinaryMask& mask) { return Summarize(mask).box; }

double BoxCenterX(const BBox& box) { return (box.x_min + box.x_max + 1) / 2.0; }
double BoxCenterY(const BBox& box) { return (box.y_min + box.y_max + 1) / 2.0; }

double BoxIoU(const BBox& a, const BBox& b) {
  const int ix = std::min(a.x_max, b.x_max) - std::max(a.x_min, b.x_min) + 1;
  const int iy = std::min(a.y_max, b.y_max) - std::max(a.y_min, b.y_min) + 1;
  const double inter = (ix > 0 && iy > 0) ? static_cast<double>(ix) * iy : 0.0;
  const double area_a = static_cast<double>(a.width()) * a.height();
  const double area_b = static_cast<double>(b.width()) * b.height();
  return inter / (area_a + area_b - inter);
}

double PrecisionThreshold(int k) { return static_cast<double>(k); }
double NormPrecisionThreshold(int k) { return k / 100.0; }
double SuccessThreshold(int k) { return k / 20.0; }

namespace {

void CheckBox(const std::optional<BBox>& box, int width, int height) {
  if (!box) return;
  if (box->x_min > box->x_max || box->y_min > box->y_max || box->x_min < 0 ||
      box->y_min < 0 || box->x_max >= width || box->y_max >= height) {
    throw Error(ErrorCode::kInvalidArgument, "box outside the frame or inverted");
  }
}

}  // namespace

TrackingMetrics ComputeTrackingMetrics(std::span<const std::optional<BBox>> pred,
                                       std::span<const std::optional<BBox>> gt,
                                       int width, int height) {
  if (pred.size() != gt.size()) {
    throw Error(ErrorCode::kLengthMismatch,
                "prediction has " + std::to_string(pred.size()) + " boxes, ground truth " +
                    std::to_string(gt.size()));
  }
  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> error, norm_error, overlap;
  for (std::size_t i = 0; i < gt.size(); ++i) {
    CheckBox(pred[i], width, height);
    CheckBox(gt[i], width, height);
    if (!gt[i]) continue;
    const BBox& g = *gt[i];
    if (!pred[i]) {
      error.push_back(kInf);
      norm_error.push_back(kInf);
      overlap.push_back(0.0);
      continue;
    }
    const BBox& p = *pred[i];
    const double dx = BoxCenterX(p) - BoxCenterX(g);
    const double dy = BoxCenterY(p) - BoxCenterY(g);
    error.push_back(std::hypot(dx, dy));
    norm_error.push_back(std::hypot(dx / g.width(), dy / g.height()));
    overlap.push_back(BoxIoU(p, g));
  }

  TrackingMetrics m;
  m.frames_evaluated = error.size();
  m.precision_curve.assign(kPrecisionThresholdCount, 0.0);
  m.norm_precision_curve.assign(kNormPrecisionThresholdCount, 0.0);
  m.success_curve.assign(kSuccessThresholdCount, 0.0);
  if (error.empty()) return m;

  const double n = static_cast<double>(error.size());
  auto fraction = [n](const std::vector<double>& values, auto accept) {
    return static_cast<double>(std::count_if(values.begin(), values.end(), accept)) / n;
  };
  for (int k = 0; k < kPrecisionThresholdCount; ++k) {
    const double t = PrecisionThreshold(k);
    m.precision_curve[k] = fraction(error, [t](double e) { return e <= t; });
  }
  for (int k = 0; k < kNormPrecisionThresholdCount; ++k) {
    const double t = NormPrecisionThreshold(k);
    m.norm_precision_curve[k] = fraction(norm_error, [t](double e) { return e <= t; });
  }
  for (int k = 0; k < kSuccessThresholdCount; ++k) {
    const double t = SuccessThreshold(k);
    m.success_curve[k] = fraction(overlap, [t](double o) { return o > 0.0 && o >= t; });
  }
  m.precision = m.precision_curve[20];
  m.norm_precision = m.norm_precision_curve[20];
  m.auc = std::accumulate(m.success_curve.begin(), m.success_curve.end(), 0.0) /
          kSuccessThresholdCount;
  return m;
}

}  // namespace uwvos
