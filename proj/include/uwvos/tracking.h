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

#ifndef UWVOS_TRACKING_H_
#define UWVOS_TRACKING_H_

#include <optional>
#include <span>
#include <vector>

#include "uwvos/mask.h"

namespace uwvos {

// Tight inclusive bounds of the foreground; nullopt (ABSENT) for an empty mask.
std::optional<BBox> MaskToBBox(const BinaryMask& mask);

// Center of an inclusive pixel box, (min + max + 1) / 2 per axis.
double BoxCenterX(const BBox& box);
double BoxCenterY(const BBox& box);
double BoxIoU(const BBox& a, const BBox& b);

inline constexpr int kPrecisionThresholdCount = 51;    // 0, 1, ..., 50 px
inline constexpr int kNormPrecisionThresholdCount = 51;  // 0, 0.01, ..., 0.5
inline constexpr int kSuccessThresholdCount = 21;      // 0, 0.05, ..., 1.0

double PrecisionThreshold(int k);
double NormPrecisionThreshold(int k);
double SuccessThreshold(int k);

struct TrackingMetrics {
  std::vector<double> precision_curve;
  std::vector<double> norm_precision_curve;
  std::vector<double> success_curve;
  double precision = 0.0;       // at 20 px
  double norm_precision = 0.0;  // at 0.2
  double auc = 0.0;             // mean of success_curve
  std::size_t frames_evaluated = 0;
};

// Frames whose ground truth is ABSENT are skipped. An ABSENT prediction of a
// present target has infinite center error and zero overlap. Precision counts
// error <= threshold; success counts overlap >= threshold among frames with
// nonzero overlap.
TrackingMetrics ComputeTrackingMetrics(std::span<const std::optional<BBox>> pred,
                                       std::span<const std::optional<BBox>> gt,
                                       int width, int height);

}  // namespace uwvos

#endif  // UWVOS_TRACKING_H_
