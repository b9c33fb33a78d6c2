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

#ifndef UWVOS_METRICS_H_
#define UWVOS_METRICS_H_

#include <optional>
#include <vector>

#include "uwvos/mask.h"

namespace uwvos {

// Region similarity J: |pred & gt| / |pred | gt| over pixels outside
// `ignore`. nullopt when the union is empty.
std::optional<double> RegionSimilarity(const BinaryMask& pred, const BinaryMask& gt,
                                       const BinaryMask& ignore);
std::optional<double> RegionSimilarity(const BinaryMask& pred, const BinaryMask& gt);

// Foreground pixels with at least one 4-neighbour in the background. Pixels
// outside the image count as background.
BinaryMask BoundaryPixels(const BinaryMask& mask);

// Exact squared Euclidean distance from every pixel to the nearest set pixel
// of `sites` (two-pass lower-envelope transform). +inf everywhere when
// `sites` is empty.
std::vector<double> SquaredDistanceTransform(const BinaryMask& sites);

// 0.008 x image diagonal, at least one pixel.
double DefaultBoundaryTolerance(int width, int height);

// Boundary F-measure. A boundary pixel is matched when some boundary pixel of
// the other mask lies within `tolerance_px` (Euclidean, inclusive).
// nullopt when both boundaries are empty, 0 when exactly one is.
std::optional<double> ContourAccuracy(const BinaryMask& pred, const BinaryMask& gt,
                                      double tolerance_px);

// F with absence credit: empty gt scores 1 iff pred is empty too, and an
// empty prediction of a present object scores 0. Always defined.
double AdjustedContourAccuracy(const BinaryMask& pred, const BinaryMask& gt,
                               double tolerance_px);

}  // namespace uwvos

#endif  // UWVOS_METRICS_H_
