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

#include "uwvos/metrics.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "uwvos/error.h"

namespace uwvos {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void RequireSameShape(const BinaryMask& a, const BinaryMask& b) {
  if (!a.same_shape(b)) {
    throw Error(ErrorCode::kDimensionMismatch,
                "mask shapes differ: " + std::to_string(a.width()) + "x" +
                    std::to_string(a.height()) + " vs " + std::to_string(b.width()) +
                    "x" + std::to_string(b.height()));
  }
}

void RequireTolerance(double tolerance_px) {
  if (!(tolerance_px >= 0.0) || !std::isfinite(tolerance_px)) {
    throw Error(ErrorCode::kInvalidArgument, "boundary tolerance must be finite and >= 0");
  }
}

// Lower envelope of parabolas rooted at the finite samples of one line.
// Scratch buffers are owned by the caller.
void Transform1d(const double* f, double* d, int n, std::vector<int>& v,
                 std::vector<double>& z) {
  auto intersect = [f](int q, int p) {
    return ((f[q] + static_cast<double>(q) * q) - (f[p] + static_cast<double>(p) * p)) /
           (2.0 * (q - p));
  };
  int k = -1;
  for (int q = 0; q < n; ++q) {
    if (f[q] == kInf) continue;
    if (k < 0) {
      k = 0;
      v[0] = q;
      z[0] = -kInf;
      z[1] = kInf;
      continue;
    }
    double s = intersect(q, v[k]);
    while (s <= z[k]) {
      --k;
      s = intersect(q, v[k]);
    }
    ++k;
    v[k] = q;
    z[k] = s;
    z[k + 1] = kInf;
  }
  if (k < 0) {
    std::fill(d, d + n, kInf);
    return;
  }
  int j = 0;
  for (int q = 0; q < n; ++q) {
    while (z[j + 1] < q) ++j;
    const double dq = q - v[j];
    d[q] = dq * dq + f[v[j]];
  }
}

}  // namespace

std::optional<double> RegionSimilarity(const BinaryMask& pred, const BinaryMask& gt,
                                       const BinaryMask& ignore) {
  RequireSameShape(pred, gt);
  RequireSameShape(pred, ignore);
  std::int64_t inter = 0;
  std::int64_t uni = 0;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    if (ignore[i]) continue;
    const bool p = pred[i];
    const bool g = gt[i];
    inter += (p && g) ? 1 : 0;
    uni += (p || g) ? 1 : 0;
  }
  if (uni == 0) return std::nullopt;
  return static_cast<double>(inter) / static_cast<double>(uni);
}

std::optional<double> RegionSimilarity(const BinaryMask& pred, const BinaryMask& gt) {
  return RegionSimilarity(pred, gt, BinaryMask(pred.width(), pred.height()));
}

BinaryMask BoundaryPixels(const BinaryMask& mask) {
  const int w = mask.width();
  const int h = mask.height();
  BinaryMask out(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      if (!mask.at(x, y)) continue;
      const bool edge = x == 0 || y == 0 || x == w - 1 || y == h - 1 ||
                        !mask.at(x - 1, y) || !mask.at(x + 1, y) ||
                        !mask.at(x, y - 1) || !mask.at(x, y + 1);
      if (edge) out.set(x, y, true);
    }
  }
  return out;
}

std::vector<double> SquaredDistanceTransform(const BinaryMask& sites) {
  const int w = sites.width();
  const int h = sites.height();
  std::vector<double> grid(sites.size());
  for (std::size_t i = 0; i < grid.size(); ++i) grid[i] = sites[i] ? 0.0 : kInf;

  const int n = std::max(w, h);
  std::vector<double> f(n), d(n);
  std::vector<int> v(n);
  std::vector<double> z(n + 1);

  for (int x = 0; x < w; ++x) {
    for (int y = 0; y < h; ++y) f[y] = grid[static_cast<std::size_t>(y) * w + x];
    Transform1d(f.data(), d.data(), h, v, z);
    for (int y = 0; y < h; ++y) grid[static_cast<std::size_t>(y) * w + x] = d[y];
  }
  for (int y = 0; y < h; ++y) {
    double* row = grid.data() + static_cast<std::size_t>(y) * w;
    std::copy(row, row + w, f.begin());
    Transform1d(f.data(), d.data(), w, v, z);
    std::copy(d.begin(), d.begin() + w, row);
  }
  return grid;
}

double DefaultBoundaryTolerance(int width, int height) {
  const double diagonal = std::hypot(static_cast<double>(width), static_cast<double>(height));
  return std::max(1.0, 0.008 * diagonal);
}

std::optional<double> ContourAccuracy(const BinaryMask& pred, const BinaryMask& gt,
                                      double tolerance_px) {
  RequireSameShape(pred, gt);
  RequireTolerance(tolerance_px);
  const BinaryMask pred_boundary = BoundaryPixels(pred);
  const BinaryMask gt_boundary = BoundaryPixels(gt);
  const std::int64_t n_pred = pred_boundary.count();
  const std::int64_t n_gt = gt_boundary.count();
  if (n_pred == 0 && n_gt == 0) return std::nullopt;
  if (n_pred == 0 || n_gt == 0) return 0.0;

  const double limit = tolerance_px * tolerance_px;
  const auto to_gt = SquaredDistanceTransform(gt_boundary);
  const auto to_pred = SquaredDistanceTransform(pred_boundary);
  std::int64_t pred_matched = 0;
  std::int64_t gt_matched = 0;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    if (pred_boundary[i] && to_gt[i] <= limit) ++pred_matched;
    if (gt_boundary[i] && to_pred[i] <= limit) ++gt_matched;
  }
  const double precision = static_cast<double>(pred_matched) / static_cast<double>(n_pred);
  const double recall = static_cast<double>(gt_matched) / static_cast<double>(n_gt);
  if (precision + recall == 0.0) return 0.0;
  return 2.0 * precision * recall / (precision + recall);
}

double AdjustedContourAccuracy(const BinaryMask& pred, const BinaryMask& gt,
                               double tolerance_px) {
  RequireSameShape(pred, gt);
  RequireTolerance(tolerance_px);
  const bool gt_empty = gt.empty();
  const bool pred_empty = pred.empty();
  if (gt_empty) return pred_empty ? 1.0 : 0.0;
  if (pred_empty) return 0.0;
  return ContourAccuracy(pred, gt, tolerance_px).value();
}

}  // namespace uwvos
