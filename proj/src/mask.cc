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

#include "uwvos/mask.h"

#include <algorithm>
#include <array>

#include "uwvos/error.h"

namespace uwvos {

BinaryMask::BinaryMask(int width, int height)
    : width_(width),
      height_(height),
      bits_(static_cast<std::size_t>(width) * height, 0) {}

BinaryMask::BinaryMask(int width, int height, std::vector<std::uint8_t> bits)
    : width_(width), height_(height), bits_(std::move(bits)) {
  if (bits_.size() != static_cast<std::size_t>(width) * height) {
    throw Error(ErrorCode::kDimensionMismatch,
                "binary mask storage does not match its shape");
  }
  for (auto& b : bits_) b = b != 0 ? 1 : 0;
}

std::int64_t BinaryMask::count() const {
  return std::count(bits_.begin(), bits_.end(), std::uint8_t{1});
}

BinaryMask LabelMask(const MaskFrame& frame, std::uint8_t label) {
  std::vector<std::uint8_t> bits(frame.labels.size());
  std::transform(frame.labels.begin(), frame.labels.end(), bits.begin(),
                 [label](std::uint8_t v) { return v == label ? 1 : 0; });
  return BinaryMask(frame.width, frame.height, std::move(bits));
}

BinaryMask IgnoreMask(const MaskFrame& frame) {
  return LabelMask(frame, kIgnoreLabel);
}

BinaryMask Subtract(const BinaryMask& mask, const BinaryMask& remove) {
  if (!mask.same_shape(remove)) {
    throw Error(ErrorCode::kDimensionMismatch, "mask shapes differ");
  }
  std::vector<std::uint8_t> bits(mask.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    bits[i] = (mask[i] && !remove[i]) ? 1 : 0;
  }
  return BinaryMask(mask.width(), mask.height(), std::move(bits));
}

namespace {

struct Accumulator {
  std::int64_t area = 0;
  std::int64_t sum_x = 0;
  std::int64_t sum_y = 0;
  int x_min = 0, y_min = 0, x_max = -1, y_max = -1;

  void add(int x, int y) {
    if (area == 0) {
      x_min = x_max = x;
      y_min = y_max = y;
    } else {
      x_min = std::min(x_min, x);
      x_max = std::max(x_max, x);
      y_min = std::min(y_min, y);
      y_max = std::max(y_max, y);
    }
    ++area;
    sum_x += x;
    sum_y += y;
  }

  MaskSummary finish() const {
    MaskSummary s;
    s.area = area;
    if (area > 0) {
      s.centroid_x = static_cast<double>(sum_x) / static_cast<double>(area);
      s.centroid_y = static_cast<double>(sum_y) / static_cast<double>(area);
      s.box = BBox{x_min, y_min, x_max, y_max};
    }
    return s;
  }
};

}  // namespace

MaskSummary Summarize(const BinaryMask& mask) {
  Accumulator acc;
  for (int y = 0; y < mask.height(); ++y) {
    for (int x = 0; x < mask.width(); ++x) {
      if (mask.at(x, y)) acc.add(x, y);
    }
  }
  return acc.finish();
}

std::vector<MaskSummary> SummarizeLabels(const MaskFrame& frame) {
  std::array<Accumulator, 256> acc{};
  for (int y = 0; y < frame.height; ++y) {
    for (int x = 0; x < frame.width; ++x) {
      acc[frame.at(x, y)].add(x, y);
    }
  }
  std::vector<MaskSummary> out(256);
  for (std::size_t i = 0; i < acc.size(); ++i) out[i] = acc[i].finish();
  return out;
}

}  // namespace uwvos
