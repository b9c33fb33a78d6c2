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

#ifndef UWVOS_MASK_H_
#define UWVOS_MASK_H_

#include <cstdint>
#include <optional>
#include <vector>

namespace uwvos {

inline constexpr std::uint8_t kBackgroundLabel = 0;
inline constexpr std::uint8_t kIgnoreLabel = 255;
inline constexpr int kMinObjectId = 1;
inline constexpr int kMaxObjectId = 254;

// One frame's multi-object label raster, row-major.
struct MaskFrame {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> labels;

  std::uint8_t at(int x, int y) const {
    return labels[static_cast<std::size_t>(y) * width + x];
  }
};

// Foreground/background raster, one byte per pixel (0 or 1).
class BinaryMask {
 public:
  BinaryMask() = default;
  BinaryMask(int width, int height);
  BinaryMask(int width, int height, std::vector<std::uint8_t> bits);

  int width() const { return width_; }
  int height() const { return height_; }
  std::size_t size() const { return bits_.size(); }

  bool at(int x, int y) const {
    return bits_[static_cast<std::size_t>(y) * width_ + x] != 0;
  }
  void set(int x, int y, bool value) {
    bits_[static_cast<std::size_t>(y) * width_ + x] = value ? 1 : 0;
  }
  bool operator[](std::size_t i) const { return bits_[i] != 0; }

  const std::vector<std::uint8_t>& bits() const { return bits_; }

  std::int64_t count() const;
  bool empty() const { return count() == 0; }
  bool same_shape(const BinaryMask& other) const {
    return width_ == other.width_ && height_ == other.height_;
  }

  friend bool operator==(const BinaryMask&, const BinaryMask&) = default;

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<std::uint8_t> bits_;
};

// mask[i] = (labels[i] == label)
BinaryMask LabelMask(const MaskFrame& frame, std::uint8_t label);

// Pixels carrying the ignore label.
BinaryMask IgnoreMask(const MaskFrame& frame);

// pred & ~remove
BinaryMask Subtract(const BinaryMask& mask, const BinaryMask& remove);

// Inclusive pixel box.
struct BBox {
  int x_min = 0;
  int y_min = 0;
  int x_max = 0;
  int y_max = 0;

  int width() const { return x_max - x_min + 1; }
  int height() const { return y_max - y_min + 1; }
  friend bool operator==(const BBox&, const BBox&) = default;
};

// Geometry of one object in one frame. Everything the attribute and
// statistics code needs, so neither has to keep rasters around.
struct MaskSummary {
  std::int64_t area = 0;
  double centroid_x = 0.0;
  double centroid_y = 0.0;
  std::optional<BBox> box;

  bool present() const { return area > 0; }
};

MaskSummary Summarize(const BinaryMask& mask);

// Per-label summaries of a whole raster in a single pass. Index = label.
std::vector<MaskSummary> SummarizeLabels(const MaskFrame& frame);

}  // namespace uwvos

#endif  // UWVOS_MASK_H_
