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

#ifndef UWVOS_PNG_CODEC_H_
#define UWVOS_PNG_CODEC_H_

#include <cstdint>
#include <span>
#include <vector>

#include "uwvos/mask.h"

namespace uwvos {

enum class PngLayout {
  kPalette,    // YouTube-VOS / DAVIS style palettized annotation
  kGrayscale,
};

// Decodes an 8-bit grayscale or palette-indexed PNG. Each label is the raw
// sample value or palette index; palette colors are never looked at.
// Throws Error{kDecodeError} on a corrupt stream or an unsupported color type
// and Error{kUnsupportedDepth} when the bit depth is not 8.
MaskFrame DecodeMaskFrame(std::span<const std::uint8_t> png_bytes);

std::vector<std::uint8_t> EncodeMaskFrame(const MaskFrame& frame,
                                          PngLayout layout = PngLayout::kPalette);

// Reads only the IHDR chunk.
struct PngHeader {
  int width = 0;
  int height = 0;
  int bit_depth = 0;
  int color_type = 0;
};
PngHeader ReadPngHeader(std::span<const std::uint8_t> png_bytes);

}  // namespace uwvos

#endif  // UWVOS_PNG_CODEC_H_
