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

#include "uwvos/png_codec.h"

#include <png.h>

#include <array>
#include <cstring>
#include <string>

#include "uwvos/error.h"

namespace uwvos {
namespace {

constexpr std::array<std::uint8_t, 8> kSignature = {0x89, 'P', 'N', 'G',
                                                    '\r', '\n', 0x1a, '\n'};

struct ReadState {
  std::span<const std::uint8_t> bytes;
  std::size_t offset = 0;
  char message[256] = {0};
};

void ReadCallback(png_structp png, png_bytep out, png_size_t length) {
  auto* state = static_cast<ReadState*>(png_get_io_ptr(png));
  if (state->offset + length > state->bytes.size()) {
    png_error(png, "unexpected end of PNG stream");
  }
  std::memcpy(out, state->bytes.data() + state->offset, length);
  state->offset += length;
}

void ErrorCallback(png_structp png, png_const_charp message) {
  auto* state = static_cast<ReadState*>(png_get_error_ptr(png));
  std::strncpy(state->message, message, sizeof(state->message) - 1);
  png_longjmp(png, 1);
}

void WarningCallback(png_structp, png_const_charp) {}

struct WriteState {
  std::vector<std::uint8_t> bytes;
  char message[256] = {0};
};

void WriteCallback(png_structp png, png_bytep data, png_size_t length) {
  auto* state = static_cast<WriteState*>(png_get_io_ptr(png));
  state->bytes.insert(state->bytes.end(), data, data + length);
}

void FlushCallback(png_structp) {}

void WriteErrorCallback(png_structp png, png_const_charp message) {
  auto* state = static_cast<WriteState*>(png_get_error_ptr(png));
  std::strncpy(state->message, message, sizeof(state->message) - 1);
  png_longjmp(png, 1);
}

// Palette that spreads label bits over the color channels; the same scheme
// the DAVIS / PASCAL VOC annotation palettes use.
std::array<png_color, 256> LabelPalette() {
  std::array<png_color, 256> palette{};
  for (int label = 0; label < 256; ++label) {
    int r = 0, g = 0, b = 0;
    int c = label;
    for (int bit = 7; bit >= 0 && c != 0; --bit) {
      r |= ((c >> 0) & 1) << bit;
      g |= ((c >> 1) & 1) << bit;
      b |= ((c >> 2) & 1) << bit;
      c >>= 3;
    }
    palette[label] = png_color{static_cast<png_byte>(r),
                               static_cast<png_byte>(g),
                               static_cast<png_byte>(b)};
  }
  palette[255] = png_color{224, 224, 192};
  return palette;
}

}  // namespace

PngHeader ReadPngHeader(std::span<const std::uint8_t> bytes) {
  // signature (8) + chunk length (4) + "IHDR" (4) + 13 bytes of payload
  if (bytes.size() < 29 ||
      std::memcmp(bytes.data(), kSignature.data(), kSignature.size()) != 0 ||
      std::memcmp(bytes.data() + 12, "IHDR", 4) != 0) {
    throw Error(ErrorCode::kDecodeError, "not a PNG stream");
  }
  auto be32 = [&](std::size_t at) {
    return (static_cast<std::uint32_t>(bytes[at]) << 24) |
           (static_cast<std::uint32_t>(bytes[at + 1]) << 16) |
           (static_cast<std::uint32_t>(bytes[at + 2]) << 8) |
           static_cast<std::uint32_t>(bytes[at + 3]);
  };
  PngHeader header;
  header.width = static_cast<int>(be32(16));
  header.height = static_cast<int>(be32(20));
  header.bit_depth = bytes[24];
  header.color_type = bytes[25];
  if (header.width <= 0 || header.height <= 0) {
    throw Error(ErrorCode::kDecodeError, "PNG has an empty raster");
  }
  return header;
}

MaskFrame DecodeMaskFrame(std::span<const std::uint8_t> png_bytes) {
  const PngHeader header = ReadPngHeader(png_bytes);
  if (header.bit_depth != 8) {
    throw Error(ErrorCode::kUnsupportedDepth,
                "mask PNG bit depth is " + std::to_string(header.bit_depth) +
                    ", expected 8");
  }
  if (header.color_type != PNG_COLOR_TYPE_GRAY &&
      header.color_type != PNG_COLOR_TYPE_PALETTE) {
    throw Error(ErrorCode::kDecodeError,
                "mask PNG must be grayscale or palette-indexed (color type " +
                    std::to_string(header.color_type) + ")");
  }

  MaskFrame frame;
  frame.width = header.width;
  frame.height = header.height;
  frame.labels.assign(static_cast<std::size_t>(frame.width) * frame.height, 0);
  std::vector<png_bytep> rows(frame.height);
  for (int y = 0; y < frame.height; ++y) {
    rows[y] = frame.labels.data() + static_cast<std::size_t>(y) * frame.width;
  }

  ReadState state;
  state.bytes = png_bytes;
  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, &state,
                                           ErrorCallback, WarningCallback);
  if (png == nullptr) {
    throw Error(ErrorCode::kDecodeError, "png_create_read_struct failed");
  }
  png_infop info = png_create_info_struct(png);
  if (info == nullptr) {
    png_destroy_read_struct(&png, nullptr, nullptr);
    throw Error(ErrorCode::kDecodeError, "png_create_info_struct failed");
  }
  // No C++ object with a destructor may be created between setjmp and the
  // last libpng call below.
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw Error(ErrorCode::kDecodeError,
                std::string("corrupt PNG: ") + state.message);
  }
  png_set_read_fn(png, &state, ReadCallback);
  png_read_info(png, info);
  png_set_interlace_handling(png);
  png_read_update_info(png, info);
  png_read_image(png, rows.data());
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);
  return frame;
}

std::vector<std::uint8_t> EncodeMaskFrame(const MaskFrame& frame,
                                          PngLayout layout) {
  if (frame.width <= 0 || frame.height <= 0 ||
      frame.labels.size() !=
          static_cast<std::size_t>(frame.width) * frame.height) {
    throw Error(ErrorCode::kDimensionMismatch,
                "mask frame storage does not match its shape");
  }
  const auto palette = LabelPalette();
  std::vector<png_const_bytep> rows(frame.height);
  for (int y = 0; y < frame.height; ++y) {
    rows[y] = frame.labels.data() + static_cast<std::size_t>(y) * frame.width;
  }

  WriteState state;
  state.bytes.reserve(frame.labels.size() / 4 + 128);
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, &state,
                                            WriteErrorCallback, WarningCallback);
  if (png == nullptr) {
    throw Error(ErrorCode::kIoError, "png_create_write_struct failed");
  }
  png_infop info = png_create_info_struct(png);
  if (info == nullptr) {
    png_destroy_write_struct(&png, nullptr);
    throw Error(ErrorCode::kIoError, "png_create_info_struct failed");
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    throw Error(ErrorCode::kIoError,
                std::string("PNG encode failed: ") + state.message);
  }
  png_set_write_fn(png, &state, WriteCallback, FlushCallback);
  const int color_type = layout == PngLayout::kPalette ? PNG_COLOR_TYPE_PALETTE
                                                       : PNG_COLOR_TYPE_GRAY;
  png_set_IHDR(png, info, frame.width, frame.height, 8, color_type,
               PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
               PNG_FILTER_TYPE_DEFAULT);
  if (layout == PngLayout::kPalette) {
    png_set_PLTE(png, info, palette.data(), static_cast<int>(palette.size()));
  }
  png_write_info(png, info);
  png_write_image(png, const_cast<png_bytepp>(rows.data()));
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
  return std::move(state.bytes);
}

}  // namespace uwvos
