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

#ifndef UWVOS_TESTS_TESTING_FIXTURES_H_
#define UWVOS_TESTS_TESTING_FIXTURES_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "uwvos/image_io.h"
#include "uwvos/mask.h"

namespace uwvos::testing {

// A fresh directory removed again on destruction.
class TempDir {
 public:
  TempDir();
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

// Minimal PNG writer independent of libpng: stored deflate blocks, hand
// CRC-32 and Adler-32. `palette` selects color type 3 instead of 0.
std::vector<std::uint8_t> OraclePngEncode(const MaskFrame& frame, bool palette);
// Lower level: `filtered_rows` is the scanline stream, filter bytes included.
// Color type 3 gets a 256-entry palette.
std::vector<std::uint8_t> OraclePngRaw(int width, int height, int bit_depth, int color_type,
                                       const std::vector<std::uint8_t>& filtered_rows);
std::uint32_t Crc32(const std::uint8_t* data, std::size_t n, std::uint32_t crc = 0);

MaskFrame BlankFrame(int width, int height);
// Fills the inclusive rectangle [x0, x1] x [y0, y1].
void PaintRect(MaskFrame& frame, int x0, int y0, int x1, int y1, std::uint8_t label);
BinaryMask RectMask(int width, int height, int x0, int y0, int x1, int y1);
BinaryMask RandomMask(int width, int height, std::mt19937_64& rng, double density = 0.5);
// Union of a few random rectangles; more realistic shapes than noise.
BinaryMask RandomBlobMask(int width, int height, std::mt19937_64& rng);

struct FixtureVideo {
  std::string id;
  std::vector<MaskFrame> frames;
  // Defaults to 00000, 00005, 00010, ...
  std::vector<std::string> frame_names;
  std::map<int, std::string> categories;
  // Written to JPEGImages/ when present, one per frame.
  std::vector<RgbImage> images;
  bool images_as_png = false;
};

std::vector<std::string> DefaultFrameNames(std::size_t n);

// Writes meta.json (objects and their present frames are read off the
// rasters), Annotations/ and optionally JPEGImages/.
void WriteSplit(const std::filesystem::path& root, const std::vector<FixtureVideo>& videos);
// Writes `root/<video>/<frame>.png` for each raster.
void WritePredictions(const std::filesystem::path& root, const std::string& video_id,
                      const std::vector<std::string>& frame_names,
                      const std::vector<MaskFrame>& frames);

RgbImage SolidImage(int width, int height, std::uint8_t r, std::uint8_t g, std::uint8_t b);

}  // namespace uwvos::testing

#endif  // UWVOS_TESTS_TESTING_FIXTURES_H_
