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

#ifndef UWVOS_IMAGE_IO_H_
#define UWVOS_IMAGE_IO_H_

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace uwvos {

std::vector<std::uint8_t> ReadFileBytes(const std::filesystem::path& path);
std::string ReadFileText(const std::filesystem::path& path);
void WriteFileBytes(const std::filesystem::path& path,
                    std::span<const std::uint8_t> bytes);
void WriteFileText(const std::filesystem::path& path, std::string_view text);

// Interleaved 8-bit RGB.
struct RgbImage {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> pixels;
};

// Accepts JPEG or PNG (any PNG color type, converted to RGB).
RgbImage DecodeRgbImage(std::span<const std::uint8_t> bytes);

// Baseline JPEG, 4:4:4 sampling.
std::vector<std::uint8_t> EncodeRgbJpeg(const RgbImage& image, int quality = 95);
std::vector<std::uint8_t> EncodeRgbPng(const RgbImage& image);

}  // namespace uwvos

#endif  // UWVOS_IMAGE_IO_H_
