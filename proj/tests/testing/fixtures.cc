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

#include "tests/testing/fixtures.h"

#include <unistd.h>

#include <algorithm>
#include <atomic>
#include <fstream>
#include <set>

#include "json.hpp"

namespace uwvos::testing {

namespace fs = std::filesystem;

TempDir::TempDir() {
  static std::atomic<int> counter{0};
  std::random_device rd;
  path_ = fs::temp_directory_path() /
          ("uwvos_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++) + "_" +
           std::to_string(rd()));
  fs::create_directories(path_);
}

TempDir::~TempDir() {
  std::error_code ec;
  fs::remove_all(path_, ec);
}

std::uint32_t Crc32(const std::uint8_t* data, std::size_t n, std::uint32_t crc) {
  crc = ~crc;
  for (std::size_t i = 0; i < n; ++i) {
    crc ^= data[i];
    for (int k = 0; k < 8; ++k) crc = (crc >> 1) ^ (0xEDB88320u & (0u - (crc & 1u)));
  }
  return ~crc;
}

namespace {

void PutBe32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int s = 24; s >= 0; s -= 8) out.push_back(static_cast<std::uint8_t>(v >> s));
}

void Chunk(std::vector<std::uint8_t>& out, const char* type,
           const std::vector<std::uint8_t>& payload) {
  PutBe32(out, static_cast<std::uint32_t>(payload.size()));
  std::vector<std::uint8_t> body(type, type + 4);
  body.insert(body.end(), payload.begin(), payload.end());
  out.insert(out.end(), body.begin(), body.end());
  PutBe32(out, Crc32(body.data(), body.size()));
}

std::vector<std::uint8_t> StoredZlib(const std::vector<std::uint8_t>& raw) {
  std::vector<std::uint8_t> out = {0x78, 0x01};
  std::size_t pos = 0;
  do {
    const std::size_t n = std::min<std::size_t>(65535, raw.size() - pos);
    const bool last = pos + n == raw.size();
    out.push_back(last ? 1 : 0);
    out.push_back(static_cast<std::uint8_t>(n & 0xFF));
    out.push_back(static_cast<std::uint8_t>(n >> 8));
    out.push_back(static_cast<std::uint8_t>(~n & 0xFF));
    out.push_back(static_cast<std::uint8_t>((~n >> 8) & 0xFF));
    out.insert(out.end(), raw.begin() + static_cast<std::ptrdiff_t>(pos),
               raw.begin() + static_cast<std::ptrdiff_t>(pos + n));
    pos += n;
  } while (pos < raw.size());
  std::uint32_t a = 1, b = 0;
  for (std::uint8_t byte : raw) {
    a = (a + byte) % 65521;
    b = (b + a) % 65521;
  }
  PutBe32(out, (b << 16) | a);
  return out;
}

}  // namespace

std::vector<std::uint8_t> OraclePngRaw(int width, int height, int bit_depth, int color_type,
                                       const std::vector<std::uint8_t>& filtered_rows) {
  std::vector<std::uint8_t> out = {0x89, 'P', 'N', 'G', 0x0D, 0x0A, 0x1A, 0x0A};
  std::vector<std::uint8_t> ihdr;
  PutBe32(ihdr, static_cast<std::uint32_t>(width));
  PutBe32(ihdr, static_cast<std::uint32_t>(height));
  ihdr.insert(ihdr.end(), {static_cast<std::uint8_t>(bit_depth),
                           static_cast<std::uint8_t>(color_type), 0, 0, 0});
  Chunk(out, "IHDR", ihdr);
  if (color_type == 3) {
    std::vector<std::uint8_t> plte;
    for (int i = 0; i < 256; ++i) {
      plte.push_back(static_cast<std::uint8_t>(i * 37));
      plte.push_back(static_cast<std::uint8_t>(i * 91));
      plte.push_back(static_cast<std::uint8_t>(i * 53));
    }
    Chunk(out, "PLTE", plte);
  }
  Chunk(out, "IDAT", StoredZlib(filtered_rows));
  Chunk(out, "IEND", {});
  return out;
}

std::vector<std::uint8_t> OraclePngEncode(const MaskFrame& frame, bool palette) {
  std::vector<std::uint8_t> raw;
  for (int y = 0; y < frame.height; ++y) {
    raw.push_back(0);
    for (int x = 0; x < frame.width; ++x) raw.push_back(frame.at(x, y));
  }
  return OraclePngRaw(frame.width, frame.height, 8, palette ? 3 : 0, raw);
}

MaskFrame BlankFrame(int width, int height) {
  MaskFrame f;
  f.width = width;
  f.height = height;
  f.labels.assign(static_cast<std::size_t>(width) * height, 0);
  return f;
}

void PaintRect(MaskFrame& frame, int x0, int y0, int x1, int y1, std::uint8_t label) {
  for (int y = y0; y <= y1; ++y) {
    for (int x = x0; x <= x1; ++x) {
      frame.labels[static_cast<std::size_t>(y) * frame.width + x] = label;
    }
  }
}

BinaryMask RectMask(int width, int height, int x0, int y0, int x1, int y1) {
  BinaryMask m(width, height);
  for (int y = y0; y <= y1; ++y) {
    for (int x = x0; x <= x1; ++x) m.set(x, y, true);
  }
  return m;
}

BinaryMask RandomMask(int width, int height, std::mt19937_64& rng, double density) {
  std::bernoulli_distribution on(density);
  BinaryMask m(width, height);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) m.set(x, y, on(rng));
  }
  return m;
}

BinaryMask RandomBlobMask(int width, int height, std::mt19937_64& rng) {
  BinaryMask m(width, height);
  std::uniform_int_distribution<int> count(0, 4);
  std::uniform_int_distribution<int> xs(0, width - 1);
  std::uniform_int_distribution<int> ys(0, height - 1);
  const int n = count(rng);
  for (int k = 0; k < n; ++k) {
    int x0 = xs(rng), x1 = xs(rng), y0 = ys(rng), y1 = ys(rng);
    if (x0 > x1) std::swap(x0, x1);
    if (y0 > y1) std::swap(y0, y1);
    for (int y = y0; y <= y1; ++y) {
      for (int x = x0; x <= x1; ++x) m.set(x, y, true);
    }
  }
  return m;
}

std::vector<std::string> DefaultFrameNames(std::size_t n) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) {
    std::string s = std::to_string(i * 5);
    names.push_back(std::string(5 - std::min<std::size_t>(5, s.size()), '0') + s);
  }
  return names;
}

namespace {

void WriteBytes(const fs::path& path, const std::vector<std::uint8_t>& bytes) {
  fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
}

}  // namespace

void WriteSplit(const fs::path& root, const std::vector<FixtureVideo>& videos) {
  nlohmann::ordered_json meta;
  meta["videos"] = nlohmann::ordered_json::object();
  for (const auto& v : videos) {
    const auto names = v.frame_names.empty() ? DefaultFrameNames(v.frames.size()) : v.frame_names;
    nlohmann::ordered_json objects = nlohmann::ordered_json::object();
    for (const auto& [id, category] : v.categories) {
      std::vector<std::string> present;
      for (std::size_t i = 0; i < v.frames.size(); ++i) {
        const auto& labels = v.frames[i].labels;
        if (std::find(labels.begin(), labels.end(), id) != labels.end()) {
          present.push_back(names[i]);
        }
      }
      if (present.empty()) present.push_back(names.front());
      objects[std::to_string(id)] = {{"category", category}, {"frames", present}};
    }
    meta["videos"][v.id] = {{"objects", objects}};
    for (std::size_t i = 0; i < v.frames.size(); ++i) {
      WriteBytes(root / "Annotations" / v.id / (names[i] + ".png"),
                 OraclePngEncode(v.frames[i], true));
    }
    for (std::size_t i = 0; i < v.images.size(); ++i) {
      if (v.images_as_png) {
        WriteBytes(root / "JPEGImages" / v.id / (names[i] + ".png"), EncodeRgbPng(v.images[i]));
      } else {
        WriteBytes(root / "JPEGImages" / v.id / (names[i] + ".jpg"),
                   EncodeRgbJpeg(v.images[i], 100));
      }
    }
  }
  fs::create_directories(root);
  std::ofstream(root / "meta.json") << meta.dump(2);
}

void WritePredictions(const fs::path& root, const std::string& video_id,
                      const std::vector<std::string>& frame_names,
                      const std::vector<MaskFrame>& frames) {
  for (std::size_t i = 0; i < frames.size(); ++i) {
    WriteBytes(root / video_id / (frame_names[i] + ".png"), OraclePngEncode(frames[i], true));
  }
}

RgbImage SolidImage(int width, int height, std::uint8_t r, std::uint8_t g, std::uint8_t b) {
  RgbImage image;
  image.width = width;
  image.height = height;
  for (int i = 0; i < width * height; ++i) image.pixels.insert(image.pixels.end(), {r, g, b});
  return image;
}

}  // namespace uwvos::testing
