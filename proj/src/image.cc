// Copyright 2026 The BridgeSpan Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "bridgespan/image.h"

#include <algorithm>
#include <fstream>
#include <iterator>
#include <sstream>

#include "bridgespan/errors.h"

namespace bridgespan {

RgbImage::RgbImage(int height, int width) : height_(height), width_(width) {
  if (height < 0 || width < 0) {
    throw ArgumentError("image dimensions must be non-negative");
  }
  bytes_.assign(static_cast<std::size_t>(height) * width * 3, 0);
}

Rgb RgbImage::At(int y, int x) const {
  const std::size_t o = (static_cast<std::size_t>(y) * width_ + x) * 3;
  return {bytes_[o], bytes_[o + 1], bytes_[o + 2]};
}

void RgbImage::Set(int y, int x, Rgb color) {
  const std::size_t o = (static_cast<std::size_t>(y) * width_ + x) * 3;
  bytes_[o] = color.r;
  bytes_[o + 1] = color.g;
  bytes_[o + 2] = color.b;
}

void RgbImage::FillRect(int y0, int x0, int h, int w, Rgb color) {
  const int y1 = std::min(height_, y0 + h);
  const int x1 = std::min(width_, x0 + w);
  for (int y = std::max(0, y0); y < y1; ++y) {
    for (int x = std::max(0, x0); x < x1; ++x) Set(y, x, color);
  }
}

std::string EncodePpm(const RgbImage& image) {
  std::string out = "P6\n" + std::to_string(image.width()) + " " +
                    std::to_string(image.height()) + "\n255\n";
  out.append(image.bytes().begin(), image.bytes().end());
  return out;
}

RgbImage DecodePpm(const std::string& bytes) {
  std::istringstream in(bytes);
  std::string magic;
  int width = -1, height = -1, maxval = -1;
  in >> magic >> width >> height >> maxval;
  if (!in || magic != "P6" || width < 0 || height < 0 || maxval != 255) {
    throw FormatError("not an 8-bit binary PPM");
  }
  // Exactly one whitespace byte separates the header from the raster.
  in.get();
  const auto offset = static_cast<std::size_t>(in.tellg());
  const std::size_t expected = static_cast<std::size_t>(width) * height * 3;
  if (bytes.size() != offset + expected) {
    throw FormatError("PPM raster size mismatch");
  }
  RgbImage image(height, width);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      const std::size_t o = offset + (static_cast<std::size_t>(y) * width + x) * 3;
      image.Set(y, x,
                {static_cast<std::uint8_t>(bytes[o]),
                 static_cast<std::uint8_t>(bytes[o + 1]),
                 static_cast<std::uint8_t>(bytes[o + 2])});
    }
  }
  return image;
}

void WritePpm(const RgbImage& image, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  const std::string encoded = EncodePpm(image);
  out.write(encoded.data(), static_cast<std::streamsize>(encoded.size()));
  if (!out) throw std::runtime_error("cannot write " + path.string());
}

RgbImage ReadPpm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open " + path.string());
  std::string bytes((std::istreambuf_iterator<char>(in)),
                    std::istreambuf_iterator<char>());
  return DecodePpm(bytes);
}

}  // namespace bridgespan
