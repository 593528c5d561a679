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

#ifndef BRIDGESPAN_IMAGE_H_
#define BRIDGESPAN_IMAGE_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace bridgespan {

struct Rgb {
  std::uint8_t r = 0;
  std::uint8_t g = 0;
  std::uint8_t b = 0;

  friend bool operator==(const Rgb&, const Rgb&) = default;
};

namespace colors {
inline constexpr Rgb kBlack{0, 0, 0};
inline constexpr Rgb kGray{128, 128, 128};
inline constexpr Rgb kRed{255, 0, 0};
inline constexpr Rgb kBlue{0, 0, 255};
inline constexpr Rgb kGreen{0, 128, 0};
}  // namespace colors

// Height x width x 3 interleaved 8-bit RGB, row-major, top row first.
class RgbImage {
 public:
  RgbImage() = default;
  RgbImage(int height, int width);

  int height() const { return height_; }
  int width() const { return width_; }
  const std::vector<std::uint8_t>& bytes() const { return bytes_; }

  Rgb At(int y, int x) const;
  void Set(int y, int x, Rgb color);
  // Fills rows [y0, y0 + h) and columns [x0, x0 + w).
  void FillRect(int y0, int x0, int h, int w, Rgb color);

  friend bool operator==(const RgbImage&, const RgbImage&) = default;

 private:
  int height_ = 0;
  int width_ = 0;
  std::vector<std::uint8_t> bytes_;
};

// Binary PPM: "P6\n<width> <height>\n255\n" followed by the pixel bytes.
std::string EncodePpm(const RgbImage& image);
RgbImage DecodePpm(const std::string& bytes);

void WritePpm(const RgbImage& image, const std::filesystem::path& path);
RgbImage ReadPpm(const std::filesystem::path& path);

}  // namespace bridgespan

#endif  // BRIDGESPAN_IMAGE_H_
