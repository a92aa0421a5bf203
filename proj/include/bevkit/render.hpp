// Copyright 2026 The bevkit Authors
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

#ifndef BEVKIT__RENDER_HPP_
#define BEVKIT__RENDER_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <string>
#include <vector>

#include "bevkit/bev_encoding.hpp"
#include "bevkit/box_geometry.hpp"
#include "bevkit/errors.hpp"

namespace bevkit
{

struct GrayImage
{
  std::size_t width{0};
  std::size_t height{0};
  std::vector<std::uint8_t> pixels;  // row-major

  std::uint8_t & at(std::size_t row, std::size_t col) { return pixels[row * width + col]; }
  std::uint8_t at(std::size_t row, std::size_t col) const { return pixels[row * width + col]; }
};

/// Linear [0,1] -> [0,255] mapping of one channel plane. Values outside
/// [0,1] are clamped; clamped_count, when given, receives how many were.
inline GrayImage render_channel(const BevGrid & grid, std::size_t channel,
                                std::size_t * clamped_count = nullptr)
{
  GrayImage image{grid.cols, grid.rows, std::vector<std::uint8_t>(grid.rows * grid.cols, 0)};
  std::size_t clamped = 0;
  for (std::size_t r = 0; r < grid.rows; ++r) {
    for (std::size_t c = 0; c < grid.cols; ++c) {
      double v = grid.at(channel, r, c);
      if (v < 0.0 || v > 1.0) {
        v = std::clamp(v, 0.0, 1.0);
        ++clamped;
      }
      image.at(r, c) = static_cast<std::uint8_t>(std::lround(v * 255.0));
    }
  }
  if (clamped_count != nullptr) {
    *clamped_count = clamped;
  }
  return image;
}

namespace detail
{

inline void draw_line(GrayImage & image, long r0, long c0, long r1, long c1, std::uint8_t shade)
{
  const long steps = std::max(std::abs(r1 - r0), std::abs(c1 - c0));
  for (long k = 0; k <= steps; ++k) {
    const double t = steps == 0 ? 0.0 : static_cast<double>(k) / static_cast<double>(steps);
    const long r = std::lround(static_cast<double>(r0) + t * static_cast<double>(r1 - r0));
    const long c = std::lround(static_cast<double>(c0) + t * static_cast<double>(c1 - c0));
    if (r >= 0 && c >= 0 && r < static_cast<long>(image.height) &&
        c < static_cast<long>(image.width)) {
      image.at(static_cast<std::size_t>(r), static_cast<std::size_t>(c)) = shade;
    }
  }
}

}  // namespace detail

/// Draw a 1-pixel box outline on a rendered BEV image. Corners are mapped
/// through the grid's cell addressing; corners outside the extent are
/// clipped at the image border.
inline void draw_bev_box(GrayImage & image, const BevBox & box, const GridConfig & config,
                         std::uint8_t shade)
{
  const auto corners = corners_bev(box);
  std::array<std::pair<long, long>, 4> cells;
  for (int i = 0; i < 4; ++i) {
    const auto cell = cell_index(corners[i].x(), corners[i].y(), config);
    if (cell) {
      cells[i] = {static_cast<long>(cell->first), static_cast<long>(cell->second)};
    } else {
      // Clamp out-of-extent corners so partially visible boxes still draw.
      const double row = std::floor((config.x_max - corners[i].x()) / config.resolution);
      const double col = std::floor((config.y_max - corners[i].y()) / config.resolution);
      cells[i] = {static_cast<long>(std::clamp(row, 0.0, static_cast<double>(image.height - 1))),
                  static_cast<long>(std::clamp(col, 0.0, static_cast<double>(image.width - 1)))};
    }
  }
  for (int i = 0; i < 4; ++i) {
    const auto & a = cells[i];
    const auto & b = cells[(i + 1) % 4];
    detail::draw_line(image, a.first, a.second, b.first, b.second, shade);
  }
}

/// Binary 8-bit PGM (P5).
inline std::string serialize_pgm(const GrayImage & image)
{
  std::string out = "P5\n" + std::to_string(image.width) + " " + std::to_string(image.height) +
                    "\n255\n";
  out.append(reinterpret_cast<const char *>(image.pixels.data()), image.pixels.size());
  return out;
}

}  // namespace bevkit

#endif  // BEVKIT__RENDER_HPP_
