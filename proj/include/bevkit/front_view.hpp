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

#ifndef BEVKIT__FRONT_VIEW_HPP_
#define BEVKIT__FRONT_VIEW_HPP_

#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "bevkit/errors.hpp"
#include "bevkit/point_cloud.hpp"
#include "bevkit/tensor_io.hpp"

namespace bevkit
{

constexpr double deg_to_rad(double deg) { return deg * M_PI / 180.0; }

/// Cylindrical projection geometry. Defaults cover a 90 degree azimuth fan
/// and the vertical fan of a 64-beam scanner (64 rows over [-24.9, 2.0]
/// degrees); both are conventions, not sensor requirements.
struct FrontViewConfig
{
  double azimuth_resolution{deg_to_rad(0.08)};
  double elevation_resolution{deg_to_rad(26.9 / 64.0)};
  double azimuth_min{deg_to_rad(-45.0)};
  double azimuth_max{deg_to_rad(45.0)};
  double elevation_min{deg_to_rad(-24.9)};
  double elevation_max{deg_to_rad(2.0)};
};

/// 3-channel cylindrical range image: height (z), planar distance and
/// reflectance of the nearest point per cell.
struct FrontViewGrid
{
  FrontViewConfig config;
  std::vector<std::string> channel_semantics{"fv_height", "fv_distance", "fv_intensity"};
  std::size_t rows{0};
  std::size_t cols{0};
  std::vector<float> values;

  float at(std::size_t channel, std::size_t row, std::size_t col) const
  {
    return values[(channel * rows + row) * cols + col];
  }
};

inline std::size_t front_view_rows(const FrontViewConfig & c)
{
  return detail::checked_cell_count(c.elevation_min, c.elevation_max, c.elevation_resolution,
                                    "elevation");
}

inline std::size_t front_view_cols(const FrontViewConfig & c)
{
  return detail::checked_cell_count(c.azimuth_min, c.azimuth_max, c.azimuth_resolution,
                                    "azimuth");
}

inline void validate_front_view_config(const FrontViewConfig & config)
{
  if (config.azimuth_resolution <= 0.0 || config.elevation_resolution <= 0.0) {
    throw ConfigError("front view: resolutions must be positive");
  }
  front_view_rows(config);
  front_view_cols(config);
}

/// Winner-take-all cylindrical binning: each cell carries the values of its
/// nearest in-span point (smallest 3D range, ties keep the earliest point).
inline FrontViewGrid encode_front_view(const PointCloud & cloud, const FrontViewConfig & config)
{
  validate_front_view_config(config);
  FrontViewGrid grid;
  grid.config = config;
  grid.rows = front_view_rows(config);
  grid.cols = front_view_cols(config);
  grid.values.assign(3 * grid.rows * grid.cols, 0.0F);

  std::vector<double> best_range(grid.rows * grid.cols,
                                 std::numeric_limits<double>::infinity());
  for (const auto & p : cloud) {
    const double azimuth = std::atan2(p.y, p.x);
    const double planar = std::hypot(static_cast<double>(p.x), static_cast<double>(p.y));
    const double elevation = std::atan2(p.z, planar);
    if (!(azimuth > config.azimuth_min && azimuth <= config.azimuth_max) ||
        !(elevation > config.elevation_min && elevation <= config.elevation_max)) {
      continue;
    }
    const auto col = static_cast<std::size_t>(
      std::min(std::floor((config.azimuth_max - azimuth) / config.azimuth_resolution),
               static_cast<double>(grid.cols - 1)));
    const auto row = static_cast<std::size_t>(
      std::min(std::floor((config.elevation_max - elevation) / config.elevation_resolution),
               static_cast<double>(grid.rows - 1)));
    const double range = std::sqrt(planar * planar + static_cast<double>(p.z) * p.z);
    const std::size_t idx = row * grid.cols + col;
    if (range < best_range[idx]) {
      best_range[idx] = range;
      grid.values[0 * grid.rows * grid.cols + idx] = p.z;
      grid.values[1 * grid.rows * grid.cols + idx] = static_cast<float>(planar);
      grid.values[2 * grid.rows * grid.cols + idx] = p.reflectance;
    }
  }
  return grid;
}

/// Front-view grids share the BEVT container; extents carry the angular
/// spans and the elevation resolution follows from the row count.
inline TensorFile tensor_from_front_view(const FrontViewGrid & grid)
{
  TensorFile tensor;
  tensor.channels = 3;
  tensor.rows = static_cast<std::uint32_t>(grid.rows);
  tensor.cols = static_cast<std::uint32_t>(grid.cols);
  tensor.resolution = grid.config.azimuth_resolution;
  tensor.extents = {grid.config.azimuth_min, grid.config.azimuth_max,
                    grid.config.elevation_min, grid.config.elevation_max, 0.0, 0.0};
  tensor.semantics = grid.channel_semantics;
  tensor.values = grid.values;
  return tensor;
}

}  // namespace bevkit

#endif  // BEVKIT__FRONT_VIEW_HPP_
