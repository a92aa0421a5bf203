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

#ifndef BEVKIT__BEV_ENCODING_HPP_
#define BEVKIT__BEV_ENCODING_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "bevkit/errors.hpp"
#include "bevkit/point_cloud.hpp"

namespace bevkit
{

enum class DensityMode { kLog, kLinear };

struct GridConfig
{
  double x_min{0.0};
  double x_max{70.4};
  double y_min{-40.0};
  double y_max{40.0};
  double z_min{-2.73};
  double z_max{1.27};
  double resolution{0.1};
  int num_slices{8};  // MV3D variant only
  DensityMode density_mode{DensityMode::kLog};
  double density_saturation{64.0};
};

namespace detail
{

inline std::size_t checked_cell_count(double min, double max, double resolution,
                                      const char * axis)
{
  if (max <= min) {
    throw ConfigError(std::string("grid: ") + axis + " extent max must exceed min");
  }
  const double n = (max - min) / resolution;
  if (std::abs(n - std::round(n)) > 1e-9) {
    throw ConfigError(std::string("grid: ") + axis +
                      " extent is not an integer number of cells");
  }
  return static_cast<std::size_t>(std::llround(n));
}

}  // namespace detail

inline void validate_grid_config(const GridConfig & config)
{
  if (config.resolution <= 0.0) {
    throw ConfigError("grid: resolution must be positive");
  }
  detail::checked_cell_count(config.x_min, config.x_max, config.resolution, "x");
  detail::checked_cell_count(config.y_min, config.y_max, config.resolution, "y");
  if (config.z_max <= config.z_min) {
    throw ConfigError("grid: z extent max must exceed min");
  }
  if (config.num_slices < 1) {
    throw ConfigError("grid: num_slices must be at least 1");
  }
  if (config.density_saturation <= 1.0) {
    throw ConfigError("grid: density_saturation must exceed 1");
  }
}

inline std::size_t grid_rows(const GridConfig & c)
{
  return detail::checked_cell_count(c.x_min, c.x_max, c.resolution, "x");
}

inline std::size_t grid_cols(const GridConfig & c)
{
  return detail::checked_cell_count(c.y_min, c.y_max, c.resolution, "y");
}

/// Cell for a ground-plane position, or nullopt when outside the extent.
/// Row 0 is the far edge (x = x_max); intervals are half-open (min, max].
inline std::optional<std::pair<std::size_t, std::size_t>> cell_index(double x, double y,
                                                                     const GridConfig & config)
{
  if (!(x > config.x_min && x <= config.x_max) || !(y > config.y_min && y <= config.y_max)) {
    return std::nullopt;
  }
  const std::size_t rows = grid_rows(config);
  const std::size_t cols = grid_cols(config);
  const auto row = static_cast<std::size_t>(
    std::min(std::floor((config.x_max - x) / config.resolution),
             static_cast<double>(rows - 1)));
  const auto col = static_cast<std::size_t>(
    std::min(std::floor((config.y_max - y) / config.resolution),
             static_cast<double>(cols - 1)));
  return std::make_pair(row, col);
}

/// Multi-channel top-down raster. values is channel-major, each channel a
/// rows x cols row-major plane.
struct BevGrid
{
  GridConfig config;
  std::vector<std::string> channel_semantics;
  std::size_t rows{0};
  std::size_t cols{0};
  std::vector<float> values;

  float & at(std::size_t channel, std::size_t row, std::size_t col)
  {
    return values[(channel * rows + row) * cols + col];
  }
  float at(std::size_t channel, std::size_t row, std::size_t col) const
  {
    return values[(channel * rows + row) * cols + col];
  }
};

namespace detail
{

struct CellStats
{
  std::size_t count{0};
  double max_z{0.0};
  float winner_reflectance{0.0F};
};

inline float clamp01(double v)
{
  return static_cast<float>(std::clamp(v, 0.0, 1.0));
}

inline float density_value(std::size_t count, const GridConfig & config)
{
  if (count == 0) {
    return 0.0F;
  }
  const double n = static_cast<double>(count);
  const double v = config.density_mode == DensityMode::kLog
                     ? std::log(n + 1.0) / std::log(config.density_saturation)
                     : n / config.density_saturation;
  return clamp01(v);
}

// Per-cell count, max z and the max-z point's reflectance (ties keep the
// earliest input point), over z-in-range points only.
inline std::vector<CellStats> bin_cloud(const PointCloud & cloud, const GridConfig & config,
                                        std::size_t rows, std::size_t cols)
{
  std::vector<CellStats> cells(rows * cols);
  for (const auto & p : cloud) {
    if (p.z < config.z_min || p.z > config.z_max) {
      continue;
    }
    const auto cell = cell_index(p.x, p.y, config);
    if (!cell) {
      continue;
    }
    CellStats & stats = cells[cell->first * cols + cell->second];
    const double z = p.z;
    if (stats.count == 0 || z > stats.max_z) {
      stats.max_z = z;
      stats.winner_reflectance = p.reflectance;
    }
    ++stats.count;
  }
  return cells;
}

}  // namespace detail

/// 3-channel BEV: per cell the normalized max height, the (log-saturated)
/// point density and the reflectance of the topmost point.
inline BevGrid encode_birdnet(const PointCloud & cloud, const GridConfig & config)
{
  validate_grid_config(config);
  const std::size_t rows = grid_rows(config);
  const std::size_t cols = grid_cols(config);
  BevGrid grid{config, {"height", "density", "intensity"}, rows, cols,
               std::vector<float>(3 * rows * cols, 0.0F)};

  const auto cells = detail::bin_cloud(cloud, config, rows, cols);
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const auto & stats = cells[i];
    if (stats.count == 0) {
      continue;
    }
    grid.values[0 * rows * cols + i] =
      detail::clamp01((stats.max_z - config.z_min) / (config.z_max - config.z_min));
    grid.values[1 * rows * cols + i] = detail::density_value(stats.count, config);
    grid.values[2 * rows * cols + i] = stats.winner_reflectance;
  }
  return grid;
}

/// (M+2)-channel BEV: M per-slab height maps (bottom slab first, each
/// normalized within its slab), then density and intensity over the whole
/// z range, computed exactly as in encode_birdnet.
inline BevGrid encode_mv3d(const PointCloud & cloud, const GridConfig & config)
{
  validate_grid_config(config);
  const std::size_t rows = grid_rows(config);
  const std::size_t cols = grid_cols(config);
  const auto slices = static_cast<std::size_t>(config.num_slices);
  const double slab_dz = (config.z_max - config.z_min) / static_cast<double>(config.num_slices);

  std::vector<std::string> semantics;
  for (std::size_t i = 0; i < slices; ++i) {
    semantics.push_back("height_slice_" + std::to_string(i));
  }
  semantics.emplace_back("density");
  semantics.emplace_back("intensity");
  BevGrid grid{config, semantics, rows, cols,
               std::vector<float>((slices + 2) * rows * cols, 0.0F)};

  // Per-slab max z. Slab i covers [z_min + i*dz, z_min + (i+1)*dz), the top
  // slab closed above.
  std::vector<double> slab_max(slices * rows * cols);
  std::vector<bool> slab_hit(slices * rows * cols, false);
  for (const auto & p : cloud) {
    if (p.z < config.z_min || p.z > config.z_max) {
      continue;
    }
    const auto cell = cell_index(p.x, p.y, config);
    if (!cell) {
      continue;
    }
    const auto slab = static_cast<std::size_t>(
      std::min(std::floor((p.z - config.z_min) / slab_dz),
               static_cast<double>(slices - 1)));
    const std::size_t idx = (slab * rows + cell->first) * cols + cell->second;
    if (!slab_hit[idx] || p.z > slab_max[idx]) {
      slab_max[idx] = p.z;
      slab_hit[idx] = true;
    }
  }
  for (std::size_t slab = 0; slab < slices; ++slab) {
    const double slab_lo = config.z_min + static_cast<double>(slab) * slab_dz;
    for (std::size_t i = 0; i < rows * cols; ++i) {
      const std::size_t idx = slab * rows * cols + i;
      if (slab_hit[idx]) {
        grid.values[idx] = detail::clamp01((slab_max[idx] - slab_lo) / slab_dz);
      }
    }
  }

  const auto cells = detail::bin_cloud(cloud, config, rows, cols);
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (cells[i].count == 0) {
      continue;
    }
    grid.values[slices * rows * cols + i] = detail::density_value(cells[i].count, config);
    grid.values[(slices + 1) * rows * cols + i] = cells[i].winner_reflectance;
  }
  return grid;
}

/// Restrict a grid to the requested semantics. The "height" tag selects all
/// height channels (single or per-slice) collectively; output order is
/// height channels, density, intensity.
inline BevGrid select_channels(const BevGrid & grid, const std::set<std::string> & keep)
{
  if (keep.empty()) {
    throw ConfigError("select_channels: empty tag set");
  }
  for (const auto & tag : keep) {
    if (tag != "height" && tag != "density" && tag != "intensity") {
      throw ConfigError("select_channels: unknown tag '" + tag + "'");
    }
  }
  std::vector<std::size_t> chosen;
  const auto take_matching = [&](const auto & predicate) {
    for (std::size_t c = 0; c < grid.channel_semantics.size(); ++c) {
      if (predicate(grid.channel_semantics[c])) {
        chosen.push_back(c);
      }
    }
  };
  if (keep.count("height") != 0) {
    take_matching([](const std::string & s) {
      return s == "height" || s.rfind("height_slice_", 0) == 0;
    });
  }
  if (keep.count("density") != 0) {
    take_matching([](const std::string & s) { return s == "density"; });
  }
  if (keep.count("intensity") != 0) {
    take_matching([](const std::string & s) { return s == "intensity"; });
  }
  if (chosen.empty()) {
    throw ConfigError("select_channels: no requested tag present in grid");
  }

  BevGrid out{grid.config, {}, grid.rows, grid.cols, {}};
  out.values.reserve(chosen.size() * grid.rows * grid.cols);
  for (const auto c : chosen) {
    out.channel_semantics.push_back(grid.channel_semantics[c]);
    const auto begin = grid.values.begin() + static_cast<std::ptrdiff_t>(c * grid.rows * grid.cols);
    out.values.insert(out.values.end(), begin,
                      begin + static_cast<std::ptrdiff_t>(grid.rows * grid.cols));
  }
  return out;
}

}  // namespace bevkit

#endif  // BEVKIT__BEV_ENCODING_HPP_
