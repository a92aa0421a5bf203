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

#ifndef BEVKIT__POINTCLOUD_OPS_HPP_
#define BEVKIT__POINTCLOUD_OPS_HPP_

#include <cmath>

#include "bevkit/calibration.hpp"
#include "bevkit/errors.hpp"
#include "bevkit/point_cloud.hpp"

namespace bevkit
{

struct FovSpec
{
  double horizontal_fov_deg{90.0};
  bool require_forward{true};
};

enum class ClipMetric { kForward, kEuclideanXY };

struct ClipSpec
{
  double max_distance{25.0};
  ClipMetric metric{ClipMetric::kForward};
};

/// Keep points inside the horizontal angular cone around +x. Order-preserving.
inline PointCloud crop_to_fov(const PointCloud & cloud, const FovSpec & spec)
{
  if (spec.horizontal_fov_deg <= 0.0 || spec.horizontal_fov_deg > 180.0) {
    throw ConfigError("crop_to_fov: horizontal_fov must be in (0, 180]");
  }
  const double half_angle = spec.horizontal_fov_deg * M_PI / 180.0 / 2.0;
  PointCloud out;
  for (const auto & p : cloud) {
    if (spec.require_forward && !(p.x > 0.0F)) {
      continue;
    }
    if (std::abs(std::atan2(p.y, p.x)) <= half_angle) {
      out.push_back(p);
    }
  }
  return out;
}

/// Drop points beyond max_distance. The forward metric clips on the x
/// coordinate (BEV row distance); the euclidean metric on sqrt(x^2 + y^2).
/// Boundary points are retained. Order-preserving and idempotent.
inline PointCloud clip_range(const PointCloud & cloud, const ClipSpec & spec)
{
  if (spec.max_distance <= 0.0) {
    throw ConfigError("clip_range: max_distance must be positive");
  }
  PointCloud out;
  for (const auto & p : cloud) {
    const double dist = spec.metric == ClipMetric::kForward
                          ? static_cast<double>(p.x)
                          : std::hypot(static_cast<double>(p.x), static_cast<double>(p.y));
    if (dist <= spec.max_distance) {
      out.push_back(p);
    }
  }
  return out;
}

/// Calibrated frustum crop: keep points whose image projection lies inside
/// [0, width) x [0, height) with positive camera depth.
inline PointCloud crop_to_frustum(const PointCloud & cloud, const Calibration & calib,
                                  int image_width, int image_height)
{
  if (image_width <= 0 || image_height <= 0) {
    throw ConfigError("crop_to_frustum: image size must be positive");
  }
  PointCloud out;
  for (const auto & p : cloud) {
    const Eigen::Vector3d cam = velo_to_camera(Eigen::Vector3d(p.x, p.y, p.z), calib);
    if (cam.z() <= 0.0) {
      continue;
    }
    const Eigen::Vector3d uvw = calib.p2 * Eigen::Vector4d(cam.x(), cam.y(), cam.z(), 1.0);
    const double u = uvw.x() / uvw.z();
    const double v = uvw.y() / uvw.z();
    if (u >= 0.0 && u < image_width && v >= 0.0 && v < image_height) {
      out.push_back(p);
    }
  }
  return out;
}

}  // namespace bevkit

#endif  // BEVKIT__POINTCLOUD_OPS_HPP_
