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

#ifndef BEVKIT__POINT_CLOUD_HPP_
#define BEVKIT__POINT_CLOUD_HPP_

#include <cmath>
#include <vector>

namespace bevkit
{

/// One LiDAR return in the sensor frame: x forward, y left, z up (meters),
/// reflectance in [0, 1].
struct Point
{
  float x{0.0F};
  float y{0.0F};
  float z{0.0F};
  float reflectance{0.0F};
};

using PointCloud = std::vector<Point>;

inline bool is_finite(const Point & p)
{
  return std::isfinite(p.x) && std::isfinite(p.y) && std::isfinite(p.z) &&
         std::isfinite(p.reflectance);
}

}  // namespace bevkit

#endif  // BEVKIT__POINT_CLOUD_HPP_
