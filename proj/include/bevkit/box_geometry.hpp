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

#ifndef BEVKIT__BOX_GEOMETRY_HPP_
#define BEVKIT__BOX_GEOMETRY_HPP_

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bevkit/calibration.hpp"
#include "bevkit/errors.hpp"
#include "bevkit/ground_plane.hpp"

namespace bevkit
{

/// Wrap an angle to (-pi, pi].
inline double normalize_angle(double a)
{
  double t = std::fmod(a + M_PI, 2.0 * M_PI);
  if (t <= 0.0) {
    t += 2.0 * M_PI;
  }
  return t - M_PI;
}

/// Upright cuboid in the sensor frame. center.z is the geometric center
/// height; yaw rotates +x toward +y.
struct Box3D
{
  Eigen::Vector3d center{0.0, 0.0, 0.0};
  double length{1.0};
  double width{1.0};
  double height{1.0};
  double yaw{0.0};
};

/// Top-down oriented rectangle (the footprint of a Box3D).
struct BevBox
{
  Eigen::Vector2d center{0.0, 0.0};
  double length{1.0};
  double width{1.0};
  double yaw{0.0};
};

enum class HeightPolicy { kPlane, kHeightChannel };

struct HeightPrior
{
  double height{1.5};
  HeightPolicy policy{HeightPolicy::kPlane};
};

/// Per-class default box heights for lifting BEV detections to 3D.
using ClassHeightPrior = std::map<std::string, HeightPrior>;

inline ClassHeightPrior default_height_priors()
{
  return ClassHeightPrior{
    {"Car", {1.53, HeightPolicy::kPlane}},
    {"Pedestrian", {1.76, HeightPolicy::kPlane}},
    {"Cyclist", {1.74, HeightPolicy::kPlane}},
  };
}

/// KITTI camera-frame rotation_y to sensor-frame yaw.
inline double yaw_from_rotation_y(double rotation_y)
{
  return normalize_angle(-rotation_y - M_PI / 2.0);
}

inline double rotation_y_from_yaw(double yaw)
{
  return normalize_angle(-yaw - M_PI / 2.0);
}

inline BevBox bev_from_3d(const Box3D & box)
{
  return BevBox{{box.center.x(), box.center.y()}, box.length, box.width, box.yaw};
}

/// Rest the box bottom on the ground plane at the footprint center.
inline Box3D lift_to_3d(const BevBox & bev, const Plane & plane, double height)
{
  if (height <= 0.0) {
    throw GeometryError("lift_to_3d: non-positive box height");
  }
  const double ground = height_at(plane, bev.center.x(), bev.center.y());
  return Box3D{{bev.center.x(), bev.center.y(), ground + height / 2.0},
               bev.length, bev.width, height, bev.yaw};
}

/// Footprint corners in counterclockwise order.
inline std::array<Eigen::Vector2d, 4> corners_bev(const BevBox & box)
{
  const double c = std::cos(box.yaw);
  const double s = std::sin(box.yaw);
  const double hl = box.length / 2.0;
  const double hw = box.width / 2.0;
  const auto corner = [&](double dx, double dy) {
    return Eigen::Vector2d(box.center.x() + c * dx - s * dy, box.center.y() + s * dx + c * dy);
  };
  return {corner(hl, hw), corner(-hl, hw), corner(-hl, -hw), corner(hl, -hw)};
}

namespace detail
{

inline double polygon_area(const std::vector<Eigen::Vector2d> & poly)
{
  double twice = 0.0;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const auto & a = poly[i];
    const auto & b = poly[(i + 1) % poly.size()];
    twice += a.x() * b.y() - b.x() * a.y();
  }
  return twice / 2.0;
}

// Sutherland-Hodgman clip of a convex CCW polygon by the half-plane left of a->b.
inline std::vector<Eigen::Vector2d> clip_by_edge(const std::vector<Eigen::Vector2d> & poly,
                                                 const Eigen::Vector2d & a,
                                                 const Eigen::Vector2d & b)
{
  std::vector<Eigen::Vector2d> out;
  const auto side = [&](const Eigen::Vector2d & p) {
    return (b.x() - a.x()) * (p.y() - a.y()) - (b.y() - a.y()) * (p.x() - a.x());
  };
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Eigen::Vector2d & cur = poly[i];
    const Eigen::Vector2d & nxt = poly[(i + 1) % poly.size()];
    const double sc = side(cur);
    const double sn = side(nxt);
    if (sc >= 0.0) {
      out.push_back(cur);
    }
    if ((sc > 0.0 && sn < 0.0) || (sc < 0.0 && sn > 0.0)) {
      const double t = sc / (sc - sn);
      out.emplace_back(cur + t * (nxt - cur));
    }
  }
  return out;
}

}  // namespace detail

/// Exact intersection area of two oriented rectangles by polygon clipping.
inline double intersection_area_bev(const BevBox & a, const BevBox & b)
{
  const auto ca = corners_bev(a);
  const auto cb = corners_bev(b);
  std::vector<Eigen::Vector2d> poly(ca.begin(), ca.end());
  for (int i = 0; i < 4 && !poly.empty(); ++i) {
    poly = detail::clip_by_edge(poly, cb[i], cb[(i + 1) % 4]);
  }
  if (poly.size() < 3) {
    return 0.0;
  }
  return std::max(0.0, detail::polygon_area(poly));
}

inline double iou_bev(const BevBox & a, const BevBox & b)
{
  const double inter = intersection_area_bev(a, b);
  if (inter <= 0.0) {
    return 0.0;
  }
  const double uni = a.length * a.width + b.length * b.width - inter;
  return inter / uni;
}

inline double iou_3d(const Box3D & a, const Box3D & b)
{
  const double inter_area = intersection_area_bev(bev_from_3d(a), bev_from_3d(b));
  const double bot = std::max(a.center.z() - a.height / 2.0, b.center.z() - b.height / 2.0);
  const double top = std::min(a.center.z() + a.height / 2.0, b.center.z() + b.height / 2.0);
  const double inter = inter_area * std::max(0.0, top - bot);
  if (inter <= 0.0) {
    return 0.0;
  }
  const double vol_a = a.length * a.width * a.height;
  const double vol_b = b.length * b.width * b.height;
  return inter / (vol_a + vol_b - inter);
}

struct Bbox2D
{
  double left{0.0};
  double top{0.0};
  double right{0.0};
  double bottom{0.0};

  double height() const { return bottom - top; }
};

inline std::array<Eigen::Vector3d, 8> corners_3d(const Box3D & box)
{
  const auto footprint = corners_bev(bev_from_3d(box));
  std::array<Eigen::Vector3d, 8> out;
  for (int i = 0; i < 4; ++i) {
    out[i] = {footprint[i].x(), footprint[i].y(), box.center.z() - box.height / 2.0};
    out[i + 4] = {footprint[i].x(), footprint[i].y(), box.center.z() + box.height / 2.0};
  }
  return out;
}

/// Axis-aligned image hull of the box corners, or nullopt if any corner
/// lies at or behind the camera (z_cam <= 0.1).
inline std::optional<Bbox2D> project_to_image(const Box3D & box, const Calibration & calib)
{
  Bbox2D bbox{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity(),
              -std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
  for (const auto & corner : corners_3d(box)) {
    const Eigen::Vector3d cam = velo_to_camera(corner, calib);
    if (cam.z() <= 0.1) {
      return std::nullopt;
    }
    const Eigen::Vector3d uvw = calib.p2 * Eigen::Vector4d(cam.x(), cam.y(), cam.z(), 1.0);
    const double u = uvw.x() / uvw.z();
    const double v = uvw.y() / uvw.z();
    bbox.left = std::min(bbox.left, u);
    bbox.right = std::max(bbox.right, u);
    bbox.top = std::min(bbox.top, v);
    bbox.bottom = std::max(bbox.bottom, v);
  }
  return bbox;
}

}  // namespace bevkit

#endif  // BEVKIT__BOX_GEOMETRY_HPP_
