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

#ifndef BEVKIT__KITTI_IO_HPP_
#define BEVKIT__KITTI_IO_HPP_

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <iomanip>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "bevkit/box_geometry.hpp"
#include "bevkit/calibration.hpp"
#include "bevkit/errors.hpp"
#include "bevkit/point_cloud.hpp"

namespace bevkit
{

/// One object annotation in the KITTI devkit label schema. location and
/// rotation_y live in the rectified camera frame; dims are (height, width,
/// length); bbox2d is in image pixels.
struct GroundTruthObject
{
  std::string class_tag;
  double truncation{0.0};
  int occlusion{0};
  double alpha{0.0};
  Bbox2D bbox2d;
  double dim_height{0.0};
  double dim_width{0.0};
  double dim_length{0.0};
  Eigen::Vector3d location{0.0, 0.0, 0.0};
  double rotation_y{0.0};
};

/// A scored detection. box3d is in the sensor frame; the camera-frame label
/// fields are produced on serialization.
struct DetectionRecord
{
  std::string class_tag;
  Box3D box3d;
  double score{0.0};
  double alpha{0.0};
  std::optional<Bbox2D> bbox2d;
};

struct RawFrame
{
  std::string frame_id;
  PointCloud cloud;
  std::optional<std::vector<GroundTruthObject>> labels;
  std::optional<Calibration> calib;
};

inline bool is_known_class_tag(std::string_view tag)
{
  static constexpr std::array<std::string_view, 9> kTags = {
    "Car", "Van", "Truck", "Pedestrian", "Person_sitting",
    "Cyclist", "Tram", "Misc", "DontCare"};
  return std::find(kTags.begin(), kTags.end(), tag) != kTags.end();
}

// ---- velodyne binary ----

/// Decode little-endian float32 quadruples (x, y, z, reflectance).
/// Out-of-range reflectance is clamped to [0, 1]; clamped_count, when given,
/// receives the number of clamped records.
inline PointCloud read_velodyne(std::string_view bytes, std::size_t * clamped_count = nullptr)
{
  if (bytes.size() % 16 != 0) {
    throw ParseError("velodyne: byte length " + std::to_string(bytes.size()) +
                     " is not a multiple of 16");
  }
  PointCloud cloud;
  cloud.reserve(bytes.size() / 16);
  std::size_t clamped = 0;
  for (std::size_t i = 0; i < bytes.size(); i += 16) {
    std::array<float, 4> rec;
    std::memcpy(rec.data(), bytes.data() + i, 16);
    for (const float v : rec) {
      if (!std::isfinite(v)) {
        throw ParseError("velodyne: non-finite value in record " + std::to_string(i / 16));
      }
    }
    if (rec[3] < 0.0F || rec[3] > 1.0F) {
      rec[3] = std::clamp(rec[3], 0.0F, 1.0F);
      ++clamped;
    }
    cloud.push_back(Point{rec[0], rec[1], rec[2], rec[3]});
  }
  if (clamped_count != nullptr) {
    *clamped_count = clamped;
  }
  return cloud;
}

inline std::string write_velodyne(const PointCloud & cloud)
{
  std::string bytes(cloud.size() * 16, '\0');
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    const std::array<float, 4> rec = {cloud[i].x, cloud[i].y, cloud[i].z, cloud[i].reflectance};
    std::memcpy(bytes.data() + i * 16, rec.data(), 16);
  }
  return bytes;
}

// ---- text helpers ----

namespace detail
{

inline std::vector<std::string> split_ws(const std::string & line)
{
  std::istringstream stream(line);
  std::vector<std::string> out;
  std::string tok;
  while (stream >> tok) {
    out.push_back(tok);
  }
  return out;
}

inline double parse_number(const std::string & tok, std::size_t line_no)
{
  std::size_t consumed = 0;
  double value = 0.0;
  try {
    value = std::stod(tok, &consumed);
  } catch (const std::exception &) {
    throw ParseError("line " + std::to_string(line_no) + ": non-numeric field '" + tok + "'");
  }
  if (consumed != tok.size()) {
    throw ParseError("line " + std::to_string(line_no) + ": non-numeric field '" + tok + "'");
  }
  return value;
}

inline std::string format_fixed(double v)
{
  std::ostringstream out;
  out << std::fixed << std::setprecision(6) << v;
  return out.str();
}

}  // namespace detail

// ---- labels ----

inline std::vector<GroundTruthObject> parse_label_file(const std::string & text)
{
  std::vector<GroundTruthObject> out;
  std::istringstream stream(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(stream, line)) {
    ++line_no;
    const auto fields = detail::split_ws(line);
    if (fields.empty()) {
      continue;
    }
    if (fields.size() != 15) {
      throw ParseError("line " + std::to_string(line_no) + ": expected 15 fields, got " +
                       std::to_string(fields.size()));
    }
    const auto num = [&](std::size_t i) { return detail::parse_number(fields[i], line_no); };
    GroundTruthObject gt;
    gt.class_tag = fields[0];
    gt.truncation = num(1);
    gt.occlusion = static_cast<int>(num(2));
    gt.alpha = num(3);
    gt.bbox2d = {num(4), num(5), num(6), num(7)};
    gt.dim_height = num(8);
    gt.dim_width = num(9);
    gt.dim_length = num(10);
    gt.location = {num(11), num(12), num(13)};
    gt.rotation_y = num(14);
    out.push_back(gt);
  }
  return out;
}

inline std::string format_label_file(const std::vector<GroundTruthObject> & objects)
{
  std::ostringstream out;
  for (const auto & gt : objects) {
    out << gt.class_tag;
    for (const double v :
         {gt.truncation, static_cast<double>(gt.occlusion), gt.alpha, gt.bbox2d.left,
          gt.bbox2d.top, gt.bbox2d.right, gt.bbox2d.bottom, gt.dim_height, gt.dim_width,
          gt.dim_length, gt.location.x(), gt.location.y(), gt.location.z(), gt.rotation_y}) {
      out << ' ' << detail::format_fixed(v);
    }
    out << '\n';
  }
  return out.str();
}

// ---- calibration ----

inline Calibration parse_calibration(const std::string & text)
{
  std::istringstream stream(text);
  std::string line;
  std::size_t line_no = 0;
  std::optional<std::vector<double>> p2;
  std::optional<std::vector<double>> r0;
  std::optional<std::vector<double>> tr;
  while (std::getline(stream, line)) {
    ++line_no;
    const auto fields = detail::split_ws(line);
    if (fields.empty()) {
      continue;
    }
    const std::string & key = fields[0];
    std::vector<double> values;
    for (std::size_t i = 1; i < fields.size(); ++i) {
      values.push_back(detail::parse_number(fields[i], line_no));
    }
    const auto bind = [&](std::optional<std::vector<double>> & slot, std::size_t count) {
      if (values.size() != count) {
        throw ParseError("calibration key " + key + ": expected " + std::to_string(count) +
                         " numbers, got " + std::to_string(values.size()));
      }
      slot = values;
    };
    if (key == "P2:") {
      bind(p2, 12);
    } else if (key == "R0_rect:") {
      bind(r0, 9);
    } else if (key == "Tr_velo_to_cam:") {
      bind(tr, 12);
    }
  }
  if (!p2) {
    throw ParseError("calibration: missing key P2:");
  }
  if (!r0) {
    throw ParseError("calibration: missing key R0_rect:");
  }
  if (!tr) {
    throw ParseError("calibration: missing key Tr_velo_to_cam:");
  }
  Calibration calib;
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 4; ++c) {
      calib.p2(r, c) = (*p2)[r * 4 + c];
      calib.tr_velo_to_cam(r, c) = (*tr)[r * 4 + c];
    }
    for (int c = 0; c < 3; ++c) {
      calib.r0_rect(r, c) = (*r0)[r * 3 + c];
    }
  }
  if (!calib.r0_rect.allFinite() || rectification_error(calib) >= 1e-3) {
    throw ParseError("calibration: R0_rect fails the orthonormality invariant");
  }
  return calib;
}

// ---- camera-frame label adapters ----

/// Sensor-frame box from a camera-frame label. KITTI stores the bottom-face
/// center; Box3D carries the geometric center.
inline Box3D box_from_label(const GroundTruthObject & gt, const Calibration & calib)
{
  Eigen::Vector3d bottom = camera_to_velo(gt.location, calib);
  return Box3D{{bottom.x(), bottom.y(), bottom.z() + gt.dim_height / 2.0},
               gt.dim_length, gt.dim_width, gt.dim_height,
               yaw_from_rotation_y(gt.rotation_y)};
}

/// Camera-frame (location, rotation_y) pair for a sensor-frame box.
inline std::pair<Eigen::Vector3d, double> label_pose_from_box(const Box3D & box,
                                                              const Calibration & calib)
{
  const Eigen::Vector3d bottom(box.center.x(), box.center.y(),
                               box.center.z() - box.height / 2.0);
  return {velo_to_camera(bottom, calib), rotation_y_from_yaw(box.yaw)};
}

// ---- detections ----

/// KITTI result lines: the 15 label fields plus a trailing score, fixed
/// 6-digit decimals. Detections carry truncation/occlusion -1 by convention.
inline std::string write_detections(const std::vector<DetectionRecord> & dets,
                                    const Calibration & calib = Calibration::identity())
{
  std::ostringstream out;
  for (const auto & det : dets) {
    if (!std::isfinite(det.score) || !det.box3d.center.allFinite() ||
        !std::isfinite(det.box3d.yaw) || !std::isfinite(det.box3d.length) ||
        !std::isfinite(det.box3d.width) || !std::isfinite(det.box3d.height)) {
      throw IoError("write_detections: non-finite value in record");
    }
    Bbox2D bbox{0.0, 0.0, 0.0, 0.0};
    if (det.bbox2d) {
      bbox = *det.bbox2d;
    } else if (const auto projected = project_to_image(det.box3d, calib)) {
      bbox = *projected;
    }
    const auto [location, rotation_y] = label_pose_from_box(det.box3d, calib);
    out << det.class_tag;
    for (const double v :
         {-1.0, -1.0, det.alpha, bbox.left, bbox.top, bbox.right, bbox.bottom,
          det.box3d.height, det.box3d.width, det.box3d.length, location.x(), location.y(),
          location.z(), rotation_y, det.score}) {
      out << ' ' << detail::format_fixed(v);
    }
    out << '\n';
  }
  return out.str();
}

inline std::vector<DetectionRecord> parse_detections(
  const std::string & text, const Calibration & calib = Calibration::identity())
{
  std::vector<DetectionRecord> out;
  std::istringstream stream(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(stream, line)) {
    ++line_no;
    const auto fields = detail::split_ws(line);
    if (fields.empty()) {
      continue;
    }
    if (fields.size() != 16) {
      throw ParseError("line " + std::to_string(line_no) + ": expected 16 fields, got " +
                       std::to_string(fields.size()));
    }
    const auto num = [&](std::size_t i) { return detail::parse_number(fields[i], line_no); };
    GroundTruthObject gt;
    gt.class_tag = fields[0];
    gt.alpha = num(3);
    gt.bbox2d = {num(4), num(5), num(6), num(7)};
    gt.dim_height = num(8);
    gt.dim_width = num(9);
    gt.dim_length = num(10);
    gt.location = {num(11), num(12), num(13)};
    gt.rotation_y = num(14);
    DetectionRecord det;
    det.class_tag = gt.class_tag;
    det.box3d = box_from_label(gt, calib);
    det.score = num(15);
    det.alpha = gt.alpha;
    det.bbox2d = gt.bbox2d;
    out.push_back(det);
  }
  return out;
}

}  // namespace bevkit

#endif  // BEVKIT__KITTI_IO_HPP_
