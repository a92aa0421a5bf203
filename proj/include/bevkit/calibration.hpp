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

#ifndef BEVKIT__CALIBRATION_HPP_
#define BEVKIT__CALIBRATION_HPP_

#include <Eigen/Dense>

#include "bevkit/errors.hpp"

namespace bevkit
{

/// Sensor calibration in the KITTI convention. The camera frame is x right,
/// y down, z forward; the sensor (LiDAR) frame is x forward, y left, z up.
struct Calibration
{
  Eigen::Matrix<double, 3, 4> p2;              // camera projection
  Eigen::Matrix3d r0_rect;                     // rectification
  Eigen::Matrix<double, 3, 4> tr_velo_to_cam;  // rigid sensor-to-camera

  static Calibration identity()
  {
    Calibration c;
    c.p2.setZero();
    c.p2.block<3, 3>(0, 0).setIdentity();
    c.r0_rect.setIdentity();
    c.tr_velo_to_cam.setZero();
    c.tr_velo_to_cam.block<3, 3>(0, 0).setIdentity();
    return c;
  }
};

/// Max-norm deviation of R0^T R0 from the identity.
inline double rectification_error(const Calibration & calib)
{
  const Eigen::Matrix3d delta =
    calib.r0_rect.transpose() * calib.r0_rect - Eigen::Matrix3d::Identity();
  return delta.cwiseAbs().maxCoeff();
}

inline void require_valid_rectification(const Calibration & calib)
{
  if (!calib.r0_rect.allFinite() || rectification_error(calib) >= 1e-3) {
    throw GeometryError("calibration: R0_rect is not approximately orthonormal");
  }
}

/// Rectified-camera coordinates of a sensor-frame point.
inline Eigen::Vector3d velo_to_camera(const Eigen::Vector3d & p, const Calibration & calib)
{
  require_valid_rectification(calib);
  const Eigen::Vector4d ph(p.x(), p.y(), p.z(), 1.0);
  return calib.r0_rect * (calib.tr_velo_to_cam * ph);
}

/// Inverse of velo_to_camera.
inline Eigen::Vector3d camera_to_velo(const Eigen::Vector3d & p, const Calibration & calib)
{
  require_valid_rectification(calib);
  Eigen::Matrix4d full = Eigen::Matrix4d::Identity();
  full.block<3, 4>(0, 0) = calib.r0_rect * calib.tr_velo_to_cam;
  const Eigen::Vector4d back = full.inverse() * Eigen::Vector4d(p.x(), p.y(), p.z(), 1.0);
  return back.head<3>();
}

}  // namespace bevkit

#endif  // BEVKIT__CALIBRATION_HPP_
