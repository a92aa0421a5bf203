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

#ifndef BEVKIT__GROUND_PLANE_HPP_
#define BEVKIT__GROUND_PLANE_HPP_

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <random>
#include <vector>

#include "bevkit/errors.hpp"
#include "bevkit/point_cloud.hpp"

namespace bevkit
{

/// Plane {p : n.p + d = 0} with unit normal, canonicalized to n_z > 0.
struct Plane
{
  Eigen::Vector3d normal{0.0, 0.0, 1.0};
  double d{0.0};

  double distance_to(const Eigen::Vector3d & p) const { return std::abs(normal.dot(p) + d); }
};

struct RansacConfig
{
  int iterations{200};
  double inlier_tolerance{0.05};  // meters, point-to-plane
  double bottom_fraction{0.4};    // lowest points by z considered as candidates
  int min_points{3};
  std::uint64_t seed{0};
};

struct PlaneFit
{
  Plane plane;
  std::size_t inlier_count{0};
};

/// Ground height under (x, y).
inline double height_at(const Plane & plane, double x, double y)
{
  if (std::abs(plane.normal.z()) <= 1e-6) {
    throw GeometryError("height_at: plane is near-vertical");
  }
  return -(plane.d + plane.normal.x() * x + plane.normal.y() * y) / plane.normal.z();
}

namespace detail
{

inline Plane canonicalize(Eigen::Vector3d n, double d)
{
  const double norm = n.norm();
  n /= norm;
  d /= norm;
  if (n.z() < 0.0) {
    n = -n;
    d = -d;
  }
  return Plane{n, d};
}

inline Plane least_squares_plane(const PointCloud & cloud, const std::vector<std::size_t> & idx)
{
  Eigen::Vector3d centroid = Eigen::Vector3d::Zero();
  for (const auto i : idx) {
    centroid += Eigen::Vector3d(cloud[i].x, cloud[i].y, cloud[i].z);
  }
  centroid /= static_cast<double>(idx.size());

  Eigen::Matrix3d cov = Eigen::Matrix3d::Zero();
  for (const auto i : idx) {
    const Eigen::Vector3d r = Eigen::Vector3d(cloud[i].x, cloud[i].y, cloud[i].z) - centroid;
    cov += r * r.transpose();
  }
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> solver(cov);
  const Eigen::Vector3d n = solver.eigenvectors().col(0);  // smallest eigenvalue
  return canonicalize(n, -n.dot(centroid));
}

}  // namespace detail

/// RANSAC plane fit restricted to the lowest bottom_fraction of points by z,
/// followed by a least-squares refit over the winning inlier set.
/// Deterministic for a fixed (cloud, config) pair.
inline PlaneFit fit_ground_plane(const PointCloud & cloud, const RansacConfig & config)
{
  if (config.iterations < 1 || config.inlier_tolerance <= 0.0 ||
      config.bottom_fraction <= 0.0 || config.bottom_fraction > 1.0) {
    throw ConfigError("fit_ground_plane: invalid RANSAC configuration");
  }

  const std::size_t n = cloud.size();
  const auto n_candidates = static_cast<std::size_t>(
    std::ceil(config.bottom_fraction * static_cast<double>(n)));
  if (n_candidates < static_cast<std::size_t>(config.min_points)) {
    throw GeometryError("fit_ground_plane: fewer than 3 candidate points");
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return cloud[a].z < cloud[b].z; });
  order.resize(n_candidates);

  std::mt19937_64 rng(config.seed);
  std::uniform_int_distribution<std::size_t> pick(0, n_candidates - 1);

  const auto point_at = [&](std::size_t i) {
    return Eigen::Vector3d(cloud[i].x, cloud[i].y, cloud[i].z);
  };

  bool found = false;
  Plane best;
  std::size_t best_count = 0;
  double best_mean_dist = std::numeric_limits<double>::infinity();

  for (int it = 0; it < config.iterations; ++it) {
    const std::size_t ia = order[pick(rng)];
    const std::size_t ib = order[pick(rng)];
    const std::size_t ic = order[pick(rng)];
    if (ia == ib || ib == ic || ia == ic) {
      continue;
    }
    const Eigen::Vector3d a = point_at(ia);
    const Eigen::Vector3d cross = (point_at(ib) - a).cross(point_at(ic) - a);
    if (cross.norm() <= 1e-12) {
      continue;  // collinear sample
    }
    const Plane hypothesis = detail::canonicalize(cross, -cross.dot(a));

    std::size_t count = 0;
    double dist_sum = 0.0;
    for (const auto & p : cloud) {
      const double dist = hypothesis.distance_to(Eigen::Vector3d(p.x, p.y, p.z));
      if (dist <= config.inlier_tolerance) {
        ++count;
        dist_sum += dist;
      }
    }
    if (count < 3) {
      continue;
    }
    const double mean_dist = dist_sum / static_cast<double>(count);
    if (count > best_count || (count == best_count && mean_dist < best_mean_dist)) {
      best = hypothesis;
      best_count = count;
      best_mean_dist = mean_dist;
      found = true;
    }
  }
  if (!found) {
    throw GeometryError("fit_ground_plane: all hypotheses degenerate");
  }

  std::vector<std::size_t> inliers;
  for (std::size_t i = 0; i < n; ++i) {
    if (best.distance_to(point_at(i)) <= config.inlier_tolerance) {
      inliers.push_back(i);
    }
  }
  const Plane refined = detail::least_squares_plane(cloud, inliers);

  std::size_t refined_count = 0;
  for (const auto & p : cloud) {
    if (refined.distance_to(Eigen::Vector3d(p.x, p.y, p.z)) <= config.inlier_tolerance) {
      ++refined_count;
    }
  }
  return PlaneFit{refined, refined_count};
}

}  // namespace bevkit

#endif  // BEVKIT__GROUND_PLANE_HPP_
