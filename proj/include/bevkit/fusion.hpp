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

#ifndef BEVKIT__FUSION_HPP_
#define BEVKIT__FUSION_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "bevkit/box_geometry.hpp"
#include "bevkit/errors.hpp"
#include "bevkit/kitti_io.hpp"

namespace bevkit
{

struct FeatureTensor
{
  std::vector<std::size_t> shape;
  std::vector<double> values;  // row-major
};

enum class JoinKind { kMean, kConcat };

struct FusionSpec
{
  JoinKind join_kind{JoinKind::kMean};
  double match_iou{0.5};
  double unmatched_score_scale{1.0};
};

namespace detail
{

inline std::string shape_string(const std::vector<std::size_t> & shape)
{
  std::ostringstream out;
  out << '[';
  for (std::size_t i = 0; i < shape.size(); ++i) {
    out << (i > 0 ? "," : "") << shape[i];
  }
  out << ']';
  return out.str();
}

}  // namespace detail

/// Tensor join: elementwise mean of same-shape tensors, or stacking along
/// the first dimension.
inline FeatureTensor join(const FeatureTensor & a, const FeatureTensor & b, JoinKind kind)
{
  if (kind == JoinKind::kMean) {
    if (a.shape != b.shape) {
      throw ConfigError("join(mean): shape mismatch " + detail::shape_string(a.shape) +
                        " vs " + detail::shape_string(b.shape));
    }
    FeatureTensor out{a.shape, std::vector<double>(a.values.size())};
    for (std::size_t i = 0; i < a.values.size(); ++i) {
      out.values[i] = (a.values[i] + b.values[i]) / 2.0;
    }
    return out;
  }
  if (a.shape.empty() || a.shape.size() != b.shape.size() ||
      !std::equal(a.shape.begin() + 1, a.shape.end(), b.shape.begin() + 1)) {
    throw ConfigError("join(concat): incompatible shapes " + detail::shape_string(a.shape) +
                      " vs " + detail::shape_string(b.shape));
  }
  FeatureTensor out;
  out.shape = a.shape;
  out.shape[0] = a.shape[0] + b.shape[0];
  out.values = a.values;
  out.values.insert(out.values.end(), b.values.begin(), b.values.end());
  return out;
}

namespace detail
{

inline double circular_mean_yaw(double yaw_high, double yaw_low)
{
  // Boxes are symmetric under a pi flip; bring the lower-scored yaw within
  // a quarter turn of the higher-scored one before averaging on the circle.
  if (yaw_low == yaw_high) {
    return yaw_high;
  }
  if (std::cos(yaw_low - yaw_high) < 0.0) {
    yaw_low = normalize_angle(yaw_low + M_PI);
  }
  const double s = (std::sin(yaw_high) + std::sin(yaw_low)) / 2.0;
  const double c = (std::cos(yaw_high) + std::cos(yaw_low)) / 2.0;
  return normalize_angle(std::atan2(s, c));
}

}  // namespace detail

/// Detection-level late fusion of two same-frame detection sets: greedy
/// same-class pairing by descending BEV IoU, paired boxes averaged, the
/// rest kept (optionally down-weighted). Output is sorted by descending
/// score; ties keep the first set's member first.
inline std::vector<DetectionRecord> fuse_detections(const std::vector<DetectionRecord> & real,
                                                    const std::vector<DetectionRecord> & generated,
                                                    const FusionSpec & spec)
{
  if (spec.match_iou <= 0.0 || spec.match_iou > 1.0 || spec.unmatched_score_scale <= 0.0 ||
      spec.unmatched_score_scale > 1.0) {
    throw ConfigError("fuse_detections: invalid fusion spec");
  }

  struct Pair
  {
    double iou;
    std::size_t real_idx;
    std::size_t gen_idx;
  };
  std::vector<Pair> candidates;
  for (std::size_t i = 0; i < real.size(); ++i) {
    for (std::size_t j = 0; j < generated.size(); ++j) {
      if (real[i].class_tag != generated[j].class_tag) {
        continue;
      }
      const double iou = iou_bev(bev_from_3d(real[i].box3d), bev_from_3d(generated[j].box3d));
      if (iou >= spec.match_iou) {
        candidates.push_back({iou, i, j});
      }
    }
  }
  std::sort(candidates.begin(), candidates.end(), [](const Pair & a, const Pair & b) {
    if (a.iou != b.iou) {
      return a.iou > b.iou;
    }
    if (a.real_idx != b.real_idx) {
      return a.real_idx < b.real_idx;
    }
    return a.gen_idx < b.gen_idx;
  });

  std::vector<bool> real_used(real.size(), false);
  std::vector<bool> gen_used(generated.size(), false);

  struct Ranked
  {
    DetectionRecord det;
    int source;  // 0 = fused/real, 1 = generated-only
    std::size_t index;
  };
  std::vector<Ranked> out;

  for (const auto & pair : candidates) {
    if (real_used[pair.real_idx] || gen_used[pair.gen_idx]) {
      continue;
    }
    real_used[pair.real_idx] = true;
    gen_used[pair.gen_idx] = true;
    const DetectionRecord & a = real[pair.real_idx];
    const DetectionRecord & b = generated[pair.gen_idx];
    const DetectionRecord & high = a.score >= b.score ? a : b;
    const DetectionRecord & low = a.score >= b.score ? b : a;

    DetectionRecord fused;
    fused.class_tag = a.class_tag;
    fused.box3d.center = (a.box3d.center + b.box3d.center) / 2.0;
    fused.box3d.length = (a.box3d.length + b.box3d.length) / 2.0;
    fused.box3d.width = (a.box3d.width + b.box3d.width) / 2.0;
    fused.box3d.height = (a.box3d.height + b.box3d.height) / 2.0;
    fused.box3d.yaw = detail::circular_mean_yaw(high.box3d.yaw, low.box3d.yaw);
    fused.score = (a.score + b.score) / 2.0;
    fused.alpha = high.alpha;
    fused.bbox2d = high.bbox2d;
    out.push_back({fused, 0, pair.real_idx});
  }
  for (std::size_t i = 0; i < real.size(); ++i) {
    if (!real_used[i]) {
      DetectionRecord det = real[i];
      det.score *= spec.unmatched_score_scale;
      out.push_back({det, 0, i});
    }
  }
  for (std::size_t j = 0; j < generated.size(); ++j) {
    if (!gen_used[j]) {
      DetectionRecord det = generated[j];
      det.score *= spec.unmatched_score_scale;
      out.push_back({det, 1, j});
    }
  }

  std::sort(out.begin(), out.end(), [](const Ranked & a, const Ranked & b) {
    if (a.det.score != b.det.score) {
      return a.det.score > b.det.score;
    }
    if (a.source != b.source) {
      return a.source < b.source;
    }
    return a.index < b.index;
  });

  std::vector<DetectionRecord> result;
  result.reserve(out.size());
  for (auto & ranked : out) {
    result.push_back(std::move(ranked.det));
  }
  return result;
}

}  // namespace bevkit

#endif  // BEVKIT__FUSION_HPP_
