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

#ifndef BEVKIT__DETECTION_EVAL_HPP_
#define BEVKIT__DETECTION_EVAL_HPP_

#include <algorithm>
#include <array>
#include <cstddef>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bevkit/box_geometry.hpp"
#include "bevkit/errors.hpp"

namespace bevkit
{

enum class Difficulty { kEasy = 0, kModerate = 1, kHard = 2, kIgnored = 3 };

struct DifficultyRule
{
  double min_bbox_height{0.0};  // pixels
  int max_occlusion{0};
  double max_truncation{0.0};
};

/// KITTI devkit difficulty thresholds, Easy/Moderate/Hard.
struct DifficultyRules
{
  std::array<DifficultyRule, 3> rules{{
    {40.0, 0, 0.15},
    {25.0, 1, 0.30},
    {25.0, 2, 0.50},
  }};
};

enum class OverlapKind { kBev, k3D, k2D };
enum class ApMode { kElevenPoint, kFortyPoint };

struct EvalSpec
{
  std::string class_tag{"Car"};
  double iou_threshold{0.7};
  OverlapKind overlap_kind{OverlapKind::kBev};
  Difficulty difficulty{Difficulty::kModerate};
  ApMode ap_mode{ApMode::kElevenPoint};
  DifficultyRules difficulty_rules{};
};

struct ApResult
{
  double ap{0.0};
  std::vector<std::pair<double, double>> pr_points;  // (recall, precision)
  std::size_t tp{0};
  std::size_t fp{0};
  std::size_t fn{0};
  std::size_t ignored{0};
  bool no_ground_truth{false};
};

/// Ground truth reduced to what the evaluator needs: difficulty inputs plus
/// the sensor-frame box.
struct EvalGroundTruth
{
  std::string class_tag;
  double truncation{0.0};
  int occlusion{0};
  Bbox2D bbox2d;
  Box3D box;
};

struct EvalDetection
{
  std::string class_tag;
  Box3D box;
  double score{0.0};
  std::optional<Bbox2D> bbox2d;
};

enum class MatchKind { kTruePositive, kFalsePositive, kIgnoredMatch };

struct FrameMatches
{
  std::vector<MatchKind> per_detection;  // parallel to the input detections
  std::size_t false_negatives{0};
  std::size_t valid_ground_truth{0};
};

/// Strictest difficulty whose thresholds all pass; Ignored when none do or
/// the object is DontCare.
inline Difficulty assign_difficulty(const EvalGroundTruth & gt, const DifficultyRules & rules)
{
  if (gt.class_tag == "DontCare") {
    return Difficulty::kIgnored;
  }
  for (std::size_t level = 0; level < rules.rules.size(); ++level) {
    const auto & rule = rules.rules[level];
    if (gt.bbox2d.height() >= rule.min_bbox_height && gt.occlusion <= rule.max_occlusion &&
        gt.truncation <= rule.max_truncation) {
      return static_cast<Difficulty>(level);
    }
  }
  return Difficulty::kIgnored;
}

inline double iou_2d(const Bbox2D & a, const Bbox2D & b)
{
  const double iw = std::min(a.right, b.right) - std::max(a.left, b.left);
  const double ih = std::min(a.bottom, b.bottom) - std::max(a.top, b.top);
  if (iw <= 0.0 || ih <= 0.0) {
    return 0.0;
  }
  const double inter = iw * ih;
  const double area_a = (a.right - a.left) * (a.bottom - a.top);
  const double area_b = (b.right - b.left) * (b.bottom - b.top);
  return inter / (area_a + area_b - inter);
}

namespace detail
{

inline double eval_overlap(const EvalDetection & det, const EvalGroundTruth & gt,
                           OverlapKind kind)
{
  // DontCare regions carry no usable 3D geometry; overlap is always image-space.
  if (gt.class_tag == "DontCare" || kind == OverlapKind::k2D) {
    if (!det.bbox2d) {
      return 0.0;
    }
    return iou_2d(*det.bbox2d, gt.bbox2d);
  }
  if (kind == OverlapKind::kBev) {
    return iou_bev(bev_from_3d(det.box), bev_from_3d(gt.box));
  }
  return iou_3d(det.box, gt.box);
}

}  // namespace detail

/// Greedy per-frame matching in descending score order. A detection matching
/// a harder-than-spec or DontCare ground truth is ignored (neither TP nor
/// FP); unmatched ground truths at or below the spec difficulty count as FN.
inline FrameMatches match_frame(const std::vector<EvalDetection> & dets,
                                const std::vector<EvalGroundTruth> & gts, const EvalSpec & spec)
{
  FrameMatches result;
  result.per_detection.assign(dets.size(), MatchKind::kFalsePositive);

  std::vector<bool> gt_valid(gts.size(), false);
  std::vector<bool> gt_matched(gts.size(), false);
  std::vector<bool> gt_ignorable(gts.size(), false);
  for (std::size_t g = 0; g < gts.size(); ++g) {
    if (gts[g].class_tag == "DontCare") {
      gt_ignorable[g] = true;
      continue;
    }
    if (gts[g].class_tag != spec.class_tag) {
      continue;
    }
    const Difficulty assigned = assign_difficulty(gts[g], spec.difficulty_rules);
    if (static_cast<int>(assigned) <= static_cast<int>(spec.difficulty)) {
      gt_valid[g] = true;
      ++result.valid_ground_truth;
    } else {
      gt_ignorable[g] = true;
    }
  }

  std::vector<std::size_t> order(dets.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return dets[a].score > dets[b].score;
  });

  for (const auto d : order) {
    if (dets[d].class_tag != spec.class_tag) {
      result.per_detection[d] = MatchKind::kIgnoredMatch;
      continue;
    }
    double best_overlap = 0.0;
    std::size_t best_gt = gts.size();
    for (std::size_t g = 0; g < gts.size(); ++g) {
      if (!gt_valid[g] || gt_matched[g]) {
        continue;
      }
      const double overlap = detail::eval_overlap(dets[d], gts[g], spec.overlap_kind);
      if (overlap >= spec.iou_threshold && overlap > best_overlap) {
        best_overlap = overlap;
        best_gt = g;
      }
    }
    if (best_gt < gts.size()) {
      gt_matched[best_gt] = true;
      result.per_detection[d] = MatchKind::kTruePositive;
      continue;
    }
    bool ignorable_hit = false;
    for (std::size_t g = 0; g < gts.size() && !ignorable_hit; ++g) {
      if (gt_ignorable[g] &&
          detail::eval_overlap(dets[d], gts[g], spec.overlap_kind) >= spec.iou_threshold) {
        ignorable_hit = true;
      }
    }
    result.per_detection[d] =
      ignorable_hit ? MatchKind::kIgnoredMatch : MatchKind::kFalsePositive;
  }

  for (std::size_t g = 0; g < gts.size(); ++g) {
    if (gt_valid[g] && !gt_matched[g]) {
      ++result.false_negatives;
    }
  }
  return result;
}

/// Interpolated average precision over a pooled TP/FP sequence already
/// sorted by descending score.
inline ApResult average_precision(const std::vector<bool> & tp_sequence, std::size_t num_gt,
                                  ApMode mode)
{
  ApResult result;
  if (num_gt == 0) {
    result.no_ground_truth = true;
    result.fp = tp_sequence.size() -
                static_cast<std::size_t>(std::count(tp_sequence.begin(), tp_sequence.end(), true));
    return result;
  }
  std::size_t tp = 0;
  std::size_t fp = 0;
  for (const bool is_tp : tp_sequence) {
    if (is_tp) {
      ++tp;
    } else {
      ++fp;
    }
    result.pr_points.emplace_back(static_cast<double>(tp) / static_cast<double>(num_gt),
                                  static_cast<double>(tp) / static_cast<double>(tp + fp));
  }
  result.tp = tp;
  result.fp = fp;
  result.fn = num_gt - tp;

  const auto precision_at = [&](double recall) {
    double best = 0.0;
    for (const auto & [r, p] : result.pr_points) {
      if (r >= recall) {
        best = std::max(best, p);
      }
    }
    return best;
  };
  double sum = 0.0;
  if (mode == ApMode::kElevenPoint) {
    for (int i = 0; i <= 10; ++i) {
      sum += precision_at(static_cast<double>(i) / 10.0);
    }
    result.ap = sum / 11.0;
  } else {
    for (int i = 1; i <= 40; ++i) {
      sum += precision_at(static_cast<double>(i) / 40.0);
    }
    result.ap = sum / 40.0;
  }
  return result;
}

/// KITTI-style multi-frame evaluation: per-frame matching, then one global
/// AP over the score-pooled TP/FP sequence.
inline ApResult evaluate(const std::map<std::string, std::vector<EvalDetection>> & dets_by_frame,
                         const std::map<std::string, std::vector<EvalGroundTruth>> & gts_by_frame,
                         const EvalSpec & spec)
{
  std::string missing;
  for (const auto & [frame, gts] : gts_by_frame) {
    if (dets_by_frame.find(frame) == dets_by_frame.end()) {
      missing += " " + frame;
    }
  }
  for (const auto & [frame, dets] : dets_by_frame) {
    if (gts_by_frame.find(frame) == gts_by_frame.end()) {
      missing += " " + frame;
    }
  }
  if (!missing.empty()) {
    throw ConfigError("evaluate: mismatched frame sets, missing ids:" + missing);
  }

  struct PooledDet
  {
    double score;
    bool is_tp;
  };
  std::vector<PooledDet> pooled;
  std::size_t num_gt = 0;
  std::size_t ignored = 0;
  std::size_t fn = 0;
  for (const auto & [frame, dets] : dets_by_frame) {
    const auto & gts = gts_by_frame.at(frame);
    const FrameMatches matches = match_frame(dets, gts, spec);
    num_gt += matches.valid_ground_truth;
    fn += matches.false_negatives;
    for (std::size_t d = 0; d < dets.size(); ++d) {
      switch (matches.per_detection[d]) {
        case MatchKind::kTruePositive:
          pooled.push_back({dets[d].score, true});
          break;
        case MatchKind::kFalsePositive:
          pooled.push_back({dets[d].score, false});
          break;
        case MatchKind::kIgnoredMatch:
          ++ignored;
          break;
      }
    }
  }
  std::stable_sort(pooled.begin(), pooled.end(),
                   [](const PooledDet & a, const PooledDet & b) { return a.score > b.score; });
  std::vector<bool> flags;
  flags.reserve(pooled.size());
  for (const auto & p : pooled) {
    flags.push_back(p.is_tp);
  }
  ApResult result = average_precision(flags, num_gt, spec.ap_mode);
  result.ignored = ignored;
  result.fn = num_gt == 0 ? fn : result.fn;
  return result;
}

}  // namespace bevkit

#endif  // BEVKIT__DETECTION_EVAL_HPP_
