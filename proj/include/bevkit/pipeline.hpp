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

#ifndef BEVKIT__PIPELINE_HPP_
#define BEVKIT__PIPELINE_HPP_

#include <atomic>
#include <filesystem>
#include <functional>
#include <iomanip>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "bevkit/bev_encoding.hpp"
#include "bevkit/box_geometry.hpp"
#include "bevkit/detection_eval.hpp"
#include "bevkit/front_view.hpp"
#include "bevkit/fusion.hpp"
#include "bevkit/ground_plane.hpp"
#include "bevkit/kitti_io.hpp"
#include "bevkit/pointcloud_ops.hpp"
#include "bevkit/render.hpp"
#include "bevkit/tensor_io.hpp"

namespace bevkit
{

struct DatasetPaths
{
  std::string velodyne_dir;
  std::string label_dir;
  std::string calib_dir;
  std::string split_file;
};

struct PipelineConfig
{
  GridConfig grid{};
  FovSpec fov{};
  ClipSpec clip{};
  FrontViewConfig fv{};
  RansacConfig ransac{};
  ClassHeightPrior heights{default_height_priors()};
  EvalSpec eval{};
  DatasetPaths paths{};
  int jobs{1};
  bool fail_fast{false};
};

// ---- key-value configuration ----

namespace detail
{

inline double config_number(const std::string & key, const std::string & value)
{
  try {
    std::size_t used = 0;
    const double v = std::stod(value, &used);
    if (used != value.size()) {
      throw std::invalid_argument(value);
    }
    return v;
  } catch (const std::exception &) {
    throw ConfigError("config: non-numeric value for " + key + ": '" + value + "'");
  }
}

}  // namespace detail

/// Apply one dotted key. Unknown keys are configuration errors.
inline void apply_config_entry(PipelineConfig & config, const std::string & key,
                               const std::string & value)
{
  const auto num = [&] { return detail::config_number(key, value); };
  if (key == "grid.x_min") {
    config.grid.x_min = num();
  } else if (key == "grid.x_max") {
    config.grid.x_max = num();
  } else if (key == "grid.y_min") {
    config.grid.y_min = num();
  } else if (key == "grid.y_max") {
    config.grid.y_max = num();
  } else if (key == "grid.z_min") {
    config.grid.z_min = num();
  } else if (key == "grid.z_max") {
    config.grid.z_max = num();
  } else if (key == "grid.resolution") {
    config.grid.resolution = num();
  } else if (key == "grid.num_slices") {
    config.grid.num_slices = static_cast<int>(num());
  } else if (key == "grid.density_mode") {
    if (value == "log") {
      config.grid.density_mode = DensityMode::kLog;
    } else if (value == "linear") {
      config.grid.density_mode = DensityMode::kLinear;
    } else {
      throw ConfigError("config: grid.density_mode must be log or linear");
    }
  } else if (key == "grid.density_saturation") {
    config.grid.density_saturation = num();
  } else if (key == "fov.horizontal_fov_deg") {
    config.fov.horizontal_fov_deg = num();
  } else if (key == "fov.require_forward") {
    config.fov.require_forward = num() != 0.0;
  } else if (key == "clip.max_distance") {
    config.clip.max_distance = num();
  } else if (key == "clip.metric") {
    if (value == "forward") {
      config.clip.metric = ClipMetric::kForward;
    } else if (value == "xy") {
      config.clip.metric = ClipMetric::kEuclideanXY;
    } else {
      throw ConfigError("config: clip.metric must be forward or xy");
    }
  } else if (key == "fv.azimuth_resolution_deg") {
    config.fv.azimuth_resolution = deg_to_rad(num());
  } else if (key == "fv.elevation_resolution_deg") {
    config.fv.elevation_resolution = deg_to_rad(num());
  } else if (key == "fv.azimuth_min_deg") {
    config.fv.azimuth_min = deg_to_rad(num());
  } else if (key == "fv.azimuth_max_deg") {
    config.fv.azimuth_max = deg_to_rad(num());
  } else if (key == "fv.elevation_min_deg") {
    config.fv.elevation_min = deg_to_rad(num());
  } else if (key == "fv.elevation_max_deg") {
    config.fv.elevation_max = deg_to_rad(num());
  } else if (key == "ransac.iterations") {
    config.ransac.iterations = static_cast<int>(num());
  } else if (key == "ransac.inlier_tolerance") {
    config.ransac.inlier_tolerance = num();
  } else if (key == "ransac.bottom_fraction") {
    config.ransac.bottom_fraction = num();
  } else if (key == "ransac.seed") {
    config.ransac.seed = static_cast<std::uint64_t>(num());
  } else if (key.rfind("height.", 0) == 0) {
    config.heights[key.substr(7)].height = num();
  } else if (key == "eval.iou_threshold") {
    config.eval.iou_threshold = num();
  } else if (key == "eval.class") {
    config.eval.class_tag = value;
  } else if (key == "eval.overlap") {
    if (value == "bev") {
      config.eval.overlap_kind = OverlapKind::kBev;
    } else if (value == "3d") {
      config.eval.overlap_kind = OverlapKind::k3D;
    } else if (value == "2d") {
      config.eval.overlap_kind = OverlapKind::k2D;
    } else {
      throw ConfigError("config: eval.overlap must be bev, 3d or 2d");
    }
  } else if (key == "eval.difficulty") {
    if (value == "easy") {
      config.eval.difficulty = Difficulty::kEasy;
    } else if (value == "moderate") {
      config.eval.difficulty = Difficulty::kModerate;
    } else if (value == "hard") {
      config.eval.difficulty = Difficulty::kHard;
    } else {
      throw ConfigError("config: eval.difficulty must be easy, moderate or hard");
    }
  } else if (key == "eval.ap_mode") {
    if (value == "11") {
      config.eval.ap_mode = ApMode::kElevenPoint;
    } else if (value == "40") {
      config.eval.ap_mode = ApMode::kFortyPoint;
    } else {
      throw ConfigError("config: eval.ap_mode must be 11 or 40");
    }
  } else if (key == "paths.velodyne_dir") {
    config.paths.velodyne_dir = value;
  } else if (key == "paths.label_dir") {
    config.paths.label_dir = value;
  } else if (key == "paths.calib_dir") {
    config.paths.calib_dir = value;
  } else if (key == "paths.split_file") {
    config.paths.split_file = value;
  } else if (key == "jobs") {
    config.jobs = static_cast<int>(num());
  } else if (key == "fail_fast") {
    config.fail_fast = num() != 0.0;
  } else {
    throw ConfigError("config: unknown key '" + key + "'");
  }
}

/// Plain key=value lines; '#' starts a comment.
inline void apply_config_text(PipelineConfig & config, const std::string & text)
{
  std::istringstream stream(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(stream, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) {
      line = line.substr(0, hash);
    }
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) {
      continue;
    }
    const auto last = line.find_last_not_of(" \t\r");
    line = line.substr(first, last - first + 1);
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(line_no) + ": expected key=value");
    }
    const auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t");
      const auto e = s.find_last_not_of(" \t");
      return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
    };
    apply_config_entry(config, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
}

inline std::string dump_effective_config(const PipelineConfig & c)
{
  std::ostringstream out;
  out << std::setprecision(17);
  out << "grid.x_min=" << c.grid.x_min << "\ngrid.x_max=" << c.grid.x_max
      << "\ngrid.y_min=" << c.grid.y_min << "\ngrid.y_max=" << c.grid.y_max
      << "\ngrid.z_min=" << c.grid.z_min << "\ngrid.z_max=" << c.grid.z_max
      << "\ngrid.resolution=" << c.grid.resolution << "\ngrid.num_slices=" << c.grid.num_slices
      << "\ngrid.density_mode=" << (c.grid.density_mode == DensityMode::kLog ? "log" : "linear")
      << "\ngrid.density_saturation=" << c.grid.density_saturation
      << "\nfov.horizontal_fov_deg=" << c.fov.horizontal_fov_deg
      << "\nfov.require_forward=" << (c.fov.require_forward ? 1 : 0)
      << "\nclip.max_distance=" << c.clip.max_distance
      << "\nclip.metric=" << (c.clip.metric == ClipMetric::kForward ? "forward" : "xy")
      << "\nransac.iterations=" << c.ransac.iterations
      << "\nransac.inlier_tolerance=" << c.ransac.inlier_tolerance
      << "\nransac.bottom_fraction=" << c.ransac.bottom_fraction
      << "\nransac.seed=" << c.ransac.seed << "\njobs=" << c.jobs << "\n";
  for (const auto & [tag, prior] : c.heights) {
    out << "height." << tag << "=" << prior.height << "\n";
  }
  return out.str();
}

// ---- dataset access ----

inline std::vector<std::string> read_split_file(const std::string & path)
{
  const std::string text = read_file_bytes(path);
  std::istringstream stream(text);
  std::vector<std::string> ids;
  std::string line;
  while (std::getline(stream, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) {
      continue;
    }
    const auto last = line.find_last_not_of(" \t\r");
    const std::string id = line.substr(first, last - first + 1);
    if (id.find_first_not_of("0123456789") != std::string::npos) {
      throw ParseError("split file: frame id '" + id + "' is not numeric");
    }
    ids.push_back(id);
  }
  return ids;
}

inline PointCloud load_cloud(const PipelineConfig & config, const std::string & frame_id)
{
  return read_velodyne(
    read_file_bytes(config.paths.velodyne_dir + "/" + frame_id + ".bin"));
}

inline Calibration load_calib(const PipelineConfig & config, const std::string & frame_id)
{
  return parse_calibration(read_file_bytes(config.paths.calib_dir + "/" + frame_id + ".txt"));
}

inline std::vector<GroundTruthObject> load_labels(const PipelineConfig & config,
                                                  const std::string & frame_id)
{
  return parse_label_file(read_file_bytes(config.paths.label_dir + "/" + frame_id + ".txt"));
}

/// FOV crop followed by the range clip.
inline PointCloud preprocess_cloud(const PointCloud & cloud, const PipelineConfig & config)
{
  return clip_range(crop_to_fov(cloud, config.fov), config.clip);
}

inline EvalGroundTruth eval_gt_from_label(const GroundTruthObject & gt, const Calibration & calib)
{
  EvalGroundTruth out;
  out.class_tag = gt.class_tag;
  out.truncation = gt.truncation;
  out.occlusion = gt.occlusion;
  out.bbox2d = gt.bbox2d;
  if (gt.class_tag != "DontCare") {
    out.box = box_from_label(gt, calib);
  }
  return out;
}

inline EvalDetection eval_det_from_record(const DetectionRecord & det)
{
  return EvalDetection{det.class_tag, det.box3d, det.score, det.bbox2d};
}

// ---- per-frame command driver ----

struct CommandResult
{
  std::size_t processed{0};
  std::vector<std::string> errors;  // "frame_id: message"

  bool ok() const { return errors.empty(); }
};

/// Run fn over every frame id with a fixed-size worker pool. Errors are
/// collected per frame; fail_fast stops scheduling after the first one.
inline CommandResult for_each_frame(const std::vector<std::string> & ids, int jobs,
                                    bool fail_fast,
                                    const std::function<void(const std::string &)> & fn)
{
  CommandResult result;
  std::mutex mutex;
  std::atomic<std::size_t> next{0};
  std::atomic<bool> stop{false};
  const auto worker = [&] {
    while (!stop.load()) {
      const std::size_t i = next.fetch_add(1);
      if (i >= ids.size()) {
        return;
      }
      try {
        fn(ids[i]);
        const std::lock_guard<std::mutex> lock(mutex);
        ++result.processed;
      } catch (const std::exception & e) {
        const std::lock_guard<std::mutex> lock(mutex);
        result.errors.push_back(ids[i] + ": " + e.what());
        if (fail_fast) {
          stop.store(true);
        }
      }
    }
  };
  const int n_threads = std::max(1, jobs);
  if (n_threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < n_threads; ++t) {
      pool.emplace_back(worker);
    }
    for (auto & t : pool) {
      t.join();
    }
  }
  std::sort(result.errors.begin(), result.errors.end());
  return result;
}

inline void write_effective_config(const PipelineConfig & config, const std::string & out_dir)
{
  std::filesystem::create_directories(out_dir);
  write_file_bytes(out_dir + "/effective_config.txt", dump_effective_config(config));
}

// ---- commands ----

enum class BevVariant { kBirdnet, kMv3d };

inline CommandResult run_encode_bev(const PipelineConfig & config,
                                    const std::vector<std::string> & ids, BevVariant variant,
                                    bool clip, const std::string & out_dir)
{
  validate_grid_config(config.grid);
  write_effective_config(config, out_dir);
  return for_each_frame(ids, config.jobs, config.fail_fast, [&](const std::string & id) {
    PointCloud cloud = load_cloud(config, id);
    if (clip) {
      cloud = preprocess_cloud(cloud, config);
    }
    const BevGrid grid = variant == BevVariant::kBirdnet ? encode_birdnet(cloud, config.grid)
                                                         : encode_mv3d(cloud, config.grid);
    write_file_bytes(out_dir + "/" + id + ".bevt", serialize_tensor(tensor_from_bev_grid(grid)));
  });
}

inline CommandResult run_encode_fv(const PipelineConfig & config,
                                   const std::vector<std::string> & ids, bool clip,
                                   const std::string & out_dir)
{
  validate_front_view_config(config.fv);
  write_effective_config(config, out_dir);
  return for_each_frame(ids, config.jobs, config.fail_fast, [&](const std::string & id) {
    PointCloud cloud = load_cloud(config, id);
    if (clip) {
      cloud = preprocess_cloud(cloud, config);
    }
    const FrontViewGrid grid = encode_front_view(cloud, config.fv);
    write_file_bytes(out_dir + "/" + id + ".bevt",
                     serialize_tensor(tensor_from_front_view(grid)));
  });
}

inline CommandResult run_clip(const PipelineConfig & config, const std::vector<std::string> & ids,
                              const std::string & out_dir)
{
  write_effective_config(config, out_dir);
  return for_each_frame(ids, config.jobs, config.fail_fast, [&](const std::string & id) {
    const PointCloud clipped = preprocess_cloud(load_cloud(config, id), config);
    write_file_bytes(out_dir + "/" + id + ".bin", write_velodyne(clipped));
  });
}

inline std::string serialize_plane(const Plane & plane)
{
  std::ostringstream out;
  out << std::setprecision(17) << plane.normal.x() << ' ' << plane.normal.y() << ' '
      << plane.normal.z() << ' ' << plane.d << '\n';
  return out.str();
}

inline Plane parse_plane(const std::string & text)
{
  std::istringstream in(text);
  Plane plane;
  if (!(in >> plane.normal.x() >> plane.normal.y() >> plane.normal.z() >> plane.d)) {
    throw ParseError("plane file: expected four numbers");
  }
  return plane;
}

inline CommandResult run_ground_plane(const PipelineConfig & config,
                                      const std::vector<std::string> & ids,
                                      const std::string & out_dir)
{
  write_effective_config(config, out_dir);
  return for_each_frame(ids, config.jobs, config.fail_fast, [&](const std::string & id) {
    const PlaneFit fit = fit_ground_plane(load_cloud(config, id), config.ransac);
    write_file_bytes(out_dir + "/" + id + ".plane", serialize_plane(fit.plane));
  });
}

/// Lift BEV detections (KITTI result files with footprint-only geometry) to
/// 3D using per-frame ground planes. Planes are read from plane_dir when
/// given, otherwise fit on the fly from the clouds.
inline CommandResult run_lift(const PipelineConfig & config, const std::vector<std::string> & ids,
                              const std::string & bev_det_dir,
                              const std::optional<std::string> & plane_dir,
                              const std::string & out_dir)
{
  write_effective_config(config, out_dir);
  return for_each_frame(ids, config.jobs, config.fail_fast, [&](const std::string & id) {
    const Calibration calib = load_calib(config, id);
    const auto dets =
      parse_detections(read_file_bytes(bev_det_dir + "/" + id + ".txt"), calib);
    const Plane plane =
      plane_dir ? parse_plane(read_file_bytes(*plane_dir + "/" + id + ".plane"))
                : fit_ground_plane(load_cloud(config, id), config.ransac).plane;
    std::vector<DetectionRecord> lifted;
    for (const auto & det : dets) {
      const auto prior = config.heights.find(det.class_tag);
      const double height =
        prior != config.heights.end() ? prior->second.height : det.box3d.height;
      DetectionRecord out = det;
      out.box3d = lift_to_3d(bev_from_3d(det.box3d), plane, height);
      out.bbox2d = project_to_image(out.box3d, calib);
      lifted.push_back(out);
    }
    write_file_bytes(out_dir + "/" + id + ".txt", write_detections(lifted, calib));
  });
}

inline CommandResult run_fuse(const PipelineConfig & config, const std::vector<std::string> & ids,
                              const std::string & dir_a, const std::string & dir_b,
                              const FusionSpec & spec, const std::string & out_dir)
{
  write_effective_config(config, out_dir);
  return for_each_frame(ids, config.jobs, config.fail_fast, [&](const std::string & id) {
    const Calibration calib = load_calib(config, id);
    const auto a = parse_detections(read_file_bytes(dir_a + "/" + id + ".txt"), calib);
    const auto b = parse_detections(read_file_bytes(dir_b + "/" + id + ".txt"), calib);
    write_file_bytes(out_dir + "/" + id + ".txt",
                     write_detections(fuse_detections(a, b, spec), calib));
  });
}

inline CommandResult run_ablate_channels(const PipelineConfig & config,
                                         const std::vector<std::string> & ids,
                                         const std::string & tensor_dir,
                                         const std::set<std::string> & keep,
                                         const std::string & out_dir)
{
  write_effective_config(config, out_dir);
  return for_each_frame(ids, config.jobs, config.fail_fast, [&](const std::string & id) {
    const TensorFile tensor = parse_tensor(read_file_bytes(tensor_dir + "/" + id + ".bevt"));
    const BevGrid selected = select_channels(bev_grid_from_tensor(tensor), keep);
    TensorFile out = tensor_from_bev_grid(selected);
    out.resolution = tensor.resolution;
    out.extents = tensor.extents;
    write_file_bytes(out_dir + "/" + id + ".bevt", serialize_tensor(out));
  });
}

/// Render every channel of a BEVT tensor to PGM, plus one overlay image with
/// detection and label boxes when result/label files are supplied.
inline CommandResult run_render(const PipelineConfig & config,
                                const std::vector<std::string> & ids,
                                const std::string & tensor_dir,
                                const std::optional<std::string> & det_dir,
                                const std::string & out_dir)
{
  write_effective_config(config, out_dir);
  return for_each_frame(ids, config.jobs, config.fail_fast, [&](const std::string & id) {
    const TensorFile tensor = parse_tensor(read_file_bytes(tensor_dir + "/" + id + ".bevt"));
    const BevGrid grid = bev_grid_from_tensor(tensor);
    for (std::size_t c = 0; c < grid.channel_semantics.size(); ++c) {
      const GrayImage image = render_channel(grid, c);
      write_file_bytes(out_dir + "/" + id + "_" + grid.channel_semantics[c] + ".pgm",
                       serialize_pgm(image));
    }
    if (det_dir) {
      const Calibration calib = load_calib(config, id);
      const auto dets = parse_detections(read_file_bytes(*det_dir + "/" + id + ".txt"), calib);
      GrayImage overlay = render_channel(grid, 0);
      for (const auto & det : dets) {
        draw_bev_box(overlay, bev_from_3d(det.box3d), grid.config, 255);
      }
      write_file_bytes(out_dir + "/" + id + "_overlay.pgm", serialize_pgm(overlay));
    }
  });
}

// ---- evaluation report ----

struct EvalCell
{
  double iou_threshold;
  OverlapKind kind;
  Difficulty difficulty;
  ApResult result;
};

struct EvalReport
{
  std::string class_tag;
  std::vector<EvalCell> cells;
};

inline const char * overlap_kind_name(OverlapKind kind)
{
  switch (kind) {
    case OverlapKind::kBev:
      return "bev";
    case OverlapKind::k3D:
      return "3d";
    default:
      return "2d";
  }
}

inline const char * difficulty_name(Difficulty d)
{
  switch (d) {
    case Difficulty::kEasy:
      return "easy";
    case Difficulty::kModerate:
      return "moderate";
    case Difficulty::kHard:
      return "hard";
    default:
      return "ignored";
  }
}

/// Evaluate a detection directory against labels for every requested
/// (overlap kind, IoU threshold) over Easy/Moderate/Hard.
inline EvalReport run_evaluate(const PipelineConfig & config,
                               const std::vector<std::string> & ids,
                               const std::string & det_dir,
                               const std::vector<OverlapKind> & kinds,
                               const std::vector<double> & thresholds)
{
  std::map<std::string, std::vector<EvalDetection>> dets_by_frame;
  std::map<std::string, std::vector<EvalGroundTruth>> gts_by_frame;
  std::string missing;
  for (const auto & id : ids) {
    const Calibration calib = load_calib(config, id);
    const std::string det_path = det_dir + "/" + id + ".txt";
    if (!std::filesystem::exists(det_path)) {
      missing += " " + id;
      continue;
    }
    std::vector<EvalDetection> dets;
    for (const auto & det : parse_detections(read_file_bytes(det_path), calib)) {
      dets.push_back(eval_det_from_record(det));
    }
    std::vector<EvalGroundTruth> gts;
    for (const auto & gt : load_labels(config, id)) {
      gts.push_back(eval_gt_from_label(gt, calib));
    }
    dets_by_frame[id] = std::move(dets);
    gts_by_frame[id] = std::move(gts);
  }
  if (!missing.empty()) {
    throw ConfigError("evaluate: missing result files for frames:" + missing);
  }

  EvalReport report;
  report.class_tag = config.eval.class_tag;
  for (const auto kind : kinds) {
    for (const double threshold : thresholds) {
      for (const auto difficulty :
           {Difficulty::kEasy, Difficulty::kModerate, Difficulty::kHard}) {
        EvalSpec spec = config.eval;
        spec.overlap_kind = kind;
        spec.iou_threshold = threshold;
        spec.difficulty = difficulty;
        report.cells.push_back(
          {threshold, kind, difficulty, evaluate(dets_by_frame, gts_by_frame, spec)});
      }
    }
  }
  return report;
}

/// Aligned table, one row per (kind, IoU), columns Easy/Moderate/Hard.
inline std::string format_report_table(const EvalReport & report)
{
  std::ostringstream out;
  out << "class " << report.class_tag << "\n";
  out << std::left << std::setw(18) << "metric" << std::right << std::setw(10) << "Easy"
      << std::setw(10) << "Moderate" << std::setw(10) << "Hard" << "\n";
  for (std::size_t i = 0; i < report.cells.size(); i += 3) {
    const auto & cell = report.cells[i];
    std::ostringstream label;
    label << "AP_" << overlap_kind_name(cell.kind) << " IoU=" << std::fixed
          << std::setprecision(2) << cell.iou_threshold;
    out << std::left << std::setw(18) << label.str() << std::right << std::fixed
        << std::setprecision(2);
    for (std::size_t j = 0; j < 3; ++j) {
      out << std::setw(10) << report.cells[i + j].result.ap * 100.0;
    }
    out << "\n";
  }
  return out.str();
}

inline std::string format_report_keyvalues(const EvalReport & report)
{
  std::ostringstream out;
  out << std::setprecision(17);
  for (const auto & cell : report.cells) {
    const std::string prefix = report.class_tag + "." + overlap_kind_name(cell.kind) + "." +
                               std::to_string(cell.iou_threshold) + "." +
                               difficulty_name(cell.difficulty);
    out << prefix << ".ap=" << cell.result.ap << "\n";
    out << prefix << ".tp=" << cell.result.tp << "\n";
    out << prefix << ".fp=" << cell.result.fp << "\n";
    out << prefix << ".fn=" << cell.result.fn << "\n";
    out << prefix << ".ignored=" << cell.result.ignored << "\n";
  }
  return out.str();
}

}  // namespace bevkit

#endif  // BEVKIT__PIPELINE_HPP_
