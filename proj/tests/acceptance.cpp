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

// Acceptance suite: one pass/fail line per top-level criterion,
// nonzero exit if any criterion fails. Reference implementations live in
// oracles.hpp and are independent of the library's computation paths.

#include <unistd.h>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "bevkit/pipeline.hpp"
#include "oracles.hpp"
#include "test_support.hpp"

namespace fs = std::filesystem;
using namespace bevkit;
using Clock = std::chrono::steady_clock;

namespace
{

int g_failures = 0;

bool same_cloud(const PointCloud & a, const PointCloud & b)
{
  if (a.size() != b.size()) {
    return false;
  }
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].x != b[i].x || a[i].y != b[i].y || a[i].z != b[i].z ||
        a[i].reflectance != b[i].reflectance) {
      return false;
    }
  }
  return true;
}

double seconds_since(Clock::time_point t0)
{
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

void report(const std::string & name, bool ok, const std::string & detail)
{
  std::printf("[%s] %s (%s)\n", ok ? "PASS" : "FAIL", name.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!ok) {
    ++g_failures;
  }
}

// ---- 1. rotated IoU vs Monte-Carlo rasterization ----

void check_iou_oracle()
{
  const auto t0 = Clock::now();
  std::mt19937 rng(20260826);
  std::uniform_real_distribution<double> pos(-3.0, 3.0);
  std::uniform_real_distribution<double> dim(1.0, 5.0);
  std::uniform_real_distribution<double> ang(-M_PI, M_PI);
  double worst = 0.0;
  for (int k = 0; k < 1000; ++k) {
    BevBox a{{pos(rng), pos(rng)}, dim(rng), dim(rng), ang(rng)};
    BevBox b{{a.center.x() + pos(rng) * 0.8, a.center.y() + pos(rng) * 0.8},
             dim(rng), dim(rng), ang(rng)};
    const double analytic = iou_bev(a, b);
    const oracle::Rect ra{a.center.x(), a.center.y(), a.length, a.width, a.yaw};
    const oracle::Rect rb{b.center.x(), b.center.y(), b.length, b.width, b.yaw};
    const double sampled =
      oracle::mc_iou(ra, rb, 1000000, 777 + static_cast<std::uint64_t>(k));
    worst = std::max(worst, std::abs(analytic - sampled));
  }
  const double elapsed = seconds_since(t0);
  std::ostringstream detail;
  detail << "1000 pairs, 1e6 samples each, max |delta| = " << worst << ", " << elapsed << " s";
  report("iou-oracle-equivalence", worst <= 2e-3 && elapsed <= 60.0, detail.str());
}

// ---- 2. evaluator vs brute-force 11/40-point reference ----

EvalGroundTruth rand_gt(std::mt19937 & rng, std::uniform_real_distribution<double> & u)
{
  const int kind = static_cast<int>(rng() % 5);
  EvalGroundTruth gt;
  gt.class_tag = kind == 0 ? "DontCare" : (kind == 1 ? "Pedestrian" : "Car");
  gt.truncation = u(rng) * 0.6;
  gt.occlusion = static_cast<int>(rng() % 3);
  const double bbox_h = 15.0 + u(rng) * 60.0;
  gt.bbox2d = {100.0, 100.0, 160.0, 100.0 + bbox_h};
  gt.box = Box3D{{5.0 + u(rng) * 50.0, u(rng) * 20.0 - 10.0, 0.0}, 3.9, 1.6, 1.5,
                 u(rng) * 2.0 - 1.0};
  return gt;
}

void check_ap_oracle()
{
  const auto t0 = Clock::now();
  std::mt19937 rng(4242);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int exact = 0;
  double worst = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    EvalSpec spec;
    spec.iou_threshold = trial % 2 == 0 ? 0.5 : 0.25;
    spec.difficulty = static_cast<Difficulty>(rng() % 3);
    spec.ap_mode = trial % 2 == 0 ? ApMode::kElevenPoint : ApMode::kFortyPoint;
    spec.overlap_kind = trial % 3 == 0 ? OverlapKind::k3D : OverlapKind::kBev;

    std::map<std::string, std::vector<EvalDetection>> dets;
    std::map<std::string, std::vector<EvalGroundTruth>> gts;
    std::vector<oracle::RefFrame> frames;
    const int n_frames = 1 + static_cast<int>(rng() % 5);
    for (int f = 0; f < n_frames; ++f) {
      const std::string id = std::to_string(trial) + "_" + std::to_string(f);
      dets[id];
      gts[id];
      oracle::RefFrame frame;
      const int ng = static_cast<int>(rng() % 11);
      for (int g = 0; g < ng; ++g) {
        const auto gt = rand_gt(rng, u);
        frame.gts.push_back(gt);
        gts[id].push_back(gt);
      }
      const int nd = static_cast<int>(rng() % 8);
      for (int d = 0; d < nd; ++d) {
        EvalDetection det;
        det.class_tag = u(rng) < 0.85 ? "Car" : "Cyclist";
        det.score = u(rng);
        det.bbox2d = Bbox2D{100.0, 100.0, 160.0, 160.0};
        if (!frame.gts.empty() && u(rng) < 0.6) {
          const auto & gt = frame.gts[static_cast<std::size_t>(rng() % frame.gts.size())];
          det.box = gt.box;
          det.box.center.x() += u(rng) - 0.5;
          det.box.center.y() += u(rng) * 0.4 - 0.2;
        } else {
          det.box =
            Box3D{{5.0 + u(rng) * 50.0, u(rng) * 20.0 - 10.0, 0.0}, 3.9, 1.6, 1.5, 0.0};
        }
        frame.dets.push_back(det);
        dets[id].push_back(det);
      }
      frames.push_back(frame);
    }
    const double lib = evaluate(dets, gts, spec).ap;
    const double ref = oracle::ref_evaluate(frames, spec);
    worst = std::max(worst, std::abs(lib - ref));
    if (lib == ref) {
      ++exact;
    }
  }
  std::ostringstream detail;
  detail << exact << "/200 bit-exact, max |delta| = " << worst << ", "
         << seconds_since(t0) << " s";
  report("ap-oracle-equivalence", exact == 200, detail.str());
}

// ---- 3. RANSAC plane recovery ----

void check_ransac_recovery()
{
  const auto t0 = Clock::now();
  int good = 0;
  for (unsigned trial = 0; trial < 100; ++trial) {
    std::mt19937 rng(9000 + trial);
    std::uniform_real_distribution<double> ux(2.0, 40.0);
    std::uniform_real_distribution<double> uy(-15.0, 15.0);
    std::normal_distribution<double> noise(0.0, 0.02);
    std::uniform_real_distribution<double> uz(-1.0, 2.0);
    PointCloud cloud;
    for (int k = 0; k < 700; ++k) {
      cloud.push_back({static_cast<float>(ux(rng)), static_cast<float>(uy(rng)),
                       static_cast<float>(-1.73 + noise(rng)), 0.5F});
    }
    for (int k = 0; k < 300; ++k) {  // 30% outliers above the plane
      cloud.push_back({static_cast<float>(ux(rng)), static_cast<float>(uy(rng)),
                       static_cast<float>(uz(rng)), 0.5F});
    }
    RansacConfig config;
    config.seed = 77 + trial;
    const auto fit = fit_ground_plane(cloud, config);
    const double cos_angle = fit.plane.normal.dot(Eigen::Vector3d::UnitZ());
    const double angle_deg = std::acos(std::clamp(cos_angle, -1.0, 1.0)) * 180.0 / M_PI;
    const double d_err = std::abs(std::abs(fit.plane.d) - 1.73);
    if (angle_deg <= 1.0 && d_err <= 0.03) {
      ++good;
    }
  }
  const double elapsed = seconds_since(t0);
  std::ostringstream detail;
  detail << good << "/100 trials within 1 deg / 3 cm, " << elapsed << " s";
  report("ransac-plane-recovery", good >= 95 && elapsed < 5.0, detail.str());
}

// ---- 4. BEV encoding vs brute-force binning oracle ----

void check_bev_oracle()
{
  const auto t0 = Clock::now();
  std::mt19937 rng(1357);
  GridConfig cfg;
  cfg.x_min = 0.0;
  cfg.x_max = 32.0;
  cfg.y_min = -16.0;
  cfg.y_max = 16.0;
  cfg.resolution = 1.0;
  bool cells_exact = true;
  for (int trial = 0; trial < 500 && cells_exact; ++trial) {
    const auto cloud =
      test_support::random_cloud(rng, 1 + rng() % 100, 0.5, 31.5, -15.5, 15.5, -2.5, 1.0);
    if (encode_birdnet(cloud, cfg).values != oracle::brute_force_birdnet(cloud, cfg).values) {
      cells_exact = false;
    }
    for (std::size_t m : {std::size_t{1}, std::size_t{4}, std::size_t{8}}) {
      auto mcfg = cfg;
      mcfg.num_slices = m;
      if (encode_mv3d(cloud, mcfg).values != oracle::brute_force_mv3d(cloud, mcfg).values) {
        cells_exact = false;
      }
    }
  }

  // zero-cell property: an empty cloud encodes to all zeros
  const auto empty = encode_birdnet({}, cfg);
  bool zero_ok = true;
  for (float v : empty.values) {
    zero_ok = zero_ok && v == 0.0F;
  }

  // locality: adding one point changes only that point's cell
  bool locality_ok = true;
  {
    auto cloud = test_support::random_cloud(rng, 60, 0.5, 31.5, -15.5, 15.5, -2.5, 1.0);
    const auto before = encode_birdnet(cloud, cfg);
    cloud.push_back({10.2F, 3.3F, -0.5F, 0.9F});
    const auto after = encode_birdnet(cloud, cfg);
    const auto cell = cell_index(10.2, 3.3, cfg);
    for (std::size_t ch = 0; ch < 3; ++ch) {
      for (std::size_t r = 0; r < before.rows; ++r) {
        for (std::size_t c = 0; c < before.cols; ++c) {
          if (r == cell->first && c == cell->second) {
            continue;
          }
          locality_ok = locality_ok && before.at(ch, r, c) == after.at(ch, r, c);
        }
      }
    }
  }

  // permutation invariance with distinct z: every channel bitwise equal
  bool permutation_ok = true;
  {
    PointCloud cloud;
    for (int k = 0; k < 50; ++k) {
      cloud.push_back({static_cast<float>(1.0 + (k % 7) * 4.0),
                       static_cast<float>(-14.0 + (k % 11) * 2.5),
                       static_cast<float>(-2.0 + k * 0.05), static_cast<float>(k) / 50.0F});
    }
    auto shuffled = cloud;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    permutation_ok = encode_birdnet(cloud, cfg).values == encode_birdnet(shuffled, cfg).values;
  }

  // mv3d with a single slab reproduces the birdnet height channel bitwise
  bool m1_ok = true;
  {
    auto mcfg = cfg;
    mcfg.num_slices = 1;
    const auto cloud = test_support::random_cloud(rng, 80, 0.5, 31.5, -15.5, 15.5, -2.5, 1.0);
    const auto mv = encode_mv3d(cloud, mcfg);
    const auto bn = encode_birdnet(cloud, cfg);
    for (std::size_t i = 0; i < bn.rows * bn.cols; ++i) {
      m1_ok = m1_ok && mv.values[i] == bn.values[i];
    }
  }

  std::ostringstream detail;
  detail << "cell-exact=" << (cells_exact ? "yes" : "no") << " zero=" << zero_ok
         << " locality=" << locality_ok << " permutation=" << permutation_ok
         << " m1-bitwise=" << m1_ok << ", " << seconds_since(t0) << " s";
  report("bev-encoding-oracle",
         cells_exact && zero_ok && locality_ok && permutation_ok && m1_ok, detail.str());
}

// ---- 5. clipping protocol ----

void check_clipping()
{
  const auto t0 = Clock::now();
  std::mt19937 rng(2468);
  const ClipSpec clip{25.0, ClipMetric::kForward};
  const FovSpec fov{90.0, true};
  bool beyond_zero = true;
  bool idempotent = true;
  bool commutes = true;
  GridConfig cfg;  // default 70.4 m forward extent: rows past 25 m must go dark
  for (int trial = 0; trial < 20; ++trial) {
    const auto cloud = test_support::random_cloud(rng, 400, 0.5, 69.0, -39.0, 39.0, -2.5, 1.0);
    const auto clipped = clip_range(cloud, clip);
    const auto grid = encode_birdnet(clipped, cfg);
    for (std::size_t r = 0; r < grid.rows; ++r) {
      const double x_lo = cfg.x_max - static_cast<double>(r + 1) * cfg.resolution;
      if (x_lo < clip.max_distance) {
        continue;
      }
      for (std::size_t ch = 0; ch < 3; ++ch) {
        for (std::size_t c = 0; c < grid.cols; ++c) {
          beyond_zero = beyond_zero && grid.at(ch, r, c) == 0.0F;
        }
      }
    }
    idempotent = idempotent && same_cloud(clip_range(clipped, clip), clipped);
    commutes = commutes && same_cloud(clip_range(crop_to_fov(cloud, fov), clip),
                                      crop_to_fov(clip_range(cloud, clip), fov));
  }
  std::ostringstream detail;
  detail << "beyond-25m-zero=" << beyond_zero << " idempotent=" << idempotent
         << " commutes-with-fov=" << commutes << ", " << seconds_since(t0) << " s";
  report("clipping-protocol", beyond_zero && idempotent && commutes, detail.str());
}

// ---- 6. geometry and file round-trips ----

void check_round_trips()
{
  const auto t0 = Clock::now();
  std::mt19937 rng(8642);
  std::uniform_real_distribution<double> u(-1.0, 1.0);

  bool lift_ok = true;
  for (int k = 0; k < 200; ++k) {
    const BevBox bev{{10.0 + u(rng) * 8.0, u(rng) * 8.0}, 3.0 + u(rng), 1.5 + 0.4 * u(rng),
                     u(rng) * M_PI};
    const Plane plane{Eigen::Vector3d(0.05 * u(rng), 0.05 * u(rng), 1.0).normalized(),
                      1.7 + 0.1 * u(rng)};
    const auto back = bev_from_3d(lift_to_3d(bev, plane, 1.5));
    lift_ok = lift_ok && (back.center - bev.center).norm() < 1e-12 &&
              back.length == bev.length && back.width == bev.width && back.yaw == bev.yaw;
  }

  bool transform_ok = true;
  for (int k = 0; k < 100; ++k) {
    const auto calib = test_support::random_rigid_calibration(rng);
    const Eigen::Vector3d p(u(rng) * 30.0, u(rng) * 30.0, u(rng) * 3.0);
    transform_ok =
      transform_ok && (camera_to_velo(velo_to_camera(p, calib), calib) - p).norm() < 1e-9;
  }

  bool binary_ok = true;
  {
    const auto cloud = test_support::random_cloud(rng, 500);
    binary_ok = same_cloud(read_velodyne(write_velodyne(cloud)), cloud);
  }

  bool text_ok = true;
  {
    std::vector<DetectionRecord> dets;
    for (int k = 0; k < 30; ++k) {
      DetectionRecord det;
      det.class_tag = k % 2 == 0 ? "Car" : "Pedestrian";
      det.box3d = Box3D{{10.0 + u(rng) * 8.0, u(rng) * 8.0, -1.0 + u(rng)},
                        3.9 + u(rng), 1.6 + 0.2 * u(rng), 1.5 + 0.2 * u(rng), u(rng) * 3.0};
      det.score = 0.5 + 0.5 * u(rng);
      det.bbox2d = Bbox2D{100.0, 100.0, 200.0, 180.0};
      dets.push_back(det);
    }
    const auto parsed = parse_detections(write_detections(dets));
    text_ok = parsed.size() == dets.size();
    for (std::size_t i = 0; text_ok && i < dets.size(); ++i) {
      text_ok = (parsed[i].box3d.center - dets[i].box3d.center).norm() < 1e-6 &&
                std::abs(parsed[i].box3d.length - dets[i].box3d.length) < 1e-6 &&
                std::abs(parsed[i].box3d.yaw - dets[i].box3d.yaw) < 1e-6 &&
                std::abs(parsed[i].score - dets[i].score) < 1e-6;
    }
  }

  bool tensor_ok = true;
  {
    GridConfig cfg;
    cfg.x_max = 8.0;
    cfg.y_min = -4.0;
    cfg.y_max = 4.0;
    cfg.resolution = 0.5;
    const auto grid = encode_birdnet(test_support::random_cloud(rng, 200, 0.5, 7.5, -3.5, 3.5), cfg);
    const auto bytes = serialize_tensor(tensor_from_bev_grid(grid));
    tensor_ok = serialize_tensor(parse_tensor(bytes)) == bytes &&
                bev_grid_from_tensor(parse_tensor(bytes)).values == grid.values;
  }

  std::ostringstream detail;
  detail << "lift=" << lift_ok << " velo-camera=" << transform_ok << " binary=" << binary_ok
         << " text=" << text_ok << " tensor=" << tensor_ok << ", " << seconds_since(t0) << " s";
  report("geometry-round-trips", lift_ok && transform_ok && binary_ok && text_ok && tensor_ok,
         detail.str());
}

// ---- 7. fusion laws ----

void check_fusion_laws()
{
  const auto t0 = Clock::now();
  std::mt19937 rng(112);
  std::uniform_real_distribution<double> u(0.0, 1.0);

  auto random_set = [&](double x0) {
    std::vector<DetectionRecord> out;
    const int n = 1 + static_cast<int>(rng() % 5);
    for (int k = 0; k < n; ++k) {
      DetectionRecord det;
      det.class_tag = "Car";
      det.box3d = Box3D{{x0 + k * 20.0, u(rng) * 4.0, -1.0}, 3.9, 1.6, 1.5, u(rng)};
      det.score = u(rng);
      out.push_back(det);
    }
    return out;
  };

  bool self_ok = true;
  bool disjoint_ok = true;
  FusionSpec spec;
  for (int trial = 0; trial < 50; ++trial) {
    const auto s = random_set(5.0);
    const auto fused = fuse_detections(s, s, spec);
    self_ok = self_ok && fused.size() == s.size();
    auto sorted = s;
    std::stable_sort(sorted.begin(), sorted.end(),
                     [](const auto & a, const auto & b) { return a.score > b.score; });
    for (std::size_t i = 0; self_ok && i < s.size(); ++i) {
      self_ok = fused[i].score == sorted[i].score &&
                (fused[i].box3d.center - sorted[i].box3d.center).norm() == 0.0 &&
                fused[i].box3d.yaw == sorted[i].box3d.yaw;
    }

    FusionSpec keep = spec;
    keep.unmatched_score_scale = 1.0;
    const auto a = random_set(5.0);
    const auto b = random_set(500.0);  // far away: no pair can match
    const auto merged = fuse_detections(a, b, keep);
    disjoint_ok = disjoint_ok && merged.size() == a.size() + b.size();
    double prev = 2.0;
    for (const auto & det : merged) {
      disjoint_ok = disjoint_ok && det.score <= prev;
      prev = det.score;
    }
  }

  bool join_ok = true;
  for (int trial = 0; trial < 50; ++trial) {
    FeatureTensor a{{4, 5}, {}};
    FeatureTensor b{{4, 5}, {}};
    for (int k = 0; k < 20; ++k) {
      a.values.push_back(static_cast<float>(u(rng)));
      b.values.push_back(static_cast<float>(u(rng)));
    }
    const auto ab = join(a, b, JoinKind::kMean);
    const auto ba = join(b, a, JoinKind::kMean);
    join_ok = join_ok && ab.values == ba.values &&
              join(a, a, JoinKind::kMean).values == a.values;
  }

  std::ostringstream detail;
  detail << "self-identity=" << self_ok << " disjoint-union=" << disjoint_ok
         << " mean-join-laws=" << join_ok << ", " << seconds_since(t0) << " s";
  report("fusion-laws", self_ok && disjoint_ok && join_ok, detail.str());
}

// ---- 8. end-to-end smoke on a synthetic mini-dataset ----

void check_end_to_end()
{
  const auto t0 = Clock::now();
  const fs::path root = fs::path("/tmp") / ("bevkit_accept_" + std::to_string(::getpid()));
  fs::remove_all(root);
  fs::create_directories(root / "velodyne");
  fs::create_directories(root / "label_2");
  fs::create_directories(root / "calib");
  const char * identity_calib =
    "P2: 1 0 0 0 0 1 0 0 0 0 1 0\n"
    "R0_rect: 1 0 0 0 1 0 0 0 1\n"
    "Tr_velo_to_cam: 1 0 0 0 0 1 0 0 0 0 1 0\n";

  std::vector<std::string> ids{"000000", "000001", "000002", "000003", "000004"};
  std::map<std::string, Eigen::Vector2d> car_at;
  std::mt19937 rng(31415);
  std::uniform_real_distribution<double> jitter(-0.02, 0.02);
  for (std::size_t f = 0; f < ids.size(); ++f) {
    const Eigen::Vector2d c(10.0 + 3.0 * static_cast<double>(f),
                            -4.0 + 2.0 * static_cast<double>(f));
    car_at[ids[f]] = c;
    PointCloud cloud;
    for (double x = 2.0; x <= 24.0; x += 0.8) {
      for (double y = -10.0; y <= 10.0; y += 0.8) {
        cloud.push_back({static_cast<float>(x), static_cast<float>(y),
                         static_cast<float>(-1.73 + jitter(rng)), 0.4F});
      }
    }
    for (int k = 0; k < 30; ++k) {
      cloud.push_back({static_cast<float>(c.x() + jitter(rng) * 40.0),
                       static_cast<float>(c.y() + jitter(rng) * 20.0),
                       static_cast<float>(-0.9 + jitter(rng) * 10.0), 0.8F});
    }
    write_file_bytes((root / "velodyne" / (ids[f] + ".bin")).string(), write_velodyne(cloud));
    write_file_bytes((root / "calib" / (ids[f] + ".txt")).string(), identity_calib);

    GroundTruthObject gt;
    gt.class_tag = "Car";
    gt.bbox2d = {100.0, 100.0, 150.0, 150.0};
    gt.dim_height = 1.53;
    gt.dim_width = 1.0;  // narrow box: a 0.5 m lateral jitter must break the match
    gt.dim_length = 3.0;
    gt.location = {c.x(), c.y(), -1.73};
    gt.rotation_y = rotation_y_from_yaw(0.0);
    write_file_bytes((root / "label_2" / (ids[f] + ".txt")).string(), format_label_file({gt}));
  }
  std::string split;
  for (const auto & id : ids) {
    split += id + "\n";
  }
  write_file_bytes((root / "split.txt").string(), split);

  PipelineConfig config;
  config.paths.velodyne_dir = (root / "velodyne").string();
  config.paths.label_dir = (root / "label_2").string();
  config.paths.calib_dir = (root / "calib").string();
  config.paths.split_file = (root / "split.txt").string();
  config.eval.iou_threshold = 0.5;

  bool encode_ok = run_encode_bev(config, ids, BevVariant::kBirdnet, true,
                                  (root / "bev").string())
                     .ok();
  bool plane_ok = run_ground_plane(config, ids, (root / "planes").string()).ok();

  auto write_dets = [&](const std::string & dir, double dx, double dy) {
    fs::create_directories(root / dir);
    for (const auto & id : ids) {
      DetectionRecord det;
      det.class_tag = "Car";
      const auto & c = car_at.at(id);
      det.box3d = Box3D{{c.x() + dx, c.y() + dy, 0.0}, 3.0, 1.0, 1.53, 0.0};
      det.score = 0.9;
      det.bbox2d = Bbox2D{100.0, 100.0, 150.0, 150.0};
      write_file_bytes((root / dir / (id + ".txt")).string(), write_detections({det}));
    }
  };
  write_dets("bev_dets", 0.0, 0.0);
  write_dets("bev_dets_jittered", 0.0, 0.5);

  bool lift_ok =
    run_lift(config, ids, (root / "bev_dets").string(), (root / "planes").string(),
             (root / "lifted").string())
      .ok() &&
    run_lift(config, ids, (root / "bev_dets_jittered").string(), (root / "planes").string(),
             (root / "lifted_jittered").string())
      .ok();

  auto easy_ap = [&](const std::string & det_dir) {
    const auto report =
      run_evaluate(config, ids, (root / det_dir).string(), {OverlapKind::kBev}, {0.5});
    for (const auto & cell : report.cells) {
      if (cell.difficulty == Difficulty::kEasy) {
        return cell.result.ap;
      }
    }
    return -1.0;
  };
  const double perfect_ap = easy_ap("lifted");
  const double jittered_ap = easy_ap("lifted_jittered");
  fs::remove_all(root);

  const double elapsed = seconds_since(t0);
  const bool ok = encode_ok && plane_ok && lift_ok && perfect_ap == 1.0 &&
                  jittered_ap < perfect_ap && elapsed < 30.0;
  std::ostringstream detail;
  detail << "perfect AP = " << perfect_ap * 100.0 << ", jittered AP = "
         << jittered_ap * 100.0 << ", " << elapsed << " s";
  report("end-to-end-smoke", ok, detail.str());
}

}  // namespace

int main()
{
  check_iou_oracle();
  check_ap_oracle();
  check_ransac_recovery();
  check_bev_oracle();
  check_clipping();
  check_round_trips();
  check_fusion_laws();
  check_end_to_end();
  if (g_failures > 0) {
    std::printf("ACCEPTANCE: %d criterion(s) failed\n", g_failures);
    return 1;
  }
  std::printf("ACCEPTANCE: all 8 criteria passed\n");
  return 0;
}
