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

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "bevkit/pipeline.hpp"

namespace
{

struct CommonArgs
{
  std::string config_file;
  std::vector<std::string> overrides;  // key=value, applied after the file
  std::string split_file;
  int jobs{1};
  std::uint64_t seed{0};
  bool seed_set{false};
};

void add_common(CLI::App * cmd, CommonArgs & args)
{
  cmd->add_option("--config", args.config_file, "key=value configuration file");
  cmd->add_option("--set", args.overrides, "override a config entry, e.g. --set grid.resolution=0.2");
  cmd->add_option("--split", args.split_file, "split file listing frame ids");
  cmd->add_option("--jobs", args.jobs, "worker threads")->check(CLI::PositiveNumber);
  cmd->add_option("--seed", args.seed, "RANSAC seed")->each([&](const std::string &) {
    args.seed_set = true;
  });
}

bevkit::PipelineConfig build_config(const CommonArgs & args)
{
  bevkit::PipelineConfig config;
  if (!args.config_file.empty()) {
    bevkit::apply_config_text(config, bevkit::read_file_bytes(args.config_file));
  }
  for (const auto & entry : args.overrides) {
    const auto eq = entry.find('=');
    if (eq == std::string::npos) {
      throw bevkit::ConfigError("--set expects key=value, got '" + entry + "'");
    }
    bevkit::apply_config_entry(config, entry.substr(0, eq), entry.substr(eq + 1));
  }
  config.jobs = args.jobs;
  if (args.seed_set) {
    config.ransac.seed = args.seed;
  }
  if (!args.split_file.empty()) {
    config.paths.split_file = args.split_file;
  }
  return config;
}

std::vector<std::string> frame_ids(const bevkit::PipelineConfig & config)
{
  if (config.paths.split_file.empty()) {
    throw bevkit::ConfigError("no split file given (--split or paths.split_file)");
  }
  return bevkit::read_split_file(config.paths.split_file);
}

int finish(const bevkit::CommandResult & result)
{
  for (const auto & error : result.errors) {
    std::cerr << "error: " << error << "\n";
  }
  std::cout << result.processed << " frame(s) processed, " << result.errors.size()
            << " failed\n";
  return result.errors.empty() ? 0 : 1;
}

}  // namespace

int main(int argc, char ** argv)
{
  CLI::App app{"Point-cloud-to-BEV perception toolkit"};
  app.require_subcommand(1);

  CommonArgs common;
  std::string variant = "birdnet";
  int slices = -1;
  double clip_distance = -1.0;
  bool clip = false;
  std::string out_dir;
  std::string in_dir;
  std::string second_dir;
  std::string plane_dir;
  std::string det_dir;
  std::vector<std::string> keep_tags;
  std::vector<std::string> overlap_kinds = {"bev"};
  std::vector<double> thresholds = {0.5};
  std::string ap_mode;
  double fuse_iou = 0.5;
  double unmatched_scale = 1.0;
  std::string report_out;

  auto * encode_bev = app.add_subcommand("encode-bev", "rasterize clouds to BEV tensors");
  add_common(encode_bev, common);
  encode_bev->add_option("--variant", variant, "birdnet or mv3d")
    ->check(CLI::IsMember({"birdnet", "mv3d"}));
  encode_bev->add_option("--slices", slices, "height slices M (mv3d)");
  encode_bev->add_flag("--clip", clip, "apply FOV crop and range clip first");
  encode_bev->add_option("--clip-distance", clip_distance, "range clip threshold, meters");
  encode_bev->add_option("--out", out_dir, "output directory")->required();

  auto * encode_fv = app.add_subcommand("encode-fv", "project clouds to front-view tensors");
  add_common(encode_fv, common);
  encode_fv->add_flag("--clip", clip, "apply FOV crop and range clip first");
  encode_fv->add_option("--clip-distance", clip_distance, "range clip threshold, meters");
  encode_fv->add_option("--out", out_dir, "output directory")->required();

  auto * clip_cmd = app.add_subcommand("clip", "write FOV-cropped, range-clipped clouds");
  add_common(clip_cmd, common);
  clip_cmd->add_option("--clip-distance", clip_distance, "range clip threshold, meters");
  clip_cmd->add_option("--out", out_dir, "output directory")->required();

  auto * plane_cmd = app.add_subcommand("ground-plane", "fit per-frame ground planes");
  add_common(plane_cmd, common);
  plane_cmd->add_option("--out", out_dir, "output directory")->required();

  auto * lift_cmd = app.add_subcommand("lift", "lift BEV detections to 3D result files");
  add_common(lift_cmd, common);
  lift_cmd->add_option("--dets", in_dir, "BEV detection result directory")->required();
  lift_cmd->add_option("--planes", plane_dir, "precomputed plane directory (else fit from clouds)");
  lift_cmd->add_option("--out", out_dir, "output directory")->required();

  auto * eval_cmd = app.add_subcommand("evaluate", "KITTI-style AP evaluation");
  add_common(eval_cmd, common);
  eval_cmd->add_option("--dets", det_dir, "detection result directory")->required();
  eval_cmd->add_option("--overlap", overlap_kinds, "overlap kinds: bev, 3d, 2d");
  eval_cmd->add_option("--iou", thresholds, "IoU thresholds");
  eval_cmd->add_option("--ap-mode", ap_mode, "11 or 40")->check(CLI::IsMember({"11", "40"}));
  eval_cmd->add_option("--report", report_out, "write table and key-value report files here");

  auto * fuse_cmd = app.add_subcommand("fuse", "late-fuse two detection directories");
  add_common(fuse_cmd, common);
  fuse_cmd->add_option("--real", in_dir, "first (real-data) detection directory")->required();
  fuse_cmd->add_option("--generated", second_dir, "second detection directory")->required();
  fuse_cmd->add_option("--iou", fuse_iou, "pairing IoU threshold");
  fuse_cmd->add_option("--unmatched-scale", unmatched_scale, "score scale for unmatched boxes");
  fuse_cmd->add_option("--out", out_dir, "output directory")->required();

  auto * render_cmd = app.add_subcommand("render", "render tensors (and boxes) to PGM images");
  add_common(render_cmd, common);
  render_cmd->add_option("--tensors", in_dir, "BEVT tensor directory")->required();
  render_cmd->add_option("--dets", det_dir, "detection result directory for the overlay");
  render_cmd->add_option("--out", out_dir, "output directory")->required();

  auto * ablate_cmd = app.add_subcommand("ablate-channels", "restrict BEV tensors to a channel subset");
  add_common(ablate_cmd, common);
  ablate_cmd->add_option("--tensors", in_dir, "BEVT tensor directory")->required();
  ablate_cmd->add_option("--keep", keep_tags, "tags to keep: height, density, intensity")
    ->required();
  ablate_cmd->add_option("--out", out_dir, "output directory")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    bevkit::PipelineConfig config = build_config(common);
    if (slices > 0) {
      config.grid.num_slices = slices;
    }
    if (clip_distance > 0.0) {
      config.clip.max_distance = clip_distance;
    }
    if (ap_mode == "11") {
      config.eval.ap_mode = bevkit::ApMode::kElevenPoint;
    } else if (ap_mode == "40") {
      config.eval.ap_mode = bevkit::ApMode::kFortyPoint;
    }
    const auto ids = frame_ids(config);

    if (encode_bev->parsed()) {
      const auto v = variant == "mv3d" ? bevkit::BevVariant::kMv3d : bevkit::BevVariant::kBirdnet;
      return finish(bevkit::run_encode_bev(config, ids, v, clip, out_dir));
    }
    if (encode_fv->parsed()) {
      return finish(bevkit::run_encode_fv(config, ids, clip, out_dir));
    }
    if (clip_cmd->parsed()) {
      return finish(bevkit::run_clip(config, ids, out_dir));
    }
    if (plane_cmd->parsed()) {
      return finish(bevkit::run_ground_plane(config, ids, out_dir));
    }
    if (lift_cmd->parsed()) {
      const auto planes =
        plane_dir.empty() ? std::nullopt : std::optional<std::string>(plane_dir);
      return finish(bevkit::run_lift(config, ids, in_dir, planes, out_dir));
    }
    if (eval_cmd->parsed()) {
      std::vector<bevkit::OverlapKind> kinds;
      for (const auto & name : overlap_kinds) {
        if (name == "bev") {
          kinds.push_back(bevkit::OverlapKind::kBev);
        } else if (name == "3d") {
          kinds.push_back(bevkit::OverlapKind::k3D);
        } else if (name == "2d") {
          kinds.push_back(bevkit::OverlapKind::k2D);
        } else {
          throw bevkit::ConfigError("unknown overlap kind '" + name + "'");
        }
      }
      const auto report = bevkit::run_evaluate(config, ids, det_dir, kinds, thresholds);
      const std::string table = bevkit::format_report_table(report);
      std::cout << table;
      if (!report_out.empty()) {
        std::filesystem::create_directories(report_out);
        bevkit::write_file_bytes(report_out + "/report.txt", table);
        bevkit::write_file_bytes(report_out + "/report.kv",
                                 bevkit::format_report_keyvalues(report));
      }
      return 0;
    }
    if (fuse_cmd->parsed()) {
      bevkit::FusionSpec spec;
      spec.match_iou = fuse_iou;
      spec.unmatched_score_scale = unmatched_scale;
      return finish(bevkit::run_fuse(config, ids, in_dir, second_dir, spec, out_dir));
    }
    if (render_cmd->parsed()) {
      const auto dets = det_dir.empty() ? std::nullopt : std::optional<std::string>(det_dir);
      return finish(bevkit::run_render(config, ids, in_dir, dets, out_dir));
    }
    if (ablate_cmd->parsed()) {
      const std::set<std::string> keep(keep_tags.begin(), keep_tags.end());
      return finish(bevkit::run_ablate_channels(config, ids, in_dir, keep, out_dir));
    }
  } catch (const bevkit::ConfigError & e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception & e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
