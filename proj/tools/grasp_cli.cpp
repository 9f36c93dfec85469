#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "grasp/cloud_io.hpp"
#include "grasp/eval.hpp"
#include "grasp/kernels.hpp"
#include "grasp/pipeline.hpp"
#include "grasp/serialize.hpp"

namespace fs = std::filesystem;
using namespace grasp;

namespace {

constexpr double kDegToRad = M_PI / 180.0;

/// Length with optional unit suffix: "8cm", "12mm", "0.08m", "0.08".
/// Bare numbers are meters.
double parse_length(const std::string& text) {
    std::size_t pos = 0;
    const double value = std::stod(text, &pos);
    std::string unit = text.substr(pos);
    if (unit.empty() || unit == "m") return value;
    if (unit == "cm") return value / 100.0;
    if (unit == "mm") return value / 1000.0;
    throw CLI::ValidationError("length", "unknown unit '" + unit + "' in '" + text + "'");
}

struct PipelineFlags {
    std::string gripper_d = "8cm", gripper_w = "1cm", gripper_e = "2cm",
                gripper_h = "6cm", gripper_l = "3cm", gripper_g = "1.5cm";
    double theta_low_deg = 8, theta_high_deg = 30;
    double edge_k = 0.4;
    std::string radius = "1cm";
    std::size_t min_segment = 50;
    std::string voxel = "0", smooth_r = "0";

    PipelineConfig to_config() const {
        PipelineConfig cfg;
        cfg.gripper.max_aperture = parse_length(gripper_d);
        cfg.gripper.finger_width = parse_length(gripper_w);
        cfg.gripper.finger_thickness = parse_length(gripper_e);
        cfg.gripper.finger_length = parse_length(gripper_h);
        cfg.gripper.min_grasp_depth = parse_length(gripper_l);
        cfg.gripper.min_clearance = parse_length(gripper_g);
        cfg.gripper.validate();
        cfg.seg.theta_low = theta_low_deg * kDegToRad;
        cfg.seg.theta_high = theta_high_deg * kDegToRad;
        cfg.seg.edge_ratio_k = edge_k;
        cfg.seg.radius_r = parse_length(radius);
        cfg.seg.min_segment_size = min_segment;
        cfg.seg.validate();
        cfg.filter.voxel_leaf = parse_length(voxel);
        cfg.filter.smoothing_radius = parse_length(smooth_r);
        return cfg;
    }
};

void add_pipeline_flags(CLI::App* app, PipelineFlags& f) {
    app->add_option("--gripper-d", f.gripper_d, "max hand aperture (e.g. 8cm)")
        ->capture_default_str();
    app->add_option("--gripper-w", f.gripper_w, "finger width")->capture_default_str();
    app->add_option("--gripper-e", f.gripper_e, "finger thickness")->capture_default_str();
    app->add_option("--gripper-h", f.gripper_h, "finger length")->capture_default_str();
    app->add_option("--gripper-l", f.gripper_l, "min grasp depth")->capture_default_str();
    app->add_option("--gripper-g", f.gripper_g, "min clearance")->capture_default_str();
    app->add_option("--theta-low", f.theta_low_deg, "lower smoothness threshold, degrees")
        ->capture_default_str();
    app->add_option("--theta-high", f.theta_high_deg, "upper smoothness threshold, degrees")
        ->capture_default_str();
    app->add_option("--edge-k", f.edge_k, "edge-point ratio threshold")->capture_default_str();
    app->add_option("--radius", f.radius, "neighborhood radius")->capture_default_str();
    app->add_option("--min-segment-size", f.min_segment, "smallest surviving segment")
        ->capture_default_str();
    app->add_option("--voxel", f.voxel, "voxel leaf (0 disables)")->capture_default_str();
    app->add_option("--smooth", f.smooth_r, "smoothing radius (0 disables)")
        ->capture_default_str();
    app->set_config("--config", "", "key=value config file; flags win");
}

int run_detect(const std::string& input, const std::string& out_json,
               const std::string& out_ply, const PipelineFlags& flags,
               bool labels_only) {
    const PipelineConfig cfg = flags.to_config();
    const PointCloud cloud = load_pcd(input);
    if (cloud.dropped_non_finite > 0)
        std::cerr << "dropped " << cloud.dropped_non_finite
                  << " non-finite points at load\n";
    PipelineResult res = run_pipeline(cloud, cfg);
    std::cout << res.cloud.size() << " points, "
              << res.segmentation.segments.size() << " segments, "
              << res.handles.size() << " handles ["
              << kernels::active_backend() << " kernels]\n";
    if (!out_json.empty())
        write_file_atomic(out_json,
                          handles_to_json(res.handles, cfg, res.timings));
    if (!out_ply.empty())
        export_ply(res.cloud, &res.segmentation,
                   labels_only ? nullptr : &res.handles, out_ply);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"graspable-affordance detection in single-view point clouds"};
    app.require_subcommand(1);

    PipelineFlags flags;

    // detect
    std::string in_path, out_json, out_ply;
    auto* detect = app.add_subcommand("detect", "find grasp handles in a PCD");
    detect->add_option("--in", in_path, "input .pcd")->required();
    detect->add_option("--out", out_json, "handle report JSON");
    detect->add_option("--viz", out_ply, "segmentation + handles PLY");
    add_pipeline_flags(detect, flags);

    // segment
    std::string seg_in, seg_ply;
    auto* segment = app.add_subcommand("segment", "segment a PCD and export PLY");
    segment->add_option("--in", seg_in, "input .pcd")->required();
    segment->add_option("--viz", seg_ply, "segment-colored PLY")->required();
    add_pipeline_flags(segment, flags);

    // eval
    std::vector<std::string> scene_paths;
    std::string eval_json, eval_csv;
    auto* eval_cmd = app.add_subcommand("eval", "recall over annotated scenes");
    eval_cmd
        ->add_option("--scene", scene_paths,
                     "scene .pcd (annotation at <stem>.ann.json)")
        ->required();
    eval_cmd->add_option("--json", eval_json, "EvalReport JSON output");
    eval_cmd->add_option("--csv", eval_csv, "per-scene CSV output");
    add_pipeline_flags(eval_cmd, flags);

    // synth
    std::string spec_path, synth_out;
    auto* synth = app.add_subcommand("synth", "generate a synthetic scene");
    synth->add_option("--spec", spec_path, "scene spec JSON")->required();
    synth->add_option("--out", synth_out, "output directory")->required();

    // bench
    std::string bench_in, bench_json;
    std::size_t repeats = 5;
    auto* bench_cmd = app.add_subcommand("bench", "pipeline timing benchmark");
    bench_cmd->add_option("--in", bench_in, "input .pcd")->required();
    bench_cmd->add_option("--repeats", repeats, "repetitions (>= 3)")
        ->capture_default_str();
    bench_cmd->add_option("--out", bench_json, "timing JSON output");
    add_pipeline_flags(bench_cmd, flags);

    // export
    std::string exp_in, exp_ply;
    auto* export_cmd =
        app.add_subcommand("export", "run the pipeline and export a PLY");
    export_cmd->add_option("--in", exp_in, "input .pcd")->required();
    export_cmd->add_option("--out", exp_ply, "output .ply")->required();
    add_pipeline_flags(export_cmd, flags);

    CLI11_PARSE(app, argc, argv);

    try {
        if (detect->parsed())
            return run_detect(in_path, out_json, out_ply, flags, false);
        if (segment->parsed())
            return run_detect(seg_in, "", seg_ply, flags, true);
        if (export_cmd->parsed())
            return run_detect(exp_in, "", exp_ply, flags, false);

        if (synth->parsed()) {
            const auto spec = load_scene_spec(spec_path);
            auto [cloud, ann] = synth_scene(spec);
            fs::create_directories(synth_out);
            const fs::path base = fs::path(synth_out) / spec.scene_id;
            save_pcd(cloud, base.string() + ".pcd");
            write_file_atomic(base.string() + ".ann.json",
                              annotation_to_json(ann));
            std::cout << "wrote " << base.string() << ".pcd (" << cloud.size()
                      << " points) and annotation\n";
            return 0;
        }

        if (bench_cmd->parsed()) {
            const PipelineConfig cfg = flags.to_config();
            const PointCloud cloud = load_pcd(bench_in);
            const BenchReport report = bench(cloud, cfg, repeats);
            const std::string json = bench_to_json(report);
            if (!bench_json.empty())
                write_file_atomic(bench_json, json);
            else
                std::cout << json << '\n';
            return 0;
        }

        if (eval_cmd->parsed()) {
            const PipelineConfig cfg = flags.to_config();
            std::vector<std::pair<PointCloud, SceneAnnotation>> scenes;
            for (const auto& p : scene_paths) {
                fs::path pcd(p);
                fs::path ann = pcd;
                ann.replace_extension();
                ann += ".ann.json";
                scenes.emplace_back(load_pcd(pcd), load_annotation(ann));
            }
            const EvalReport report = evaluate(scenes, cfg);
            if (!eval_json.empty())
                write_file_atomic(eval_json, report_to_json(report));
            if (!eval_csv.empty())
                write_file_atomic(eval_csv, report_to_csv(report));
            std::cout << "aggregate recall: " << report.aggregate_recall_pct
                      << "% (" << report.total_detected << "/"
                      << report.total_objects << " objects)\n";
            bool any_failed = false;
            for (const auto& s : report.scenes)
                if (!s.error.empty()) {
                    std::cerr << "scene " << s.scene_id << " failed: " << s.error
                              << '\n';
                    any_failed = true;
                }
            return any_failed ? 1 : 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
