#pragma once

#include <string>
#include <vector>

#include "grasp/pipeline.hpp"
#include "grasp/synth.hpp"

namespace grasp {

struct SceneResult {
    std::string scene_id;
    std::size_t total_graspable = 0;
    std::size_t detected_objects = 0;  // objects with >= 1 credited handle
    std::size_t handle_count = 0;
    double recall_pct = 0;
    StageTimings timings;
    std::string error;  // non-empty when the scene was skipped
};

struct EvalReport {
    std::vector<SceneResult> scenes;
    double aggregate_recall_pct = 0;
    std::size_t total_objects = 0;
    std::size_t total_detected = 0;
};

/// Fraction of a handle's patch that must fall inside an object's annotated
/// point set for the handle to be credited to that object.
inline constexpr double kCreditThreshold = 0.6;

/// Runs the pipeline per scene and scores recall: an object counts as
/// detected when at least one handle is credited to it.
EvalReport evaluate(const std::vector<std::pair<PointCloud, SceneAnnotation>>& scenes,
                    const PipelineConfig& cfg);

/// Crediting primitive, exposed for tests: object index credited by the
/// handle's patch, or -1. When the pipeline cloud differs from the annotated
/// cloud (e.g. after voxel downsampling), patch points are mapped to their
/// nearest annotated point first.
int credit_handle(const GraspHandle& handle,
                  const std::vector<std::uint32_t>& patch_in_annotated,
                  const SceneAnnotation& ann);

struct TimingSummary {
    double median = 0, p90 = 0;
};

struct BenchReport {
    std::size_t points = 0;
    std::size_t repeats = 0;
    TimingSummary filter, index, normals, segmentation, handles, total;
    std::size_t handle_count = 0;
    std::size_t segment_count = 0;
};

/// Runs the pipeline `repeats` times (>= 3) on one cloud and summarizes
/// per-stage timings. File I/O is excluded by construction.
BenchReport bench(const PointCloud& cloud, const PipelineConfig& cfg,
                  std::size_t repeats);

std::string bench_to_json(const BenchReport& report);
std::string report_to_json(const EvalReport& report);
std::string report_to_csv(const EvalReport& report);

}  // namespace grasp
