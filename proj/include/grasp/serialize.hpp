#pragma once

#include <filesystem>
#include <string>

#include "grasp/eval.hpp"
#include "grasp/pipeline.hpp"
#include "grasp/synth.hpp"

namespace grasp {

std::string annotation_to_json(const SceneAnnotation& ann);
SceneAnnotation annotation_from_json(const std::string& text);
SceneAnnotation load_annotation(const std::filesystem::path& path);

SyntheticSceneSpec scene_spec_from_json(const std::string& text);
SyntheticSceneSpec load_scene_spec(const std::filesystem::path& path);

/// Handle report: scene-level config echo and timings plus one record per
/// handle (segment id, position, frame axes, extrinsic X-Y-Z angles, patch
/// extent, depth, point count).
std::string handles_to_json(const std::vector<GraspHandle>& handles,
                            const PipelineConfig& cfg,
                            const StageTimings& timings);

/// Atomic file write: temp file in the same directory, then rename.
void write_file_atomic(const std::filesystem::path& path,
                       const std::string& content);

}  // namespace grasp
