#pragma once

#include <optional>

#include "grasp/cloud_io.hpp"
#include "grasp/gripper.hpp"
#include "grasp/handles.hpp"
#include "grasp/normals.hpp"
#include "grasp/segmentation.hpp"

namespace grasp {

struct PipelineConfig {
    CloudFilterConfig filter;
    SegmentationConfig seg;
    GripperModel gripper;
    // normal-estimation neighborhood; defaults to half the region-growing
    // radius so the normal blend zone across a crease stays narrower than
    // the edge test's neighborhood
    std::optional<NeighborhoodSpec> normals;

    NeighborhoodSpec normal_spec() const {
        return normals ? *normals : NeighborhoodSpec::by_radius(seg.radius_r / 2);
    }
};

struct StageTimings {
    double filter_s = 0;
    double index_s = 0;
    double normals_s = 0;
    double segmentation_s = 0;
    double handles_s = 0;
    double total() const {
        return filter_s + index_s + normals_s + segmentation_s + handles_s;
    }
};

struct PipelineResult {
    PointCloud cloud;  // after filters; indices below refer to this cloud
    NormalField normals;
    Segmentation segmentation;
    std::vector<GraspHandle> handles;
    StageTimings timings;
};

/// filter -> index -> normals -> grow_regions -> find_handles, with
/// per-stage wall-clock timings (file I/O is the caller's concern).
PipelineResult run_pipeline(const PointCloud& cloud, const PipelineConfig& cfg);

}  // namespace grasp
