#include <chrono>

#include "grasp/pipeline.hpp"

namespace grasp {

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
        .count();
}

}  // namespace

PipelineResult run_pipeline(const PointCloud& cloud, const PipelineConfig& cfg) {
    PipelineResult res;
    auto t = std::chrono::steady_clock::now();
    res.cloud = apply_filters(cloud, cfg.filter);
    res.timings.filter_s = seconds_since(t);

    t = std::chrono::steady_clock::now();
    NeighborIndex idx(res.cloud);
    res.timings.index_s = seconds_since(t);

    t = std::chrono::steady_clock::now();
    res.normals = estimate_normals(res.cloud, idx, cfg.normal_spec());
    res.timings.normals_s = seconds_since(t);

    t = std::chrono::steady_clock::now();
    res.segmentation = grow_regions(res.cloud, res.normals, idx, cfg.seg);
    res.timings.segmentation_s = seconds_since(t);

    t = std::chrono::steady_clock::now();
    res.handles = find_handles(res.segmentation, res.cloud, idx, cfg.gripper);
    res.timings.handles_s = seconds_since(t);
    return res;
}

}  // namespace grasp
