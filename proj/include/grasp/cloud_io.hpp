#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>

#include "grasp/point_cloud.hpp"
#include "grasp/segmentation.hpp"

namespace grasp {

struct GraspHandle;

struct PcdParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// PCD v0.7 reader, ASCII and uncompressed binary, FIELDS any superset of
/// {x,y,z}. Non-finite rows are dropped at ingest and counted. Compressed
/// PCD is rejected with an unsupported-format error.
PointCloud load_pcd(const std::filesystem::path& path);

/// ASCII PCD writer (x y z, plus rgb when the cloud has colors).
void save_pcd(const PointCloud& cloud, const std::filesystem::path& path);

/// ASCII PLY with per-vertex color: a distinct color per segment label, a
/// reserved color for edge points and for handle patches. Each handle also
/// contributes an oriented frame glyph of 3 short axis segments (6 vertices,
/// 3 edge elements).
void export_ply(const PointCloud& cloud, const Segmentation* labels,
                const std::vector<GraspHandle>* handles,
                const std::filesystem::path& path);

/// Minimal ASCII PLY reader for round-trip checks (vertices only).
PointCloud load_ply_vertices(const std::filesystem::path& path);

struct CloudFilterConfig {
    double voxel_leaf = 0;        // meters, 0 disables
    double smoothing_radius = 0;  // meters, 0 disables
};

/// One point per occupied voxel, at the centroid of that voxel's points.
PointCloud voxel_downsample(const PointCloud& cloud, double leaf);

/// Each point replaced by the mean of its radius neighborhood. Count and
/// index order unchanged.
PointCloud smooth(const PointCloud& cloud, double radius);

/// Applies the enabled filters in order: voxel grid, then smoothing.
PointCloud apply_filters(const PointCloud& cloud, const CloudFilterConfig& cfg);

}  // namespace grasp
