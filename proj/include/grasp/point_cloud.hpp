#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include <Eigen/Core>

namespace grasp {

using Vec3 = Eigen::Vector3d;

/// Single-view point cloud in the sensor frame. Coordinates are stored as
/// structure-of-arrays so the distance kernels can stream over them.
/// Point indices are stable for the lifetime of the cloud; every downstream
/// label and patch refers to these indices.
struct PointCloud {
    std::vector<double> xs, ys, zs;
    std::vector<std::array<std::uint8_t, 3>> colors;  // empty if colorless
    std::uint32_t width = 0;   // organization metadata, 0 if unorganized
    std::uint32_t height = 0;
    Vec3 viewpoint = Vec3::Zero();
    std::size_t dropped_non_finite = 0;  // rows removed at ingest

    std::size_t size() const { return xs.size(); }
    bool empty() const { return xs.empty(); }
    bool has_colors() const { return !colors.empty(); }

    Vec3 point(std::size_t i) const { return {xs[i], ys[i], zs[i]}; }

    void reserve(std::size_t n) {
        xs.reserve(n);
        ys.reserve(n);
        zs.reserve(n);
    }

    void push_back(const Vec3& p) {
        xs.push_back(p.x());
        ys.push_back(p.y());
        zs.push_back(p.z());
    }
};

}  // namespace grasp
