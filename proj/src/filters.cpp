#include <cmath>
#include <map>
#include <stdexcept>

#include "grasp/cloud_io.hpp"
#include "grasp/handles.hpp"
#include "grasp/kdtree.hpp"
#include "grasp/kernels.hpp"

namespace grasp {

PointCloud voxel_downsample(const PointCloud& cloud, double leaf) {
    if (leaf <= 0) throw std::invalid_argument("voxel_downsample: leaf must be > 0");
    struct Acc {
        double x = 0, y = 0, z = 0;
        std::size_t n = 0;
    };
    // ordered map keeps the output deterministic for a given cloud
    std::map<std::tuple<std::int64_t, std::int64_t, std::int64_t>, Acc> grid;
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        const auto key = std::make_tuple(
            static_cast<std::int64_t>(std::floor(cloud.xs[i] / leaf)),
            static_cast<std::int64_t>(std::floor(cloud.ys[i] / leaf)),
            static_cast<std::int64_t>(std::floor(cloud.zs[i] / leaf)));
        Acc& a = grid[key];
        a.x += cloud.xs[i];
        a.y += cloud.ys[i];
        a.z += cloud.zs[i];
        ++a.n;
    }
    PointCloud out;
    out.viewpoint = cloud.viewpoint;
    out.reserve(grid.size());
    for (const auto& [key, a] : grid)
        out.push_back({a.x / a.n, a.y / a.n, a.z / a.n});
    out.width = static_cast<std::uint32_t>(out.size());
    out.height = out.empty() ? 0 : 1;
    return out;
}

PointCloud smooth(const PointCloud& cloud, double radius) {
    if (radius <= 0) throw std::invalid_argument("smooth: radius must be > 0");
    PointCloud out;
    out.viewpoint = cloud.viewpoint;
    out.colors = cloud.colors;
    out.width = cloud.width;
    out.height = cloud.height;
    out.dropped_non_finite = cloud.dropped_non_finite;
    if (cloud.empty()) return out;
    out.reserve(cloud.size());
    NeighborIndex idx(cloud);
    std::vector<double> nx, ny, nz;
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        const auto nb = idx.radius_neighbors(cloud.point(i), radius);
        nx.clear();
        ny.clear();
        nz.clear();
        for (std::uint32_t j : nb) {
            nx.push_back(cloud.xs[j]);
            ny.push_back(cloud.ys[j]);
            nz.push_back(cloud.zs[j]);
        }
        const auto s = kernels::sums(nx.data(), ny.data(), nz.data(), nx.size());
        const double inv = 1.0 / static_cast<double>(nx.size());
        out.push_back({s.sx * inv, s.sy * inv, s.sz * inv});
    }
    return out;
}

PointCloud apply_filters(const PointCloud& cloud, const CloudFilterConfig& cfg) {
    if (cfg.voxel_leaf < 0 || cfg.smoothing_radius < 0)
        throw std::invalid_argument("filter config: lengths must be >= 0");
    PointCloud out = cloud;
    if (cfg.voxel_leaf > 0) out = voxel_downsample(out, cfg.voxel_leaf);
    if (cfg.smoothing_radius > 0) out = smooth(out, cfg.smoothing_radius);
    return out;
}

}  // namespace grasp
