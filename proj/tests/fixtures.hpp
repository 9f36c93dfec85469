#pragma once

// Shared synthetic fixtures for the unit and acceptance suites.

#include <random>

#include "grasp/normals.hpp"
#include "grasp/point_cloud.hpp"
#include "grasp/synth.hpp"

namespace grasp::testing {

/// Regular grid on the plane z = 0, centered at the origin, with optional
/// Gaussian z-noise. Viewpoint above the plane.
inline PointCloud make_plane(double side, double pitch, double z_sigma = 0,
                             std::uint64_t seed = 7) {
    PointCloud cloud;
    cloud.viewpoint = {0, 0, 1.0};
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> noise(0.0, z_sigma);
    const int half = static_cast<int>(side / (2 * pitch));
    for (int i = -half; i <= half; ++i)
        for (int j = -half; j <= half; ++j)
            cloud.push_back({i * pitch, j * pitch,
                             z_sigma > 0 ? noise(rng) : 0.0});
    cloud.width = static_cast<std::uint32_t>(cloud.size());
    cloud.height = 1;
    return cloud;
}

/// Axis-aligned cuboid corner at the origin with the three faces x=sx, y=sy,
/// z=sz sampled (the ones visible from a sensor in the (+,+,+) octant).
/// Returns the cloud plus, per point, which face it came from (0,1,2) — the
/// ground truth for the three-face fixture.
struct CuboidFixture {
    PointCloud cloud;
    std::vector<int> face;
    Vec3 dims;
};

inline CuboidFixture make_cuboid_three_faces(const Vec3& dims, double pitch,
                                             double noise_sigma = 0,
                                             std::uint64_t seed = 11) {
    CuboidFixture fix;
    fix.dims = dims;
    fix.cloud.viewpoint = dims + Vec3{0.5, 0.5, 0.5};
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> noise(0.0, noise_sigma);
    auto jitter = [&](Vec3 p) {
        if (noise_sigma > 0) p += Vec3{noise(rng), noise(rng), noise(rng)};
        return p;
    };
    const auto nx = static_cast<int>(dims.x() / pitch);
    const auto ny = static_cast<int>(dims.y() / pitch);
    const auto nz = static_cast<int>(dims.z() / pitch);
    for (int j = 0; j <= ny; ++j)  // face x = sx
        for (int k = 0; k <= nz; ++k) {
            fix.cloud.push_back(jitter({dims.x(), j * pitch, k * pitch}));
            fix.face.push_back(0);
        }
    for (int i = 0; i <= nx; ++i)  // face y = sy
        for (int k = 0; k <= nz; ++k) {
            fix.cloud.push_back(jitter({i * pitch, dims.y(), k * pitch}));
            fix.face.push_back(1);
        }
    for (int i = 0; i <= nx; ++i)  // face z = sz
        for (int j = 0; j <= ny; ++j) {
            fix.cloud.push_back(jitter({i * pitch, j * pitch, dims.z()}));
            fix.face.push_back(2);
        }
    fix.cloud.width = static_cast<std::uint32_t>(fix.cloud.size());
    fix.cloud.height = 1;
    return fix;
}

/// Uniform random points in a box, for oracle-parity tests.
inline PointCloud make_random_cloud(std::size_t n, double side,
                                    std::uint64_t seed) {
    PointCloud cloud;
    cloud.viewpoint = {0, 0, 1.0};
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-side / 2, side / 2);
    for (std::size_t i = 0; i < n; ++i)
        cloud.push_back({u(rng), u(rng), u(rng)});
    cloud.width = static_cast<std::uint32_t>(n);
    cloud.height = 1;
    return cloud;
}

/// Random unit normals, all marked valid — exercises every region-growing
/// branch without depending on normal estimation.
inline NormalField make_random_normals(std::size_t n, std::uint64_t seed) {
    NormalField field;
    field.normals.resize(n);
    field.valid.assign(n, 1);
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g(0.0, 1.0);
    for (std::size_t i = 0; i < n; ++i) {
        Vec3 v{g(rng), g(rng), g(rng)};
        if (v.norm() < 1e-9) v = Vec3::UnitZ();
        field.normals[i] = v.normalized();
    }
    return field;
}

}  // namespace grasp::testing
