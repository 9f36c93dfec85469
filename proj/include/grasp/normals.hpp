#pragma once

#include <vector>

#include "grasp/kdtree.hpp"
#include "grasp/point_cloud.hpp"

namespace grasp {

/// Neighborhood used for normal estimation: fixed radius or k nearest.
struct NeighborhoodSpec {
    enum class Kind { Radius, KNearest } kind = Kind::Radius;
    double radius = 0.01;
    std::size_t k = 15;

    static NeighborhoodSpec by_radius(double r) { return {Kind::Radius, r, 0}; }
    static NeighborhoodSpec by_k(std::size_t k) {
        return {Kind::KNearest, 0, k};
    }
};

/// Per-point oriented unit normals, indexed like the cloud. Points whose
/// neighborhood is too small or degenerate are marked invalid.
struct NormalField {
    std::vector<Vec3> normals;
    std::vector<char> valid;
    NeighborhoodSpec spec;

    std::size_t size() const { return normals.size(); }
    bool is_valid(std::size_t i) const { return valid[i] != 0; }
};

/// PCA normal per point: eigenvector of the neighborhood covariance with
/// smallest eigenvalue, sign-flipped toward the cloud viewpoint. Fewer than
/// 3 neighbors (or a rank-deficient neighborhood) marks the point invalid.
NormalField estimate_normals(const PointCloud& cloud, const NeighborIndex& idx,
                             const NeighborhoodSpec& spec);

/// Angle in [0, pi] between two unit vectors; dot is clamped before acos.
double angle_between(const Vec3& a, const Vec3& b);

}  // namespace grasp
