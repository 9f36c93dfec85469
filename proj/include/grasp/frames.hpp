#pragma once

#include <vector>

#include <Eigen/Core>

#include "grasp/point_cloud.hpp"

namespace grasp {

struct FrameError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// PCA frame of a surface segment: minor axis f, major axis a, outward
/// normal n. Orthonormal, right-handed (f x a = n), n oriented toward the
/// sensor viewpoint.
struct SegmentFrame {
    Vec3 centroid = Vec3::Zero();
    Vec3 f = Vec3::UnitX();  // minor axis (gripper closing direction)
    Vec3 a = Vec3::UnitY();  // major axis
    Vec3 n = Vec3::UnitZ();  // surface normal
    double extent_a = 0;     // full extent along a, meters
    double extent_f = 0;     // full extent along f, meters

    Eigen::Matrix3d rotation() const {
        Eigen::Matrix3d r;
        r.col(0) = f;
        r.col(1) = a;
        r.col(2) = n;
        return r;
    }
};

/// Builds the segment frame from member points. Throws FrameError on
/// degenerate (collinear) segments or fewer than 3 points.
SegmentFrame segment_frame(const std::vector<std::uint32_t>& members,
                           const PointCloud& cloud, const Vec3& viewpoint);

/// Coordinates of a point in the frame axes about `center`: (f, a, n).
Vec3 project_to_frame(const Vec3& p, const SegmentFrame& frame,
                      const Vec3& center);

/// Extrinsic X-Y-Z rotation angles of the frame rotation matrix
/// (columns [f a n]); gimbal lock resolved with theta_x = 0.
Vec3 pose_angles(const SegmentFrame& frame);

/// Rebuilds the rotation matrix from extrinsic X-Y-Z angles (Rz*Ry*Rx).
Eigen::Matrix3d rotation_from_angles(const Vec3& angles);

}  // namespace grasp
