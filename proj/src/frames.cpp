#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/Geometry>

#include "grasp/frames.hpp"
#include "grasp/kernels.hpp"

namespace grasp {

SegmentFrame segment_frame(const std::vector<std::uint32_t>& members,
                           const PointCloud& cloud, const Vec3& viewpoint) {
    if (members.size() < 3)
        throw FrameError("segment_frame: fewer than 3 points");
    std::vector<double> xs, ys, zs;
    xs.reserve(members.size());
    ys.reserve(members.size());
    zs.reserve(members.size());
    for (std::uint32_t i : members) {
        xs.push_back(cloud.xs[i]);
        ys.push_back(cloud.ys[i]);
        zs.push_back(cloud.zs[i]);
    }
    const auto m = kernels::cov_moments(xs.data(), ys.data(), zs.data(), xs.size());
    const double inv = 1.0 / static_cast<double>(m.n);
    const Vec3 centroid{m.sx * inv, m.sy * inv, m.sz * inv};
    Eigen::Matrix3d cov;
    cov << m.sxx * inv - centroid.x() * centroid.x(),
           m.sxy * inv - centroid.x() * centroid.y(),
           m.sxz * inv - centroid.x() * centroid.z(),
           m.sxy * inv - centroid.x() * centroid.y(),
           m.syy * inv - centroid.y() * centroid.y(),
           m.syz * inv - centroid.y() * centroid.z(),
           m.sxz * inv - centroid.x() * centroid.z(),
           m.syz * inv - centroid.y() * centroid.z(),
           m.szz * inv - centroid.z() * centroid.z();
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> eig(cov);
    const auto& evals = eig.eigenvalues();  // ascending
    const double scale = std::max(evals[2], 1e-300);
    if (evals[1] / scale < 1e-9)
        throw FrameError("segment_frame: degenerate (collinear) segment");

    SegmentFrame frame;
    frame.centroid = centroid;
    Vec3 n = eig.eigenvectors().col(0);   // smallest: surface normal
    Vec3 f = eig.eigenvectors().col(1);   // middle: minor axis
    if (n.dot(viewpoint - centroid) < 0) n = -n;
    frame.n = n.normalized();
    frame.f = f.normalized();
    frame.a = frame.n.cross(frame.f);  // right-handed: f x a = n

    double max_a = 0, max_f = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const Vec3 d = Vec3{xs[i], ys[i], zs[i]} - centroid;
        max_a = std::max(max_a, std::abs(d.dot(frame.a)));
        max_f = std::max(max_f, std::abs(d.dot(frame.f)));
    }
    frame.extent_a = 2 * max_a;
    frame.extent_f = 2 * max_f;
    return frame;
}

Vec3 project_to_frame(const Vec3& p, const SegmentFrame& frame,
                      const Vec3& center) {
    const Vec3 d = p - center;
    return {d.dot(frame.f), d.dot(frame.a), d.dot(frame.n)};
}

Vec3 pose_angles(const SegmentFrame& frame) {
    const Eigen::Matrix3d r = frame.rotation();
    const double sy = -r(2, 0);
    if (std::abs(sy) > 1.0 - 1e-8) {
        // gimbal lock: fold everything into theta_z, theta_x = 0
        const double theta_y = sy > 0 ? M_PI / 2 : -M_PI / 2;
        const double theta_z = std::atan2(-r(0, 1), r(1, 1));
        return {0.0, theta_y, theta_z};
    }
    return {std::atan2(r(2, 1), r(2, 2)), std::asin(sy),
            std::atan2(r(1, 0), r(0, 0))};
}

Eigen::Matrix3d rotation_from_angles(const Vec3& angles) {
    const Eigen::AngleAxisd rx(angles.x(), Vec3::UnitX());
    const Eigen::AngleAxisd ry(angles.y(), Vec3::UnitY());
    const Eigen::AngleAxisd rz(angles.z(), Vec3::UnitZ());
    return (rz * ry * rx).toRotationMatrix();
}

}  // namespace grasp
