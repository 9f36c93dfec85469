#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "grasp/kernels.hpp"
#include "grasp/normals.hpp"

namespace grasp {

double angle_between(const Vec3& a, const Vec3& b) {
    return std::acos(std::clamp(a.dot(b), -1.0, 1.0));
}

NormalField estimate_normals(const PointCloud& cloud, const NeighborIndex& idx,
                             const NeighborhoodSpec& spec) {
    if (spec.kind == NeighborhoodSpec::Kind::Radius && spec.radius <= 0)
        throw std::invalid_argument("estimate_normals: radius must be > 0");
    if (spec.kind == NeighborhoodSpec::Kind::KNearest && spec.k < 3)
        throw std::invalid_argument("estimate_normals: k must be >= 3");

    NormalField field;
    field.spec = spec;
    field.normals.assign(cloud.size(), Vec3::Zero());
    field.valid.assign(cloud.size(), 0);

    std::vector<double> nx, ny, nz;
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        const Vec3 p = cloud.point(i);
        const auto nb = spec.kind == NeighborhoodSpec::Kind::Radius
                            ? idx.radius_neighbors(p, spec.radius)
                            : idx.k_nearest(p, spec.k);
        if (nb.size() < 3) continue;
        nx.clear();
        ny.clear();
        nz.clear();
        for (std::uint32_t j : nb) {
            nx.push_back(cloud.xs[j]);
            ny.push_back(cloud.ys[j]);
            nz.push_back(cloud.zs[j]);
        }
        const auto m = kernels::cov_moments(nx.data(), ny.data(), nz.data(), nx.size());
        const double inv = 1.0 / static_cast<double>(m.n);
        const double mx = m.sx * inv, my = m.sy * inv, mz = m.sz * inv;
        Eigen::Matrix3d cov;
        cov << m.sxx * inv - mx * mx, m.sxy * inv - mx * my, m.sxz * inv - mx * mz,
               m.sxy * inv - mx * my, m.syy * inv - my * my, m.syz * inv - my * mz,
               m.sxz * inv - mx * mz, m.syz * inv - my * mz, m.szz * inv - mz * mz;
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> eig(cov);
        // eigenvalues ascending; rank-deficient (collinear) neighborhoods
        // have the two smallest eigenvalues both ~0
        const auto& evals = eig.eigenvalues();
        const double scale = std::max(evals[2], 1e-300);
        if (evals[1] / scale < 1e-9) continue;  // collinear, no plane defined
        Vec3 normal = eig.eigenvectors().col(0);
        const Vec3 toward = cloud.viewpoint - p;
        if (normal.dot(toward) < 0) normal = -normal;
        field.normals[i] = normal.normalized();
        field.valid[i] = 1;
    }
    return field;
}

}  // namespace grasp
