#include "grasp/kernels.hpp"

namespace grasp::kernels::scalar {

void squared_distances(const double* xs, const double* ys, const double* zs,
                       std::size_t n, double qx, double qy, double qz,
                       double* out) {
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = xs[i] - qx;
        const double dy = ys[i] - qy;
        const double dz = zs[i] - qz;
        out[i] = dx * dx + dy * dy + dz * dz;
    }
}

Vec3Sums sums(const double* xs, const double* ys, const double* zs,
              std::size_t n) {
    Vec3Sums s;
    for (std::size_t i = 0; i < n; ++i) {
        s.sx += xs[i];
        s.sy += ys[i];
        s.sz += zs[i];
    }
    return s;
}

CovMoments cov_moments(const double* xs, const double* ys, const double* zs,
                       std::size_t n) {
    CovMoments m;
    m.n = n;
    for (std::size_t i = 0; i < n; ++i) {
        const double x = xs[i], y = ys[i], z = zs[i];
        m.sx += x;
        m.sy += y;
        m.sz += z;
        m.sxx += x * x;
        m.sxy += x * y;
        m.sxz += x * z;
        m.syy += y * y;
        m.syz += y * z;
        m.szz += z * z;
    }
    return m;
}

}  // namespace grasp::kernels::scalar
