#include "grasp/kernels.hpp"

#ifdef GRASP_HAVE_NEON_BUILD

#include <arm_neon.h>

namespace grasp::kernels::neon {

void squared_distances(const double* xs, const double* ys, const double* zs,
                       std::size_t n, double qx, double qy, double qz,
                       double* out) {
    const float64x2_t vqx = vdupq_n_f64(qx);
    const float64x2_t vqy = vdupq_n_f64(qy);
    const float64x2_t vqz = vdupq_n_f64(qz);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const float64x2_t dx = vsubq_f64(vld1q_f64(xs + i), vqx);
        const float64x2_t dy = vsubq_f64(vld1q_f64(ys + i), vqy);
        const float64x2_t dz = vsubq_f64(vld1q_f64(zs + i), vqz);
        float64x2_t acc = vmulq_f64(dx, dx);
        acc = vfmaq_f64(acc, dy, dy);
        acc = vfmaq_f64(acc, dz, dz);
        vst1q_f64(out + i, acc);
    }
    for (; i < n; ++i) {
        const double dx = xs[i] - qx;
        const double dy = ys[i] - qy;
        const double dz = zs[i] - qz;
        out[i] = dx * dx + dy * dy + dz * dz;
    }
}

Vec3Sums sums(const double* xs, const double* ys, const double* zs,
              std::size_t n) {
    float64x2_t ax = vdupq_n_f64(0), ay = vdupq_n_f64(0), az = vdupq_n_f64(0);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        ax = vaddq_f64(ax, vld1q_f64(xs + i));
        ay = vaddq_f64(ay, vld1q_f64(ys + i));
        az = vaddq_f64(az, vld1q_f64(zs + i));
    }
    Vec3Sums s;
    s.sx = vaddvq_f64(ax);
    s.sy = vaddvq_f64(ay);
    s.sz = vaddvq_f64(az);
    for (; i < n; ++i) {
        s.sx += xs[i];
        s.sy += ys[i];
        s.sz += zs[i];
    }
    return s;
}

CovMoments cov_moments(const double* xs, const double* ys, const double* zs,
                       std::size_t n) {
    float64x2_t sx = vdupq_n_f64(0), sy = vdupq_n_f64(0), sz = vdupq_n_f64(0);
    float64x2_t sxx = vdupq_n_f64(0), sxy = vdupq_n_f64(0),
                sxz = vdupq_n_f64(0);
    float64x2_t syy = vdupq_n_f64(0), syz = vdupq_n_f64(0),
                szz = vdupq_n_f64(0);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const float64x2_t x = vld1q_f64(xs + i);
        const float64x2_t y = vld1q_f64(ys + i);
        const float64x2_t z = vld1q_f64(zs + i);
        sx = vaddq_f64(sx, x);
        sy = vaddq_f64(sy, y);
        sz = vaddq_f64(sz, z);
        sxx = vfmaq_f64(sxx, x, x);
        sxy = vfmaq_f64(sxy, x, y);
        sxz = vfmaq_f64(sxz, x, z);
        syy = vfmaq_f64(syy, y, y);
        syz = vfmaq_f64(syz, y, z);
        szz = vfmaq_f64(szz, z, z);
    }
    CovMoments m;
    m.n = n;
    m.sx = vaddvq_f64(sx);
    m.sy = vaddvq_f64(sy);
    m.sz = vaddvq_f64(sz);
    m.sxx = vaddvq_f64(sxx);
    m.sxy = vaddvq_f64(sxy);
    m.sxz = vaddvq_f64(sxz);
    m.syy = vaddvq_f64(syy);
    m.syz = vaddvq_f64(syz);
    m.szz = vaddvq_f64(szz);
    for (; i < n; ++i) {
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

}  // namespace grasp::kernels::neon

#endif  // GRASP_HAVE_NEON_BUILD
