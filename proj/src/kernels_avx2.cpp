#include "grasp/kernels.hpp"

#ifdef GRASP_HAVE_AVX2_BUILD

#include <immintrin.h>

// Compiled with -mavx2 -mfma; only reached after a runtime cpuid check.

namespace grasp::kernels::avx2 {

namespace {

double hsum(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
}

}  // namespace

void squared_distances(const double* xs, const double* ys, const double* zs,
                       std::size_t n, double qx, double qy, double qz,
                       double* out) {
    const __m256d vqx = _mm256_set1_pd(qx);
    const __m256d vqy = _mm256_set1_pd(qy);
    const __m256d vqz = _mm256_set1_pd(qz);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d dx = _mm256_sub_pd(_mm256_loadu_pd(xs + i), vqx);
        const __m256d dy = _mm256_sub_pd(_mm256_loadu_pd(ys + i), vqy);
        const __m256d dz = _mm256_sub_pd(_mm256_loadu_pd(zs + i), vqz);
        __m256d acc = _mm256_mul_pd(dx, dx);
        acc = _mm256_fmadd_pd(dy, dy, acc);
        acc = _mm256_fmadd_pd(dz, dz, acc);
        _mm256_storeu_pd(out + i, acc);
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
    __m256d ax = _mm256_setzero_pd();
    __m256d ay = _mm256_setzero_pd();
    __m256d az = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        ax = _mm256_add_pd(ax, _mm256_loadu_pd(xs + i));
        ay = _mm256_add_pd(ay, _mm256_loadu_pd(ys + i));
        az = _mm256_add_pd(az, _mm256_loadu_pd(zs + i));
    }
    Vec3Sums s;
    s.sx = hsum(ax);
    s.sy = hsum(ay);
    s.sz = hsum(az);
    for (; i < n; ++i) {
        s.sx += xs[i];
        s.sy += ys[i];
        s.sz += zs[i];
    }
    return s;
}

CovMoments cov_moments(const double* xs, const double* ys, const double* zs,
                       std::size_t n) {
    __m256d sx = _mm256_setzero_pd(), sy = _mm256_setzero_pd(),
            sz = _mm256_setzero_pd();
    __m256d sxx = _mm256_setzero_pd(), sxy = _mm256_setzero_pd(),
            sxz = _mm256_setzero_pd();
    __m256d syy = _mm256_setzero_pd(), syz = _mm256_setzero_pd(),
            szz = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d x = _mm256_loadu_pd(xs + i);
        const __m256d y = _mm256_loadu_pd(ys + i);
        const __m256d z = _mm256_loadu_pd(zs + i);
        sx = _mm256_add_pd(sx, x);
        sy = _mm256_add_pd(sy, y);
        sz = _mm256_add_pd(sz, z);
        sxx = _mm256_fmadd_pd(x, x, sxx);
        sxy = _mm256_fmadd_pd(x, y, sxy);
        sxz = _mm256_fmadd_pd(x, z, sxz);
        syy = _mm256_fmadd_pd(y, y, syy);
        syz = _mm256_fmadd_pd(y, z, syz);
        szz = _mm256_fmadd_pd(z, z, szz);
    }
    CovMoments m;
    m.n = n;
    m.sx = hsum(sx);
    m.sy = hsum(sy);
    m.sz = hsum(sz);
    m.sxx = hsum(sxx);
    m.sxy = hsum(sxy);
    m.sxz = hsum(sxz);
    m.syy = hsum(syy);
    m.syz = hsum(syz);
    m.szz = hsum(szz);
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

}  // namespace grasp::kernels::avx2

#endif  // GRASP_HAVE_AVX2_BUILD
