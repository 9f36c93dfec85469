#pragma once

#include <cstddef>
#include <string_view>

// Data-parallel inner loops shared by the neighbor index, the filters and
// normal estimation. Every kernel has a scalar reference implementation and
// may have SIMD variants (AVX2 on x86-64, NEON on arm64) selected once at
// startup from CPU capabilities. Variants are bit-equivalent for the
// reductions used here only up to reassociation, so callers must not depend
// on a particular summation order; the equivalence tests pin the tolerance.

namespace grasp::kernels {

struct Vec3Sums {
    double sx = 0, sy = 0, sz = 0;
};

/// Upper triangle of sum_i (p_i * p_i^T) plus the coordinate sums, over a
/// contiguous range. Enough to build a 3x3 covariance in one pass.
struct CovMoments {
    double sx = 0, sy = 0, sz = 0;
    double sxx = 0, sxy = 0, sxz = 0;
    double syy = 0, syz = 0, szz = 0;
    std::size_t n = 0;
};

using SquaredDistancesFn = void (*)(const double* xs, const double* ys,
                                    const double* zs, std::size_t n, double qx,
                                    double qy, double qz, double* out);
using SumsFn = Vec3Sums (*)(const double* xs, const double* ys,
                            const double* zs, std::size_t n);
using CovMomentsFn = CovMoments (*)(const double* xs, const double* ys,
                                    const double* zs, std::size_t n);

namespace scalar {
void squared_distances(const double* xs, const double* ys, const double* zs,
                       std::size_t n, double qx, double qy, double qz,
                       double* out);
Vec3Sums sums(const double* xs, const double* ys, const double* zs,
              std::size_t n);
CovMoments cov_moments(const double* xs, const double* ys, const double* zs,
                       std::size_t n);
}  // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
#define GRASP_HAVE_AVX2_BUILD 1
namespace avx2 {
void squared_distances(const double* xs, const double* ys, const double* zs,
                       std::size_t n, double qx, double qy, double qz,
                       double* out);
Vec3Sums sums(const double* xs, const double* ys, const double* zs,
              std::size_t n);
CovMoments cov_moments(const double* xs, const double* ys, const double* zs,
                       std::size_t n);
}  // namespace avx2
#endif

#if defined(__aarch64__) || defined(__ARM_NEON)
#define GRASP_HAVE_NEON_BUILD 1
namespace neon {
void squared_distances(const double* xs, const double* ys, const double* zs,
                       std::size_t n, double qx, double qy, double qz,
                       double* out);
Vec3Sums sums(const double* xs, const double* ys, const double* zs,
              std::size_t n);
CovMoments cov_moments(const double* xs, const double* ys, const double* zs,
                       std::size_t n);
}  // namespace neon
#endif

/// Active variants, resolved from CPU capabilities on first use.
extern const SquaredDistancesFn squared_distances;
extern const SumsFn sums;
extern const CovMomentsFn cov_moments;

/// Name of the selected backend: "scalar", "avx2" or "neon".
std::string_view active_backend();

}  // namespace grasp::kernels
