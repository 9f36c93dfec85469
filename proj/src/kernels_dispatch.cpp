#include "grasp/kernels.hpp"

namespace grasp::kernels {

namespace {

enum class Backend { Scalar, Avx2, Neon };

Backend detect() {
#if defined(GRASP_HAVE_AVX2_BUILD)
    if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma"))
        return Backend::Avx2;
#endif
#if defined(GRASP_HAVE_NEON_BUILD)
    return Backend::Neon;  // NEON is baseline on aarch64
#endif
    return Backend::Scalar;
}

const Backend g_backend = detect();

}  // namespace

const SquaredDistancesFn squared_distances = [] {
    switch (g_backend) {
#if defined(GRASP_HAVE_AVX2_BUILD)
        case Backend::Avx2:
            return &avx2::squared_distances;
#endif
#if defined(GRASP_HAVE_NEON_BUILD)
        case Backend::Neon:
            return &neon::squared_distances;
#endif
        default:
            return &scalar::squared_distances;
    }
}();

const SumsFn sums = [] {
    switch (g_backend) {
#if defined(GRASP_HAVE_AVX2_BUILD)
        case Backend::Avx2:
            return &avx2::sums;
#endif
#if defined(GRASP_HAVE_NEON_BUILD)
        case Backend::Neon:
            return &neon::sums;
#endif
        default:
            return &scalar::sums;
    }
}();

const CovMomentsFn cov_moments = [] {
    switch (g_backend) {
#if defined(GRASP_HAVE_AVX2_BUILD)
        case Backend::Avx2:
            return &avx2::cov_moments;
#endif
#if defined(GRASP_HAVE_NEON_BUILD)
        case Backend::Neon:
            return &neon::cov_moments;
#endif
        default:
            return &scalar::cov_moments;
    }
}();

std::string_view active_backend() {
    switch (g_backend) {
        case Backend::Avx2:
            return "avx2";
        case Backend::Neon:
            return "neon";
        default:
            return "scalar";
    }
}

}  // namespace grasp::kernels
