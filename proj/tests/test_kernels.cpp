#include <random>
#include <vector>

#include <doctest.h>

#include "grasp/kernels.hpp"

using namespace grasp;

namespace {

struct RandomArrays {
    std::vector<double> xs, ys, zs;
    explicit RandomArrays(std::size_t n, std::uint64_t seed) {
        std::mt19937_64 rng(seed);
        std::uniform_real_distribution<double> u(-5.0, 5.0);
        for (std::size_t i = 0; i < n; ++i) {
            xs.push_back(u(rng));
            ys.push_back(u(rng));
            zs.push_back(u(rng));
        }
    }
};

}  // namespace

TEST_CASE("dispatched squared_distances matches scalar reference") {
    // odd sizes exercise the vector tail
    for (std::size_t n : {0u, 1u, 3u, 4u, 7u, 64u, 1001u}) {
        RandomArrays a(n, 100 + n);
        std::vector<double> ref(n), got(n);
        kernels::scalar::squared_distances(a.xs.data(), a.ys.data(), a.zs.data(),
                                           n, 0.3, -1.2, 2.5, ref.data());
        kernels::squared_distances(a.xs.data(), a.ys.data(), a.zs.data(), n,
                                   0.3, -1.2, 2.5, got.data());
        for (std::size_t i = 0; i < n; ++i)
            CHECK(got[i] == doctest::Approx(ref[i]).epsilon(1e-14));
    }
}

TEST_CASE("dispatched sums match scalar reference") {
    for (std::size_t n : {1u, 5u, 128u, 999u}) {
        RandomArrays a(n, 200 + n);
        const auto ref = kernels::scalar::sums(a.xs.data(), a.ys.data(), a.zs.data(), n);
        const auto got = kernels::sums(a.xs.data(), a.ys.data(), a.zs.data(), n);
        CHECK(got.sx == doctest::Approx(ref.sx).epsilon(1e-12));
        CHECK(got.sy == doctest::Approx(ref.sy).epsilon(1e-12));
        CHECK(got.sz == doctest::Approx(ref.sz).epsilon(1e-12));
    }
}

TEST_CASE("dispatched cov_moments match scalar reference") {
    for (std::size_t n : {3u, 17u, 4096u}) {
        RandomArrays a(n, 300 + n);
        const auto ref = kernels::scalar::cov_moments(a.xs.data(), a.ys.data(),
                                                      a.zs.data(), n);
        const auto got =
            kernels::cov_moments(a.xs.data(), a.ys.data(), a.zs.data(), n);
        CHECK(got.n == ref.n);
        CHECK(got.sxx == doctest::Approx(ref.sxx).epsilon(1e-12));
        CHECK(got.sxy == doctest::Approx(ref.sxy).epsilon(1e-12));
        CHECK(got.sxz == doctest::Approx(ref.sxz).epsilon(1e-12));
        CHECK(got.syy == doctest::Approx(ref.syy).epsilon(1e-12));
        CHECK(got.syz == doctest::Approx(ref.syz).epsilon(1e-12));
        CHECK(got.szz == doctest::Approx(ref.szz).epsilon(1e-12));
    }
}

TEST_CASE("a backend was selected") {
    const auto name = kernels::active_backend();
    CHECK((name == "scalar" || name == "avx2" || name == "neon"));
    MESSAGE("active kernel backend: ", std::string(name));
}
