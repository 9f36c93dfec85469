#include <algorithm>
#include <map>
#include <random>

#include <doctest.h>

#include "grasp/pipeline.hpp"
#include "grasp/segmentation.hpp"
#include "fixtures.hpp"
#include "reference_impl.hpp"

using namespace grasp;
using namespace grasp::testing;

namespace {

SegmentationConfig small_cfg() {
    SegmentationConfig cfg;
    cfg.radius_r = 0.06;
    cfg.min_segment_size = 5;
    return cfg;
}

// dual-threshold defaults used by the cuboid fixture
SegmentationConfig cuboid_cfg() {
    SegmentationConfig cfg;
    cfg.theta_low = 8.0 * M_PI / 180;
    cfg.theta_high = 30.0 * M_PI / 180;
    cfg.edge_ratio_k = 0.4;
    cfg.radius_r = 0.01;
    cfg.min_segment_size = 50;
    return cfg;
}

}  // namespace

TEST_CASE("config validation") {
    SegmentationConfig cfg;
    CHECK_NOTHROW(cfg.validate());
    cfg.theta_low = cfg.theta_high;  // single-threshold degenerate mode
    CHECK_NOTHROW(cfg.validate());
    cfg.theta_low = cfg.theta_high + 0.1;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = SegmentationConfig{};
    cfg.edge_ratio_k = 1.0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

TEST_CASE("edge-point test: flat plane interior is not an edge") {
    const auto cloud = make_plane(0.1, 0.005);
    NeighborIndex idx(cloud);
    const auto normals =
        estimate_normals(cloud, idx, NeighborhoodSpec::by_radius(0.02));
    const auto center = static_cast<std::uint32_t>(cloud.size() / 2);
    const auto nb = idx.radius_neighbors(cloud.point(center), 0.02);
    const auto check = is_edge_point(center, nb, normals, cuboid_cfg());
    CHECK_FALSE(check.is_edge);
    CHECK(check.ratio == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("edge-point test: two-plane 90-degree neighborhood") {
    // seed on a fold between two equally sampled faces, theta_high = 45 deg
    PointCloud cloud;
    cloud.viewpoint = {1, 0, 1};
    NormalField normals;
    // seed 0 with normal = +z; half the neighbors share it, half are +x
    cloud.push_back({0, 0, 0});
    for (int i = 0; i < 10; ++i) cloud.push_back({0.001 * (i + 1), 0.001, 0});
    normals.normals.assign(cloud.size(), Vec3::UnitZ());
    for (std::size_t i = 6; i <= 10; ++i) normals.normals[i] = Vec3::UnitX();
    normals.valid.assign(cloud.size(), 1);

    SegmentationConfig cfg;
    cfg.theta_high = 45.0 * M_PI / 180;
    cfg.edge_ratio_k = 0.4;
    std::vector<std::uint32_t> nb(cloud.size());
    std::iota(nb.begin(), nb.end(), 0);
    const auto check = is_edge_point(0, nb, normals, cfg);
    CHECK(check.ratio == doctest::Approx(0.5));
    CHECK(check.is_edge);
}

TEST_CASE("edge ratio strictly above k is required") {
    // m = 10 neighbors, exactly ceil(0.4 * m) = 4 exceed theta_high: 0.4 > 0.4
    // is false
    PointCloud cloud;
    NormalField normals;
    cloud.push_back({0, 0, 0});
    for (int i = 0; i < 10; ++i) cloud.push_back({0.001 * (i + 1), 0, 0});
    normals.normals.assign(cloud.size(), Vec3::UnitZ());
    for (std::size_t i = 7; i <= 10; ++i) normals.normals[i] = Vec3::UnitX();
    normals.valid.assign(cloud.size(), 1);
    SegmentationConfig cfg;
    cfg.edge_ratio_k = 0.4;
    std::vector<std::uint32_t> nb(cloud.size());
    std::iota(nb.begin(), nb.end(), 0);
    const auto check = is_edge_point(0, nb, normals, cfg);
    CHECK(check.ratio == doctest::Approx(0.4));
    CHECK_FALSE(check.is_edge);
}

TEST_CASE("zero valid neighbors is degenerate, not an edge") {
    PointCloud cloud;
    cloud.push_back({0, 0, 0});
    NormalField normals;
    normals.normals.assign(1, Vec3::UnitZ());
    normals.valid.assign(1, 1);
    const auto check =
        is_edge_point(0, {0}, normals, SegmentationConfig{});
    CHECK(check.degenerate);
    CHECK_FALSE(check.is_edge);
    CHECK(check.ratio == 0);
}

TEST_CASE("seed_order filters by label and validity, ascending") {
    NormalField normals;
    normals.normals.assign(5, Vec3::UnitZ());
    normals.valid = {1, 0, 1, 1, 1};
    std::vector<std::uint32_t> labels{kUnlabeled, kUnlabeled, 3, kUnlabeled,
                                      kUnlabeled};
    CHECK(seed_order(normals, labels) == std::vector<std::uint32_t>{0, 3, 4});
    labels.assign(5, 1);
    CHECK(seed_order(normals, labels).empty());
}

TEST_CASE("single plane grows one segment covering nearly all points") {
    const auto cloud = make_plane(0.25, 0.005, 1e-4);  // ~2500 points
    NeighborIndex idx(cloud);
    const auto normals =
        estimate_normals(cloud, idx, NeighborhoodSpec::by_radius(0.01));
    const auto seg = grow_regions(cloud, normals, idx, cuboid_cfg());
    REQUIRE(seg.segments.size() == 1);
    CHECK(double(seg.segments[0].size()) > 0.99 * double(cloud.size()));
}

TEST_CASE("cuboid: dual thresholds separate the three visible faces") {
    const auto fix = make_cuboid_three_faces({0.08, 0.1, 0.06}, 0.002, 2.5e-4);
    NeighborIndex idx(fix.cloud);
    const auto normals =
        estimate_normals(fix.cloud, idx, NeighborhoodSpec::by_radius(0.005));
    const auto seg = grow_regions(fix.cloud, normals, idx, cuboid_cfg());
    CHECK(seg.segments.size() == 3);
    // each segment should be dominated by a single ground-truth face; the
    // ~1 cm fold strip is absorbed by whichever face reaches it first
    for (const auto& record : seg.segments) {
        std::map<int, std::size_t> votes;
        for (auto i : record.members) ++votes[fix.face[i]];
        std::size_t best = 0;
        for (auto& [f, c] : votes) best = std::max(best, c);
        CHECK(double(best) > 0.85 * double(record.size()));
    }
}

TEST_CASE("cuboid: single high threshold merges faces") {
    const auto fix = make_cuboid_three_faces({0.08, 0.1, 0.06}, 0.002, 2.5e-4);
    NeighborIndex idx(fix.cloud);
    const auto normals =
        estimate_normals(fix.cloud, idx, NeighborhoodSpec::by_radius(0.005));
    auto cfg = cuboid_cfg();
    cfg.theta_low = cfg.theta_high;  // classic region growing, high cutoff
    const auto seg = grow_regions(fix.cloud, normals, idx, cfg);
    CHECK(seg.segments.size() < 3);
}

TEST_CASE("oracle parity: grow_regions matches the naive reference") {
    for (int trial = 0; trial < 5; ++trial) {
        const auto cloud = make_random_cloud(400, 0.4, 9000 + trial);
        const auto normals = make_random_normals(cloud.size(), 500 + trial);
        NeighborIndex idx(cloud);
        const auto cfg = small_cfg();
        const auto got = grow_regions(cloud, normals, idx, cfg);
        const auto want = reference_grow_regions(cloud, normals, cfg);
        REQUIRE(got.labels == want);
    }
}

TEST_CASE("determinism: identical inputs give identical labels") {
    const auto cloud = make_random_cloud(600, 0.4, 321);
    const auto normals = make_random_normals(cloud.size(), 321);
    NeighborIndex idx(cloud);
    const auto a = grow_regions(cloud, normals, idx, small_cfg());
    const auto b = grow_regions(cloud, normals, idx, small_cfg());
    CHECK(a.labels == b.labels);
    CHECK(a.edge_points == b.edge_points);
}

TEST_CASE("raising theta_low toward theta_high never splits the plane further") {
    const auto cloud = make_plane(0.15, 0.005, 1e-4);
    NeighborIndex idx(cloud);
    const auto normals =
        estimate_normals(cloud, idx, NeighborhoodSpec::by_radius(0.01));
    std::size_t prev = SIZE_MAX;
    for (double low_deg : {2.0, 8.0, 15.0, 25.0, 30.0}) {
        auto cfg = cuboid_cfg();
        cfg.theta_low = low_deg * M_PI / 180;
        const auto seg = grow_regions(cloud, normals, idx, cfg);
        CHECK(seg.segments.size() <= prev);
        prev = seg.segments.size();
    }
}

TEST_CASE("small segments dissolve to unlabeled") {
    // two clusters: one large plane patch, one tiny triple
    auto cloud = make_plane(0.1, 0.005);
    const auto n_plane = cloud.size();
    cloud.push_back({5, 5, 5});
    cloud.push_back({5.005, 5, 5});
    cloud.push_back({5, 5.005, 5});
    NeighborIndex idx(cloud);
    auto normals = estimate_normals(cloud, idx, NeighborhoodSpec::by_radius(0.02));
    auto cfg = cuboid_cfg();
    cfg.min_segment_size = 50;
    const auto seg = grow_regions(cloud, normals, idx, cfg);
    REQUIRE(seg.segments.size() == 1);
    for (std::size_t i = n_plane; i < cloud.size(); ++i)
        CHECK(seg.labels[i] == kUnlabeled);
}
