#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "grasp/point_cloud.hpp"

namespace grasp {

/// Exact fixed-radius and k-nearest neighbor queries over a point cloud.
/// Axis-aligned recursive space partition; points are permuted into
/// contiguous leaf ranges so leaf scans stream through the distance kernel.
/// Immutable after build, safe for concurrent queries.
class NeighborIndex {
public:
    /// Throws std::invalid_argument on an empty cloud.
    explicit NeighborIndex(const PointCloud& cloud, std::size_t leaf_size = 32);

    /// Exactly {i : ||q - p_i|| <= r}, unordered. Throws on r <= 0.
    std::vector<std::uint32_t> radius_neighbors(const Vec3& q, double r) const;

    /// k indices with smallest distance to q, ties broken by lower index,
    /// sorted by (distance, index). Returns all points when k >= size.
    std::vector<std::uint32_t> k_nearest(const Vec3& q, std::size_t k) const;

    std::size_t size() const { return orig_.size(); }

private:
    struct Node {
        double split = 0;
        std::uint32_t begin = 0, end = 0;  // leaf range when axis == kLeaf
        std::int32_t left = -1, right = -1;
        std::uint8_t axis = kLeaf;
        static constexpr std::uint8_t kLeaf = 3;
    };

    std::int32_t build(std::uint32_t begin, std::uint32_t end,
                       std::size_t leaf_size);
    void radius_query(std::int32_t node, const Vec3& q, double r2,
                      std::vector<std::uint32_t>& out) const;
    void knn_query(std::int32_t node, const Vec3& q, std::size_t k,
                   std::vector<std::pair<double, std::uint32_t>>& heap) const;

    // permuted coordinates; orig_[i] maps back to the cloud index
    std::vector<double> xs_, ys_, zs_;
    std::vector<std::uint32_t> orig_;
    std::vector<Node> nodes_;
    std::int32_t root_ = -1;
};

}  // namespace grasp
