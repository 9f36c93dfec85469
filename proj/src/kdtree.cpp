#include "grasp/kdtree.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <stdexcept>

#include "grasp/kernels.hpp"

namespace grasp {

NeighborIndex::NeighborIndex(const PointCloud& cloud, std::size_t leaf_size) {
    if (cloud.empty())
        throw std::invalid_argument("NeighborIndex: empty cloud");
    const std::size_t n = cloud.size();
    xs_ = cloud.xs;
    ys_ = cloud.ys;
    zs_ = cloud.zs;
    orig_.resize(n);
    std::iota(orig_.begin(), orig_.end(), 0u);
    nodes_.reserve(2 * n / std::max<std::size_t>(leaf_size, 1) + 2);
    root_ = build(0, static_cast<std::uint32_t>(n), std::max<std::size_t>(leaf_size, 1));
}

std::int32_t NeighborIndex::build(std::uint32_t begin, std::uint32_t end,
                                  std::size_t leaf_size) {
    const std::int32_t id = static_cast<std::int32_t>(nodes_.size());
    nodes_.emplace_back();
    if (end - begin <= leaf_size) {
        nodes_[id].begin = begin;
        nodes_[id].end = end;
        return id;
    }
    // split the widest extent at the median
    std::array<double, 3> lo{1e300, 1e300, 1e300}, hi{-1e300, -1e300, -1e300};
    for (std::uint32_t i = begin; i < end; ++i) {
        lo[0] = std::min(lo[0], xs_[i]);
        hi[0] = std::max(hi[0], xs_[i]);
        lo[1] = std::min(lo[1], ys_[i]);
        hi[1] = std::max(hi[1], ys_[i]);
        lo[2] = std::min(lo[2], zs_[i]);
        hi[2] = std::max(hi[2], zs_[i]);
    }
    std::uint8_t axis = 0;
    double widest = hi[0] - lo[0];
    for (std::uint8_t a = 1; a < 3; ++a) {
        if (hi[a] - lo[a] > widest) {
            widest = hi[a] - lo[a];
            axis = a;
        }
    }
    if (widest == 0.0) {  // all points coincide; force a leaf
        nodes_[id].begin = begin;
        nodes_[id].end = end;
        return id;
    }
    const double* coord = axis == 0 ? xs_.data() : axis == 1 ? ys_.data() : zs_.data();
    std::vector<std::uint32_t> perm(end - begin);
    std::iota(perm.begin(), perm.end(), begin);
    const std::uint32_t mid = (end - begin) / 2;
    std::nth_element(perm.begin(), perm.begin() + mid, perm.end(),
                     [&](std::uint32_t a, std::uint32_t b) {
                         return coord[a] < coord[b];
                     });
    const double split = coord[perm[mid]];
    // apply the permutation so children stay contiguous
    std::vector<double> tx(end - begin), ty(end - begin), tz(end - begin);
    std::vector<std::uint32_t> to(end - begin);
    for (std::size_t j = 0; j < perm.size(); ++j) {
        tx[j] = xs_[perm[j]];
        ty[j] = ys_[perm[j]];
        tz[j] = zs_[perm[j]];
        to[j] = orig_[perm[j]];
    }
    std::copy(tx.begin(), tx.end(), xs_.begin() + begin);
    std::copy(ty.begin(), ty.end(), ys_.begin() + begin);
    std::copy(tz.begin(), tz.end(), zs_.begin() + begin);
    std::copy(to.begin(), to.end(), orig_.begin() + begin);

    nodes_[id].axis = axis;
    nodes_[id].split = split;
    const std::int32_t left = build(begin, begin + mid, leaf_size);
    const std::int32_t right = build(begin + mid, end, leaf_size);
    nodes_[id].left = left;
    nodes_[id].right = right;
    return id;
}

std::vector<std::uint32_t> NeighborIndex::radius_neighbors(const Vec3& q,
                                                           double r) const {
    if (r <= 0) throw std::invalid_argument("radius_neighbors: r must be > 0");
    std::vector<std::uint32_t> out;
    radius_query(root_, q, r * r, out);
    return out;
}

void NeighborIndex::radius_query(std::int32_t node, const Vec3& q, double r2,
                                 std::vector<std::uint32_t>& out) const {
    const Node& nd = nodes_[node];
    if (nd.axis == Node::kLeaf) {
        double d2[64];
        std::size_t i = nd.begin;
        while (i < nd.end) {
            const std::size_t chunk = std::min<std::size_t>(64, nd.end - i);
            kernels::squared_distances(xs_.data() + i, ys_.data() + i,
                                       zs_.data() + i, chunk, q.x(), q.y(),
                                       q.z(), d2);
            for (std::size_t j = 0; j < chunk; ++j)
                if (d2[j] <= r2) out.push_back(orig_[i + j]);
            i += chunk;
        }
        return;
    }
    const double qc = nd.axis == 0 ? q.x() : nd.axis == 1 ? q.y() : q.z();
    const double delta = qc - nd.split;
    if (delta <= 0) {
        radius_query(nd.left, q, r2, out);
        if (delta * delta <= r2) radius_query(nd.right, q, r2, out);
    } else {
        radius_query(nd.right, q, r2, out);
        if (delta * delta <= r2) radius_query(nd.left, q, r2, out);
    }
}

std::vector<std::uint32_t> NeighborIndex::k_nearest(const Vec3& q,
                                                    std::size_t k) const {
    if (k < 1) throw std::invalid_argument("k_nearest: k must be >= 1");
    std::vector<std::pair<double, std::uint32_t>> heap;  // max-heap on (d2, idx)
    heap.reserve(k + 1);
    knn_query(root_, q, k, heap);
    std::sort_heap(heap.begin(), heap.end());
    std::vector<std::uint32_t> out;
    out.reserve(heap.size());
    for (const auto& [d2, idx] : heap) out.push_back(idx);
    return out;
}

void NeighborIndex::knn_query(
    std::int32_t node, const Vec3& q, std::size_t k,
    std::vector<std::pair<double, std::uint32_t>>& heap) const {
    const Node& nd = nodes_[node];
    if (nd.axis == Node::kLeaf) {
        double d2[64];
        std::size_t i = nd.begin;
        while (i < nd.end) {
            const std::size_t chunk = std::min<std::size_t>(64, nd.end - i);
            kernels::squared_distances(xs_.data() + i, ys_.data() + i,
                                       zs_.data() + i, chunk, q.x(), q.y(),
                                       q.z(), d2);
            for (std::size_t j = 0; j < chunk; ++j) {
                const std::pair<double, std::uint32_t> cand{d2[j], orig_[i + j]};
                if (heap.size() < k) {
                    heap.push_back(cand);
                    std::push_heap(heap.begin(), heap.end());
                } else if (cand < heap.front()) {
                    std::pop_heap(heap.begin(), heap.end());
                    heap.back() = cand;
                    std::push_heap(heap.begin(), heap.end());
                }
            }
            i += chunk;
        }
        return;
    }
    const double qc = nd.axis == 0 ? q.x() : nd.axis == 1 ? q.y() : q.z();
    const double delta = qc - nd.split;
    const std::int32_t near = delta <= 0 ? nd.left : nd.right;
    const std::int32_t far = delta <= 0 ? nd.right : nd.left;
    knn_query(near, q, k, heap);
    if (heap.size() < k || delta * delta <= heap.front().first)
        knn_query(far, q, k, heap);
}

}  // namespace grasp
