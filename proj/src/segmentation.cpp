#include <algorithm>
#include <deque>
#include <stdexcept>

#include "grasp/segmentation.hpp"

namespace grasp {

void SegmentationConfig::validate() const {
    if (!(theta_low > 0) || !(theta_high < M_PI) || theta_low > theta_high)
        throw std::invalid_argument("segmentation: need 0 < theta_low <= theta_high < pi");
    if (!(edge_ratio_k > 0) || !(edge_ratio_k < 1))
        throw std::invalid_argument("segmentation: need 0 < k < 1");
    if (!(radius_r > 0))
        throw std::invalid_argument("segmentation: need r > 0");
}

EdgeCheck is_edge_point(std::uint32_t seed,
                        const std::vector<std::uint32_t>& neighbors,
                        const NormalField& normals,
                        const SegmentationConfig& cfg) {
    EdgeCheck result;
    const Vec3& ns = normals.normals[seed];
    std::size_t m = 0, over = 0;
    for (std::uint32_t p : neighbors) {
        if (p == seed || !normals.is_valid(p)) continue;
        ++m;
        if (angle_between(ns, normals.normals[p]) > cfg.theta_high) ++over;
    }
    if (m == 0) {
        result.degenerate = true;
        return result;
    }
    result.ratio = static_cast<double>(over) / static_cast<double>(m);
    result.is_edge = result.ratio > cfg.edge_ratio_k;  // strict
    return result;
}

std::vector<std::uint32_t> seed_order(const NormalField& normals,
                                      const std::vector<std::uint32_t>& labels) {
    std::vector<std::uint32_t> order;
    for (std::uint32_t i = 0; i < normals.size(); ++i)
        if (labels[i] == kUnlabeled && normals.is_valid(i)) order.push_back(i);
    return order;
}

Segmentation grow_regions(const PointCloud& cloud, const NormalField& normals,
                          const NeighborIndex& idx,
                          const SegmentationConfig& cfg) {
    cfg.validate();
    const std::size_t n = cloud.size();
    Segmentation seg;
    seg.labels.assign(n, kUnlabeled);

    std::vector<SegmentRecord> raw_segments;
    std::uint32_t next_label = 0;

    for (std::uint32_t start = 0; start < n; ++start) {
        if (seg.labels[start] != kUnlabeled || !normals.is_valid(start))
            continue;
        const std::uint32_t label = next_label++;
        SegmentRecord record;
        record.label = label;
        seg.labels[start] = label;
        record.members.push_back(start);

        std::deque<std::uint32_t> queue{start};
        while (!queue.empty()) {
            const std::uint32_t s = queue.front();
            queue.pop_front();
            auto nb = idx.radius_neighbors(cloud.point(s), cfg.radius_r);
            std::sort(nb.begin(), nb.end());  // neighbor order pins determinism
            const EdgeCheck edge = is_edge_point(s, nb, normals, cfg);
            if (edge.is_edge) seg.edge_points.insert(s);
            const Vec3& ns = normals.normals[s];
            for (std::uint32_t p : nb) {
                if (p == s || seg.labels[p] != kUnlabeled || !normals.is_valid(p))
                    continue;
                const double theta = angle_between(ns, normals.normals[p]);
                if (theta > cfg.theta_high) continue;  // blocked from s
                seg.labels[p] = label;
                record.members.push_back(p);
                if (theta < cfg.theta_low || !edge.is_edge) queue.push_back(p);
            }
        }
        raw_segments.push_back(std::move(record));
    }

    // dissolve undersized segments; surviving labels stay as assigned
    for (auto& record : raw_segments) {
        if (record.size() < cfg.min_segment_size) {
            for (std::uint32_t i : record.members) seg.labels[i] = kUnlabeled;
            continue;
        }
        seg.segments.push_back(std::move(record));
    }
    return seg;
}

}  // namespace grasp
