#pragma once

#include <cstdint>
#include <limits>
#include <unordered_set>
#include <vector>

#include "grasp/kdtree.hpp"
#include "grasp/normals.hpp"
#include "grasp/point_cloud.hpp"

namespace grasp {

inline constexpr std::uint32_t kUnlabeled =
    std::numeric_limits<std::uint32_t>::max();

/// Dual-threshold region growing parameters. Angles in radians internally;
/// the config-file surface accepts degrees.
struct SegmentationConfig {
    double theta_low = 8.0 * M_PI / 180.0;
    double theta_high = 30.0 * M_PI / 180.0;
    double edge_ratio_k = 0.4;
    double radius_r = 0.01;       // meters
    std::size_t min_segment_size = 50;

    /// Throws std::invalid_argument when out of range. theta_low ==
    /// theta_high is tolerated: it degenerates to classic single-threshold
    /// growing, which the fixtures use as an ablation.
    void validate() const;
};

struct SegmentRecord {
    std::uint32_t label = 0;
    std::vector<std::uint32_t> members;
    std::size_t size() const { return members.size(); }
};

struct Segmentation {
    std::vector<std::uint32_t> labels;          // per point, kUnlabeled allowed
    std::unordered_set<std::uint32_t> edge_points;  // the set of edge points
    std::vector<SegmentRecord> segments;
};

struct EdgeCheck {
    bool is_edge = false;
    double ratio = 0;
    bool degenerate = false;  // no valid neighbors
};

/// Edge-point test over the seed's neighbors (seed itself excluded): the
/// fraction of valid-normal neighbors whose angle to the seed normal exceeds
/// theta_high must be strictly greater than edge_ratio_k.
EdgeCheck is_edge_point(std::uint32_t seed,
                        const std::vector<std::uint32_t>& neighbors,
                        const NormalField& normals,
                        const SegmentationConfig& cfg);

/// Candidate seeds: ascending point index over unlabeled, valid-normal points.
std::vector<std::uint32_t> seed_order(const NormalField& normals,
                                      const std::vector<std::uint32_t>& labels);

/// Modified region growing with dual smoothness thresholds. For a seed s and
/// neighbor p with angle theta between their normals:
///   theta < theta_low        -> label p, enqueue p
///   theta > theta_high       -> p untouched from s
///   otherwise (middle band)  -> label p; enqueue only if s is not an edge point
/// First writer wins; points are never relabeled. Segments smaller than
/// min_segment_size are dissolved to kUnlabeled. Deterministic for a given
/// cloud order.
Segmentation grow_regions(const PointCloud& cloud, const NormalField& normals,
                          const NeighborIndex& idx,
                          const SegmentationConfig& cfg);

}  // namespace grasp
