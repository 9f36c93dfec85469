#include <algorithm>
#include <cmath>

#include "grasp/handles.hpp"

namespace grasp {

namespace {

struct BandPoint {
    double f;
    std::uint32_t index;
    bool operator<(const BandPoint& o) const {
        return f < o.f || (f == o.f && index < o.index);
    }
};

struct CandidateResult {
    bool valid = false;
    std::vector<std::uint32_t> patch;
    double extent_f = 0;
};

/// Steps 1-4 of the search at one candidate center. `center` must lie on the
/// segment surface; the patch must contain f = 0 (the approach ray).
CandidateResult try_candidate(const Vec3& center, const SegmentFrame& frame,
                              const PointCloud& cloud, const NeighborIndex& idx,
                              const GripperModel& grip) {
    CandidateResult res;
    const double half_d = grip.max_aperture / 2;
    const double half_e = grip.finger_thickness / 2;

    // (1) all cloud points within d/2, regardless of label: neighbors are
    // collision candidates even when they belong to another object
    const auto sphere = idx.radius_neighbors(center, half_d);

    // (2) finger band along the major axis
    std::vector<BandPoint> band;
    std::vector<double> depth;
    double n_top = -1e300;
    for (std::uint32_t i : sphere) {
        const Vec3 q = project_to_frame(cloud.point(i), frame, center);
        if (std::abs(q.y()) > half_e) continue;
        band.push_back({q.x(), i});
        depth.push_back(q.z());
        n_top = std::max(n_top, q.z());
    }
    if (band.empty()) return res;

    // (3) depth band anchored at the top surface of this band
    std::vector<BandPoint> kept;
    for (std::size_t j = 0; j < band.size(); ++j)
        if (depth[j] >= n_top - grip.min_grasp_depth) kept.push_back(band[j]);
    std::sort(kept.begin(), kept.end());

    // (4) maximal contiguous run containing f = 0
    std::size_t lo = kept.size(), hi = 0;
    {
        // locate the pair bracketing f = 0; reject if 0 falls in free space
        std::size_t at = 0;
        while (at < kept.size() && kept[at].f < 0) ++at;
        const bool below = at > 0;
        const bool above = at < kept.size();
        if (!below && !above) return res;
        if (below && above && kept[at].f - kept[at - 1].f >= grip.min_clearance)
            return res;  // run would not contain the approach ray
        if (!below && kept[at].f > 0 &&
            kept[at].f >= grip.min_clearance)
            return res;
        if (!above && -kept[at - 1].f >= grip.min_clearance) return res;
        std::size_t anchor = below ? at - 1 : at;
        lo = anchor;
        while (lo > 0 && kept[lo].f - kept[lo - 1].f < grip.min_clearance) --lo;
        hi = anchor;
        while (hi + 1 < kept.size() &&
               kept[hi + 1].f - kept[hi].f < grip.min_clearance)
            ++hi;
    }
    const double f_min = kept[lo].f;
    const double f_max = kept[hi].f;
    res.extent_f = f_max - f_min;
    if (res.extent_f >= grip.max_aperture) return res;

    // clearance beyond both ends: an observed gap to the next point (>= g by
    // run maximality) or >= g of empty space before the search boundary
    const bool low_clear =
        lo > 0 || (f_min - (-half_d)) >= grip.min_clearance;
    const bool high_clear =
        hi + 1 < kept.size() || (half_d - f_max) >= grip.min_clearance;
    if (!low_clear || !high_clear) return res;

    res.valid = true;
    res.patch.reserve(hi - lo + 1);
    for (std::size_t j = lo; j <= hi; ++j) res.patch.push_back(kept[j].index);
    std::sort(res.patch.begin(), res.patch.end());
    return res;
}

}  // namespace

std::vector<GraspHandle> find_handles(const Segmentation&,
                                      const PointCloud& cloud,
                                      const NeighborIndex& idx,
                                      const std::vector<SegmentFrame>& frames,
                                      const std::vector<std::uint32_t>& frame_labels,
                                      const GripperModel& gripper) {
    gripper.validate();
    std::vector<GraspHandle> handles;
    for (std::size_t s = 0; s < frames.size(); ++s) {
        const SegmentFrame& frame = frames[s];
        const double stride = gripper.finger_thickness;
        const long max_steps = stride > 0
            ? static_cast<long>(std::floor(frame.extent_a / (2 * stride)))
            : 0;
        struct PerSegment {
            double center_dist;
            GraspHandle handle;
        };
        std::vector<PerSegment> found;
        // centroid first, then symmetric steps outward along the major axis
        for (long step = 0; step <= max_steps; ++step) {
            for (int sign : {+1, -1}) {
                if (step == 0 && sign < 0) continue;
                const Vec3 center =
                    frame.centroid + sign * static_cast<double>(step) * stride * frame.a;
                const auto cand = try_candidate(center, frame, cloud, idx, gripper);
                if (!cand.valid) continue;
                GraspHandle h;
                h.segment_label = frame_labels[s];
                h.search_center = center;
                h.frame = frame;
                h.angles_xyz = pose_angles(frame);
                h.patch = cand.patch;
                h.patch_extent_f = cand.extent_f;
                h.depth = gripper.min_grasp_depth;
                Vec3 sum = Vec3::Zero();
                for (std::uint32_t i : h.patch) sum += cloud.point(i);
                h.position = sum / static_cast<double>(h.patch.size());
                found.push_back({std::abs(static_cast<double>(step)) * stride,
                                 std::move(h)});
            }
        }
        std::stable_sort(found.begin(), found.end(),
                         [](const PerSegment& a, const PerSegment& b) {
                             if (a.center_dist != b.center_dist)
                                 return a.center_dist < b.center_dist;
                             return a.handle.patch_extent_f <
                                    b.handle.patch_extent_f;
                         });
        for (auto& f : found) handles.push_back(std::move(f.handle));
    }
    return handles;
}

std::vector<GraspHandle> find_handles(const Segmentation& seg,
                                      const PointCloud& cloud,
                                      const NeighborIndex& idx,
                                      const GripperModel& gripper) {
    std::vector<SegmentFrame> frames;
    std::vector<std::uint32_t> labels;
    for (const auto& record : seg.segments) {
        try {
            frames.push_back(segment_frame(record.members, cloud, cloud.viewpoint));
            labels.push_back(record.label);
        } catch (const FrameError&) {
            // degenerate segment: no frame, no handles
        }
    }
    return find_handles(seg, cloud, idx, frames, labels, gripper);
}

}  // namespace grasp
